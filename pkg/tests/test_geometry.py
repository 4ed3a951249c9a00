"""Hull, radial-function, and raster geometry checks on analytic fixtures and
random paths, with brute-force oracles where the spec of an operation allows
one."""

import math

import numpy as np
import pytest

from starhull import geometry as g
from starhull import paths
from starhull.errors import DomainError, ResourceError
from starhull.rng import substream


def brownian_path(seed, n=256, scale=None):
    rng = substream(seed, 0)
    scale = scale if scale is not None else 1 / math.sqrt(n)
    inc = rng.normal(0, scale, (n, 2))
    return g.PlanarPath(np.vstack([[0.0, 0.0], np.cumsum(inc, axis=0)]))


class TestConvexHull:
    def test_square_with_interior_point(self):
        pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]], dtype=float)
        hull = g.convex_hull(pts)
        assert hull.n_vertices == 4
        assert g.polygon_area(hull) == pytest.approx(1.0, abs=1e-15)

    def test_collinear_degenerates_to_segment(self):
        pts = np.array([[0, 0], [2, 0], [0.5, 0], [1.7, 0]], dtype=float)
        hull = g.convex_hull(pts)
        assert hull.n_vertices == 2
        assert g.polygon_area(hull) == 0.0

    def test_single_point(self):
        hull = g.convex_hull(np.array([[3.0, 4.0]]))
        assert hull.n_vertices == 1
        assert g.polygon_area(hull) == 0.0

    def test_all_points_contained_brute_force(self):
        rng = substream(7, 0)
        ang = rng.uniform(0, 2 * np.pi, 1000)
        rad = np.sqrt(rng.uniform(0, 1, 1000))
        pts = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
        hull = g.convex_hull(pts).vertices
        # O(n*h) containment oracle: every point left of (or on) every edge
        for i in range(len(hull)):
            a, b = hull[i], hull[(i + 1) % len(hull)]
            cross = (b[0] - a[0]) * (pts[:, 1] - a[1]) - (b[1] - a[1]) * (pts[:, 0] - a[0])
            assert np.all(cross >= -1e-12)

    def test_hull_vertices_subset_of_input(self):
        rng = substream(8, 0)
        pts = rng.normal(size=(800, 2))
        hull = g.convex_hull(pts).vertices
        as_set = {tuple(p) for p in pts}
        assert all(tuple(v) in as_set for v in hull)

    def test_permutation_invariance(self):
        rng = substream(9, 0)
        pts = rng.normal(size=(300, 2))
        h1 = g.convex_hull(pts).vertices
        h2 = g.convex_hull(pts[rng.permutation(300)]).vertices
        assert np.array_equal(h1, h2)

    def test_strictly_convex_turns(self):
        pts = np.array(
            [[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [1, 2], [0, 2], [0, 1]],
            dtype=float,
        )
        hull = g.convex_hull(pts).vertices
        assert len(hull) == 4  # edge midpoints removed

    def test_duplicates_collapse(self):
        pts = np.array([[0, 0], [0, 0], [1, 0], [1, 0], [0, 1]], dtype=float)
        assert g.convex_hull(pts).n_vertices == 3


class TestPolygonArea:
    def test_unit_square(self):
        sq = g.ConvexPolygon(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float))
        assert g.polygon_area(sq) == 1.0

    def test_segment_is_zero(self):
        seg = g.ConvexPolygon(np.array([[0, 0], [1, 1]], dtype=float))
        assert g.polygon_area(seg) == 0.0

    def test_regular_hexagon(self):
        t = np.arange(6) * np.pi / 3
        hexagon = g.ConvexPolygon(np.column_stack([np.cos(t), np.sin(t)]))
        assert g.polygon_area(hexagon) == pytest.approx(3 * math.sqrt(3) / 2, rel=1e-14)


class TestRadialProfile:
    def test_segment_aimed_at_bin_center(self):
        n_bins = 64
        theta0 = 0.5 * 2 * np.pi / n_bins
        path = g.PlanarPath(np.array([[0.0, 0.0], [np.cos(theta0), np.sin(theta0)]]))
        prof = g.radial_profile(path, n_bins)
        assert prof.values[0] == pytest.approx(1.0, rel=1e-14)
        assert np.all(prof.values[1:] == 0.0)

    def test_segment_on_bin_boundary_misses_all_centers(self):
        # a ray along the x-axis sits exactly between the two adjacent bins
        path = g.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.0]]))
        assert np.all(g.radial_profile(path, 64).values == 0.0)

    def test_circle_with_spoke(self):
        m = 256
        t = np.linspace(0, 2 * np.pi, m + 1)
        pts = np.vstack([[0, 0], [2, 0], np.column_stack([2 * np.cos(t), 2 * np.sin(t)])])
        prof = g.radial_profile(g.PlanarPath(pts), 64)
        assert np.all(prof.values <= 2.0 + 1e-12)
        assert np.all(prof.values >= 2 * np.cos(np.pi / m))  # chord-vs-arc bound

    def test_l_path_matches_secant(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
        prof = g.radial_profile(path, 64)
        centers = prof.bin_centers
        expect = np.where(centers < np.pi / 4, 1 / np.cos(centers), 0.0)
        assert np.max(np.abs(prof.values - expect)) < 1e-9

    def test_engines_agree_exactly(self):
        pytest.importorskip("numba")
        path = brownian_path(11, n=500)
        a = g.radial_profile(path, 128, engine="numba").values
        b = g.radial_profile(path, 128, engine="numpy").values
        assert np.array_equal(a, b)

    def test_requires_origin_start(self):
        path = g.PlanarPath(np.array([[1.0, 0.0], [2.0, 0.0]]))
        with pytest.raises(DomainError):
            g.radial_profile(path, 64)

    def test_bin_count_floor(self):
        with pytest.raises(DomainError):
            g.radial_profile(brownian_path(1), 4)

    def test_bad_engine(self):
        with pytest.raises(DomainError):
            g.radial_profile(brownian_path(1), 64, engine="gpu")

    def test_single_vertex_profile_is_zero(self):
        prof = g.radial_profile(g.PlanarPath(np.zeros((1, 2))), 32)
        assert np.all(prof.values == 0.0)


class TestStarHullArea:
    def test_disk(self):
        prof = g.RadialProfile(128, np.ones(128))
        assert g.star_hull_area(prof) == pytest.approx(np.pi, rel=1e-14)

    def test_single_ray_mass_vanishes_with_bins(self):
        for n_bins in (64, 512, 4096):
            theta0 = 0.5 * 2 * np.pi / n_bins
            path = g.PlanarPath(np.array([[0.0, 0.0], [np.cos(theta0), np.sin(theta0)]]))
            area = g.star_hull_area(g.radial_profile(path, n_bins))
            assert area == pytest.approx(np.pi / n_bins, rel=1e-12)

    def test_l_path_midpoint_rule_convergence(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
        errs = {}
        for n_bins in (2**10, 2**12):
            area = g.star_hull_area(g.radial_profile(path, n_bins))
            errs[n_bins] = abs(area - 0.5)
            assert errs[n_bins] < 10.0 / n_bins**2
        assert errs[2**12] < errs[2**10] / 8  # second-order rule

    def test_radial_idempotence(self):
        for seed in range(5):
            prof = g.radial_profile(brownian_path(seed, n=200), 64)
            again = g.radial_profile(g.profile_polygon(prof), 64)
            assert np.allclose(again.values, prof.values, rtol=1e-12, atol=1e-15)

    def test_idempotence_with_empty_bins(self):
        # an L-shaped path leaves most bins at zero
        path = g.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
        prof = g.radial_profile(path, 64)
        again = g.radial_profile(g.profile_polygon(prof), 64)
        assert np.allclose(again.values, prof.values, rtol=1e-12, atol=1e-15)


class TestRadialDistance:
    def test_interpolated_crossing(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [0.0, 1.0], [2.0, -1.0]]))
        assert g.radial_distance(path) == pytest.approx(1.0, abs=1e-15)

    def test_no_positive_return_gives_zero(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [-1.0, 0.5], [-2.0, 1.0]]))
        assert g.radial_distance(path) == 0.0

    def test_max_of_crossings_brute_force(self):
        path = g.PlanarPath(
            np.array(
                [[0.0, 0.0], [0.5, 0.0], [0.5, 1.0], [2.0, -1.0], [1.1, -0.5], [1.1, 0.5]]
            )
        )
        # crossings at x in {0.5 (vertex), 1.25, 1.1}; brute force over segments
        best = 0.0
        v = path.vertices
        for i in range(len(v) - 1):
            (x0, y0), (x1, y1) = v[i], v[i + 1]
            if y0 == 0 and x0 >= 0:
                best = max(best, x0)
            if y1 == 0 and x1 >= 0:
                best = max(best, x1)
            if y0 * y1 < 0:
                xc = x0 - y0 * (x1 - x0) / (y1 - y0)
                if xc >= 0:
                    best = max(best, xc)
        assert g.radial_distance(path) == pytest.approx(best, abs=1e-15)
        assert best == pytest.approx(1.25)

    def test_requires_origin(self):
        with pytest.raises(DomainError):
            g.radial_distance(g.PlanarPath(np.array([[1.0, 1.0], [2.0, 0.0]])))


class TestEquivariance:
    def test_rotation_cycles_profile(self):
        n_bins = 64
        path = brownian_path(21, n=300)
        base = g.radial_profile(path, n_bins).values
        for k in (1, 5, 17):
            rotated = paths.rotate(path, 2 * np.pi * k / n_bins)
            shifted = g.radial_profile(rotated, n_bins).values
            assert np.max(np.abs(shifted - np.roll(base, k))) < 1e-9

    def test_uniform_scaling(self):
        path = brownian_path(22, n=300)
        s = 2.7
        scaled = g.PlanarPath(path.vertices * s, closed=path.closed)
        a1 = g.polygon_area(g.convex_hull(path))
        a2 = g.polygon_area(g.convex_hull(scaled))
        assert a2 == pytest.approx(s * s * a1, rel=1e-12)
        st1 = g.star_hull_area(g.radial_profile(path, 64))
        st2 = g.star_hull_area(g.radial_profile(scaled, 64))
        assert st2 == pytest.approx(s * s * st1, rel=1e-12)
        assert g.radial_distance(scaled) == pytest.approx(
            s * g.radial_distance(path), rel=1e-12
        )


class TestTopologicalRaster:
    def test_unit_square_boundary(self):
        path = g.PlanarPath(
            np.array([[0.0, 0.0], [1, 0], [1, 1], [0, 1], [0, 0]]), closed=True
        )
        area = g.topological_hull_area(path, 0.01)
        assert abs(area - 1.0) <= 4 * 0.01

    def test_straight_segment_band_only(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.7]]))
        area = g.topological_hull_area(path, 0.01)
        length = math.hypot(1.0, 0.7)
        assert area <= 3 * length * 0.01  # thin band around an area-free trace

    def test_loop_matches_shoelace(self):
        t = np.linspace(0, 2 * np.pi, 400)
        r = 1 + 0.25 * np.cos(7 * t)
        pts = np.column_stack([r * np.cos(t) + 2.0, r * np.sin(t)])
        pts[-1] = pts[0]
        path = g.PlanarPath(pts, closed=True)
        cell = 0.004
        raster_area = g.topological_hull_area(path, cell)
        x, y = pts[:, 0], pts[:, 1]
        shoelace = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
        perimeter = np.hypot(*np.diff(pts, axis=0).T).sum()
        assert abs(raster_area - shoelace) <= perimeter * cell

    def test_filled_at_least_trace(self):
        path = brownian_path(31, n=400)
        raster = g.rasterize(path, 0.01)
        trace_area = np.count_nonzero(raster.occupancy) * 0.01**2
        assert g.topological_hull_area(path, 0.01) >= trace_area

    def test_margin_ring_is_empty(self):
        raster = g.rasterize(brownian_path(32, n=200), 0.02)
        occ = raster.occupancy
        assert not occ[0, :].any() and not occ[-1, :].any()
        assert not occ[:, 0].any() and not occ[:, -1].any()

    def test_point_path_has_zero_area(self):
        assert g.topological_hull_area(g.PlanarPath(np.zeros((1, 2))), 0.1) == 0.0

    def test_memory_cap(self):
        path = g.PlanarPath(np.array([[0.0, 0.0], [100.0, 100.0]]))
        with pytest.raises(ResourceError, match="max_cells"):
            g.topological_hull_area(path, 1e-4, max_cells=10_000)

    def test_cell_size_validation(self):
        with pytest.raises(DomainError):
            g.topological_hull_area(brownian_path(1), 0.0)


class TestLatticeHull:
    def test_unit_square_loop(self):
        walk = g.PlanarPath(np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]))
        assert g.lattice_hull_area(walk) == 1

    def test_straight_walk(self):
        walk = g.PlanarPath(np.column_stack([np.arange(12), np.zeros(12, dtype=int)]))
        assert g.lattice_hull_area(walk) == 0

    def test_two_by_one_loop(self):
        walk = g.PlanarPath(
            np.array([[0, 0], [1, 0], [2, 0], [2, 1], [1, 1], [0, 1], [0, 0]])
        )
        assert g.lattice_hull_area(walk) == 2

    def test_self_crossing_figure(self):
        # figure-eight: two unit loops sharing the origin vertex
        walk = g.PlanarPath(
            np.array(
                [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0],
                 [-1, 0], [-1, -1], [0, -1], [0, 0]]
            )
        )
        assert g.lattice_hull_area(walk) == 2

    def test_non_integer_rejected(self):
        with pytest.raises(DomainError):
            g.lattice_hull_area(g.PlanarPath(np.array([[0.0, 0.0], [0.5, 0.0]])))

    def test_non_unit_step_rejected(self):
        with pytest.raises(DomainError):
            g.lattice_hull_area(g.PlanarPath(np.array([[0, 0], [2, 0]])))
        with pytest.raises(DomainError):
            g.lattice_hull_area(g.PlanarPath(np.array([[0, 0], [1, 1]])))

    def test_pixel_cap(self):
        walk = g.PlanarPath(np.column_stack([np.arange(600), np.zeros(600, dtype=int)]))
        with pytest.raises(ResourceError, match="max_pixels"):
            g.lattice_hull_area(walk, max_pixels=100)


class TestInclusionChain:
    def test_area_monotonicity_with_allowances(self):
        n_bins, cell = 64, 0.02
        for i in range(50):
            process = "bm" if i % 2 == 0 else "bb"
            path = paths.sample_path(paths.PathSpec(process, 256), substream(40, i))
            prof = g.radial_profile(path, n_bins)
            star = g.star_hull_area(prof)
            convex = g.polygon_area(g.convex_hull(path))
            topo = g.topological_hull_area(path, cell)
            perimeter = np.hypot(*np.diff(path.vertices, axis=0).T).sum()
            assert topo <= star + perimeter * cell
            assert star <= convex + 2 * np.pi * prof.values.max() ** 2 / n_bins


class TestValidation:
    def test_planar_path_shape(self):
        with pytest.raises(DomainError):
            g.PlanarPath(np.zeros((0, 2)))
        with pytest.raises(DomainError):
            g.PlanarPath(np.zeros((3, 3)))
        with pytest.raises(DomainError):
            g.PlanarPath(np.array([[0.0, np.inf]]))

    def test_radial_profile_invariants(self):
        with pytest.raises(DomainError):
            g.RadialProfile(4, np.zeros(4))
        with pytest.raises(DomainError):
            g.RadialProfile(8, np.full(8, -1.0))
        with pytest.raises(DomainError):
            g.RadialProfile(8, np.zeros(9))
