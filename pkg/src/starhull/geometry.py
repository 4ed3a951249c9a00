"""Hull computations and area functionals on polygonal path traces.

A path is an ordered polyline of 2-D points.  The star and radial operations
require the path to start at the origin; the radial function of the trace is
evaluated by exact ray-segment intersection (no point sampling), so the only
remaining error sources are angular binning and the path discretization
itself.  The topological hull is estimated by rasterizing the trace onto a
grid with conservative thickening and flood-filling the unbounded component
from the margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import DomainError, ResourceError

__all__ = [
    "PlanarPath",
    "ConvexPolygon",
    "RadialProfile",
    "GridRaster",
    "convex_hull",
    "polygon_area",
    "radial_profile",
    "star_hull_area",
    "profile_polygon",
    "radial_distance",
    "rasterize",
    "topological_hull_area",
    "lattice_hull_area",
]

_FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


@dataclass(frozen=True)
class PlanarPath:
    """Ordered polyline of 2-D points; ``closed`` marks loops (bridges)."""

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        v = np.asarray(self.vertices)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 1:
            raise DomainError("vertices must be a non-empty (n, 2) array")
        if not np.all(np.isfinite(v)):
            raise DomainError("vertices must be finite")
        object.__setattr__(self, "vertices", v)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise list of extreme points (collinear points removed)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 1:
            raise DomainError("polygon needs at least one vertex")
        object.__setattr__(self, "vertices", v)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class RadialProfile:
    """Radial function values at the bin-center angles (i + 1/2) * 2*pi/n_bins."""

    n_bins: int
    values: np.ndarray

    def __post_init__(self):
        if self.n_bins < 8:
            raise DomainError("n_bins must be at least 8")
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.n_bins,):
            raise DomainError("values must have shape (n_bins,)")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise DomainError("values must be finite and >= 0")
        object.__setattr__(self, "values", v)

    @property
    def bin_centers(self) -> np.ndarray:
        return (np.arange(self.n_bins) + 0.5) * (2.0 * np.pi / self.n_bins)


@dataclass(frozen=True)
class GridRaster:
    """Occupancy bitmap over a uniform grid; indexing is [ix, iy]."""

    origin: np.ndarray
    cell_size: float
    occupancy: np.ndarray = field(repr=False)

    @property
    def n_cells(self) -> int:
        return self.occupancy.size


def _as_points(path) -> np.ndarray:
    if isinstance(path, PlanarPath):
        return np.asarray(path.vertices, dtype=float)
    return np.asarray(path, dtype=float)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _octagon_filter(pts: np.ndarray) -> np.ndarray:
    """Drop points strictly inside the octagon of 8-direction extremes.

    Keeps every possible hull vertex; used only to shrink the input of the
    monotone chain for large point clouds.
    """
    x, y = pts[:, 0], pts[:, 1]
    s, d = x + y, x - y
    order = [
        np.argmax(x), np.argmax(s), np.argmax(y), np.argmin(d),
        np.argmin(x), np.argmin(s), np.argmin(y), np.argmax(d),
    ]
    oct_pts = pts[order]
    strictly_inside = np.ones(len(pts), dtype=bool)
    for i in range(8):
        a = oct_pts[i]
        b = oct_pts[(i + 1) % 8]
        e = b - a
        if e[0] == 0.0 and e[1] == 0.0:
            continue
        cr = e[0] * (y - a[1]) - e[1] * (x - a[0])
        strictly_inside &= cr > 0
    return pts[~strictly_inside]


def convex_hull(path) -> ConvexPolygon:
    """Convex hull of the path vertices by Andrew's monotone chain.

    Output vertices are a subset of the input, ordered counterclockwise with
    strictly convex turns; collinear degenerate input yields a 1- or 2-vertex
    polygon.
    """
    pts = _as_points(path)
    if len(pts) == 0:
        raise DomainError("need at least one point")
    if len(pts) > 512:
        pts = _octagon_filter(pts)
    pts = np.unique(pts, axis=0)  # lexicographic sort
    if len(pts) == 1:
        return ConvexPolygon(pts)

    def half(points):
        chain = []
        for p in points:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    return ConvexPolygon(hull)


def polygon_area(poly: ConvexPolygon) -> float:
    """Shoelace area; zero for degenerate (point or segment) hulls."""
    v = poly.vertices
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised where numba is absent
    _numba = None


def _candidate_bins(a_all, b_all, n_bins):
    """Index range of bin centers inside each segment's angular span.

    The span runs the short way between the endpoint directions, widened by a
    hair so that rays through shared vertices are offered to both adjacent
    segments; the exact intersection test rejects any extras.
    """
    width = 2.0 * np.pi / n_bins
    eps_ang = 1e-9
    ang_a = np.arctan2(a_all[:, 1], a_all[:, 0])
    ang_b = np.arctan2(b_all[:, 1], b_all[:, 0])
    delta = ang_b - ang_a
    delta = (delta + np.pi) % (2.0 * np.pi) - np.pi  # wrapped to [-pi, pi)
    lo = np.where(delta >= 0, ang_a, ang_b)
    hi = lo + np.abs(delta)
    k_lo = np.ceil((lo - eps_ang) / width - 0.5).astype(np.int64)
    k_hi = np.floor((hi + eps_ang) / width - 0.5).astype(np.int64)
    counts = np.maximum(k_hi - k_lo + 1, 0)
    return k_lo, counts


def _profile_scan_numpy(a_all, b_all, cross_ab, k_lo, counts, ux_tab, uy_tab, values):
    n_bins = len(values)
    cum = np.cumsum(counts)
    grand_total = int(cum[-1]) if len(cum) else 0
    if grand_total == 0:
        return
    # process candidate pairs in bounded-memory chunks
    chunk_edges = np.searchsorted(cum, np.arange(0, grand_total + 4_000_000, 4_000_000))
    chunk_edges = np.unique(np.append(chunk_edges, len(counts)))
    start = 0
    for stop in chunk_edges[1:]:
        sel = slice(start, stop)
        start = stop
        c = counts[sel]
        total = int(c.sum())
        if total == 0:
            continue
        seg = np.repeat(np.arange(c.shape[0]), c)
        offs = np.arange(total) - np.repeat(np.cumsum(c) - c, c)
        k = (np.repeat(k_lo[sel], c) + offs) % n_bins
        ux, uy = ux_tab[k], uy_tab[k]
        ax, ay = a_all[sel][seg, 0], a_all[sel][seg, 1]
        bx, by = b_all[sel][seg, 0], b_all[sel][seg, 1]
        ca = ax * uy - ay * ux
        cb = bx * uy - by * ux
        denom = ca - cb
        safe = np.where(denom == 0.0, 1.0, denom)
        s = ca / safe
        rho = cross_ab[sel][seg] / safe
        valid = (denom != 0.0) & (s >= -1e-9) & (s <= 1.0 + 1e-9) & (rho >= 0.0)
        np.maximum.at(values, k[valid], rho[valid])
        # segments collinear with the ray line: farthest nonnegative endpoint
        col = (denom == 0.0) & (ca == 0.0)
        if np.any(col):
            rho_col = np.maximum(
                ax[col] * ux[col] + ay[col] * uy[col],
                bx[col] * ux[col] + by[col] * uy[col],
            )
            ok = rho_col >= 0.0
            np.maximum.at(values, k[col][ok], rho_col[ok])


def _profile_scan_jit(ax, ay, bx, by, cross_ab, k_lo, counts, ux_tab, uy_tab, values):
    n_bins = len(values)
    for i in range(len(ax)):
        k0 = k_lo[i]
        for j in range(counts[i]):
            k = (k0 + j) % n_bins
            ux = ux_tab[k]
            uy = uy_tab[k]
            ca = ax[i] * uy - ay[i] * ux
            cb = bx[i] * uy - by[i] * ux
            denom = ca - cb
            if denom != 0.0:
                s = ca / denom
                if -1e-9 <= s <= 1.0 + 1e-9:
                    rho = cross_ab[i] / denom
                    if rho >= 0.0 and rho > values[k]:
                        values[k] = rho
            elif ca == 0.0:
                rho = max(ax[i] * ux + ay[i] * uy, bx[i] * ux + by[i] * uy)
                if rho >= 0.0 and rho > values[k]:
                    values[k] = rho


if _numba is not None:
    _profile_scan_jit = _numba.njit(cache=True)(_profile_scan_jit)


def radial_profile(path: PlanarPath, n_bins: int, engine: str = "auto") -> RadialProfile:
    """Radial function of the path trace sampled at the bin-center angles.

    values[i] is the farthest intersection of the ray at angle
    theta_i = (i + 1/2) * 2*pi/n_bins with any path segment (0 when the ray
    misses the trace).  Intersections are exact ray-segment solutions; a ray
    through a shared vertex is credited to both adjacent segments, which
    cannot change the max.

    ``engine`` selects the inner scan: "numba" (requires numba), "numpy", or
    "auto" (numba when available).  Both scans evaluate identical expressions
    and return identical values.
    """
    pts = _as_points(path)
    if not np.all(pts[0] == 0):
        raise DomainError("path must start at the origin for radial operations")
    if n_bins < 8:
        raise DomainError("n_bins must be at least 8")
    if engine not in ("auto", "numba", "numpy"):
        raise DomainError("engine must be auto, numba, or numpy")
    if engine == "numba" and _numba is None:
        raise DomainError("numba engine requested but numba is not installed")

    values = np.zeros(n_bins)
    if len(pts) < 2:
        return RadialProfile(n_bins, values)

    a_all = np.ascontiguousarray(pts[:-1])
    b_all = np.ascontiguousarray(pts[1:])
    alive = np.any(a_all != b_all, axis=1)
    a_all, b_all = a_all[alive], b_all[alive]
    if len(a_all) == 0:
        return RadialProfile(n_bins, values)

    k_lo, counts = _candidate_bins(a_all, b_all, n_bins)
    cross_ab = a_all[:, 0] * b_all[:, 1] - a_all[:, 1] * b_all[:, 0]
    centers = (np.arange(n_bins) + 0.5) * (2.0 * np.pi / n_bins)
    ux_tab, uy_tab = np.cos(centers), np.sin(centers)

    use_jit = _numba is not None and engine in ("auto", "numba")
    if use_jit:
        _profile_scan_jit(
            np.ascontiguousarray(a_all[:, 0]), np.ascontiguousarray(a_all[:, 1]),
            np.ascontiguousarray(b_all[:, 0]), np.ascontiguousarray(b_all[:, 1]),
            cross_ab, k_lo, counts, ux_tab, uy_tab, values,
        )
    else:
        _profile_scan_numpy(a_all, b_all, cross_ab, k_lo, counts, ux_tab, uy_tab, values)

    return RadialProfile(n_bins, values)


def star_hull_area(profile: RadialProfile) -> float:
    """Star hull area by the midpoint rule: (1/2) * sum r_i^2 * (2*pi/n_bins)."""
    return 0.5 * float(np.sum(profile.values**2)) * (2.0 * np.pi / profile.n_bins)


def profile_polygon(profile: RadialProfile) -> PlanarPath:
    """Closed polygon through the profile's boundary points, anchored at the origin.

    Recomputing ``radial_profile`` of this polygon at the same bin count
    reproduces the profile values at the bin centers.
    """
    theta = profile.bin_centers
    pts = np.column_stack(
        (profile.values * np.cos(theta), profile.values * np.sin(theta))
    )
    origin = np.zeros((1, 2))
    return PlanarPath(np.vstack([origin, pts, origin]), closed=True)


def radial_distance(path: PlanarPath) -> float:
    """Farthest point of the trace on the positive x-axis (0 when it never returns).

    Considers vertices lying on the axis and linear-interpolation crossings of
    segments whose endpoints straddle y = 0.
    """
    pts = _as_points(path)
    if not np.all(pts[0] == 0):
        raise DomainError("path must start at the origin for radial operations")
    best = 0.0
    on_axis = pts[pts[:, 1] == 0.0, 0]
    on_axis = on_axis[on_axis >= 0.0]
    if on_axis.size:
        best = max(best, float(on_axis.max()))
    if len(pts) >= 2:
        y0, y1 = pts[:-1, 1], pts[1:, 1]
        straddle = (y0 * y1) < 0.0
        if np.any(straddle):
            x0, x1 = pts[:-1, 0][straddle], pts[1:, 0][straddle]
            y0s, y1s = y0[straddle], y1[straddle]
            xc = x0 - y0s * (x1 - x0) / (y1s - y0s)
            xc = xc[xc >= 0.0]
            if xc.size:
                best = max(best, float(xc.max()))
    return best


def rasterize(path: PlanarPath, cell_size: float, max_cells: int = 2**24) -> GridRaster:
    """Occupancy grid of the trace with conservative (leak-proof) thickening.

    Segments are resampled at quarter-cell spacing; when consecutive samples
    land in diagonally adjacent cells both shared neighbors are marked, so a
    4-connected flood fill cannot cross the trace.
    """
    if not (cell_size > 0 and math.isfinite(cell_size)):
        raise DomainError("cell_size must be > 0")
    pts = _as_points(path)
    lo = np.floor(pts.min(axis=0) / cell_size).astype(np.int64) - 2
    hi = np.floor(pts.max(axis=0) / cell_size).astype(np.int64) + 2
    shape = hi - lo + 1
    n_cells = int(shape[0]) * int(shape[1])
    if n_cells > max_cells:
        raise ResourceError(
            f"raster needs {n_cells} cells; raise max_cells (currently {max_cells})"
        )
    occ = np.zeros(shape, dtype=bool)

    if len(pts) == 1:
        cells = (pts / cell_size).astype(np.int64) - lo
        occ[cells[:, 0], cells[:, 1]] = True
        return GridRaster(lo * cell_size, cell_size, occ)

    seg = np.diff(pts, axis=0)
    length = np.hypot(seg[:, 0], seg[:, 1])
    nsub = np.maximum(np.ceil(length / (0.25 * cell_size)).astype(np.int64), 1)
    total = int(nsub.sum())
    starts = np.repeat(pts[:-1], nsub, axis=0)
    steps = np.repeat(seg / nsub[:, None], nsub, axis=0)
    offs = np.arange(total) - np.repeat(np.cumsum(nsub) - nsub, nsub)
    samples = np.vstack([starts + steps * offs[:, None], pts[-1:]])

    cells = np.floor(samples / cell_size).astype(np.int64) - lo
    occ[cells[:, 0], cells[:, 1]] = True
    dc = np.diff(cells, axis=0)
    diag = (np.abs(dc[:, 0]) == 1) & (np.abs(dc[:, 1]) == 1)
    if np.any(diag):
        cx, cy = cells[:-1][diag, 0], cells[:-1][diag, 1]
        occ[cx + dc[diag, 0], cy] = True
        occ[cx, cy + dc[diag, 1]] = True
    return GridRaster(lo * cell_size, cell_size, occ)


def topological_hull_area(
    path: PlanarPath, cell_size: float, max_cells: int = 2**24
) -> float:
    """Raster estimate of the area of the topological hull of the trace.

    The unbounded component of the complement is removed by a 4-connected
    flood fill seeded at the (always empty) margin; everything else, trace
    band included, counts toward the area, so the estimate is at least the
    rasterized-trace area.
    """
    if path.n_vertices == 1:
        return 0.0  # a point trace encloses nothing
    raster = rasterize(path, cell_size, max_cells)
    labels, _ = ndimage.label(~raster.occupancy, structure=_FOUR_CONNECTED)
    exterior = labels[0, 0]
    filled = raster.n_cells - int(np.count_nonzero(labels == exterior))
    return filled * cell_size * cell_size


def lattice_hull_area(walk: PlanarPath, max_pixels: int = 2**26) -> int:
    """Exact enclosed-cell count of a unit-step lattice walk.

    Works on the doubled grid: walk vertices map to even pixels, traversed
    edges block the odd pixel between them, and unit cells are the odd-odd
    pixels.  A cell counts when it cannot reach the margin through unblocked
    4-connected pixels.
    """
    v = np.asarray(walk.vertices)
    vi = np.rint(v).astype(np.int64)
    if not np.all(v == vi):
        raise DomainError("lattice walk vertices must be integers")
    if len(vi) >= 2:
        d = np.diff(vi, axis=0)
        if not np.all(np.abs(d).sum(axis=1) == 1):
            raise DomainError("consecutive vertices must differ by one unit lattice step")
    lo = vi.min(axis=0)
    p = 2 * (vi - lo) + 2
    shape = p.max(axis=0) + 3
    n_pixels = int(shape[0]) * int(shape[1])
    if n_pixels > max_pixels:
        raise ResourceError(
            f"lattice raster needs {n_pixels} pixels; raise max_pixels "
            f"(currently {max_pixels})"
        )
    occ = np.zeros(shape, dtype=bool)
    occ[p[:, 0], p[:, 1]] = True
    if len(p) >= 2:
        mid = (p[:-1] + p[1:]) // 2
        occ[mid[:, 0], mid[:, 1]] = True
    labels, _ = ndimage.label(~occ, structure=_FOUR_CONNECTED)
    exterior = labels[0, 0]
    cell_labels = labels[1::2, 1::2]
    return int(np.count_nonzero(cell_labels != exterior))
