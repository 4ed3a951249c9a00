"""Named verification suites behind ``starhull verify`` and the acceptance tests.

Each suite returns a list of JSON-ready records
``{name, target, estimate, stderr, band, pass}``; a run passes when every
record passes.  The ``desk`` budget pins the tolerances of the acceptance
criteria; ``quick`` is a proportionally loosened smoke tier (statistical
bands adapt through their standard errors, resolution-driven bias allowances
are widened by the sqrt(dt) law); ``paper`` additionally runs the published
full-scale lattice experiment.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from . import analytic, geometry, hitting, mc, paths
from .errors import DomainError
from .rng import substream

__all__ = ["SUITES", "run_suite", "suite_names"]

_BUDGETS = ("quick", "desk", "paper")


def _record(name, target, estimate, stderr, band, passed):
    return {
        "name": name,
        "target": target,
        "estimate": estimate,
        "stderr": stderr,
        "band": band,
        "pass": bool(passed),
    }


def _band_record(name, target, est: mc.McEstimate, extra_band=0.0):
    band = 3.0 * est.stderr + extra_band
    return _record(
        name, target, est.mean, est.stderr, band, abs(est.mean - target) <= band
    )


# ---------------------------------------------------------------------------


def radial_areas(budget="desk", seed=20260811, threads=1):
    """Star-hull expected areas by the exact radial samplers (no path bias)."""
    n = 100_000 if budget == "quick" else 1_000_000
    out = []
    for process, target in (("bm", 3 * math.pi / 8), ("bb", math.pi / 4)):
        est = mc.radial_area_experiment(process, n, seed, threads)
        out.append(_band_record(f"radial_area_{process}", target, est))
        seed += 1
    return out


_PATH_AREA_TARGETS = {
    ("bm", "convex"): (math.pi / 2, 0.025),
    ("bm", "star"): (3 * math.pi / 8, 0.03),
    ("bb", "star"): (math.pi / 4, 0.03),
    ("bb", "convex"): (math.pi / 3, 0.025),
}


def path_areas(budget="desk", seed=20260821, threads=1):
    """Hull areas from discretized paths, with documented bias allowances,
    plus a three-rung resolution ladder on common paths."""
    if budget == "quick":
        n_steps, n_bins, n, n_ladder = 2**11, 2**9, 2_000, 500
        widen = math.sqrt(2**14 / n_steps)
    else:
        n_steps, n_bins, n, n_ladder = 2**14, 2**12, 20_000, 2_000
        widen = 1.0
    out = []
    for (process, hull), (target, allowance) in _PATH_AREA_TARGETS.items():
        spec = mc.ExperimentSpec(
            "area", n, seed, process=process, hull=hull,
            n_steps=n_steps, n_bins=n_bins if hull == "star" else None,
        )
        est = mc.area_experiment(spec, threads)
        out.append(
            _band_record(f"path_area_{process}_{hull}", target, est,
                         extra_band=allowance * widen * target)
        )
        seed += 1
    for (process, hull), (target, _) in _PATH_AREA_TARGETS.items():
        rungs = mc.resolution_ladder(
            process, hull, n_steps, n_bins, rungs=3, n=n_ladder, seed=seed
        )
        means = [r.mean for r in rungs]
        monotone = means[0] <= means[1] <= means[2]
        out.append(
            _record(
                f"ladder_monotone_{process}_{hull}", None, min(np.diff(means)),
                rungs[-1].stderr, 0.0, monotone,
            )
        )
        shrink = abs(target - means[0]) >= abs(target - means[2])
        out.append(
            _record(
                f"ladder_bias_shrinks_{process}_{hull}", None,
                abs(target - means[2]) - abs(target - means[0]),
                rungs[-1].stderr, 0.0, shrink,
            )
        )
        seed += 1
    return out


def bridge_topo(budget="desk", seed=20260831, threads=1):
    """Rasterized topological-hull area of the bridge against pi/5."""
    if budget == "quick":
        n_steps, cell, n, allowance = 2**12, 2**-7, 1_000, 0.10
    else:
        n_steps, cell, n, allowance = 2**14, 2**-8, 10_000, 0.05
    target = math.pi / 5
    spec = mc.ExperimentSpec(
        "area", n, seed, process="bb", hull="topological",
        n_steps=n_steps, cell_size=cell,
    )
    est = mc.area_experiment(spec, threads)
    return [_band_record("bridge_topo_area", target, est, extra_band=allowance * target)]


def lattice_walk(budget="desk", seed=20260841, threads=1):
    """Scaled lattice-walk hull areas bracketing the open Brownian constant."""
    if budget == "quick":
        n_walks, walk_len, target, band = 400, 20_000, 0.5911, None
    elif budget == "paper":
        n_walks, walk_len = mc.PAPER_SCALE["n_walks"], mc.PAPER_SCALE["walk_len"]
        target, band = 0.5911, None
    else:
        n_walks, walk_len, target, band = 2_000, 100_000, 0.59, 0.04
    est = mc.hull_bm_topo_experiment(n_walks, walk_len, seed, threads)
    if band is None:
        band = 3 * est.stderr + 0.06  # smoke/paper tier: SE plus finite-size slack
    out = [
        _record(
            "lattice_scaled_area", target, est.mean, est.stderr, band,
            abs(est.mean - target) <= band,
        )
    ]
    upper = 3 * math.pi / 8
    out.append(
        _record(
            "lattice_below_star_bound", None, est.mean, est.stderr, upper,
            0.0 < est.mean <= upper,
        )
    )
    return out


def joint_law(budget="desk", seed=20260851, threads=1):
    """Monte Carlo joint Laplace means against the closed form, and the
    (T, X) scaling relation by two-sample KS."""
    n = 100_000 if budget == "quick" else 1_000_000
    grid = (0.0, 0.3, 1.0)
    out = []
    for rho in (0.5, 1.0, 4.0):
        for lam in grid:
            for muv in grid:
                target = analytic.ray_hit_laplace(rho, lam, muv)
                est = mc.ray_laplace_experiment(rho, lam, muv, n, seed, threads)
                band = max(3 * est.stderr, 1e-15)
                out.append(
                    _record(
                        f"laplace_rho{rho}_lam{lam}_mu{muv}", target,
                        est.mean, est.stderr, band, abs(est.mean - target) <= band,
                    )
                )
                seed += 1
    n_ks = 10_000 if budget != "quick" else 4_000
    t4, x4 = hitting.ray_hit_batch(4.0, n_ks, substream(seed, 0))
    t1, x1 = hitting.ray_hit_batch(1.0, n_ks, substream(seed, 1))
    thresh = mc.ks_threshold(n_ks, n_ks)
    d_t = mc.ks_two_sample(t4, 16.0 * t1)
    d_x = mc.ks_two_sample(x4, 4.0 * x1)
    out.append(_record("scaling_ks_time", 0.0, d_t, 0.0, thresh, d_t < thresh))
    out.append(_record("scaling_ks_place", 0.0, d_x, 0.0, thresh, d_x < thresh))
    return out


def conditional(budget="desk", seed=20260861, threads=1):
    """Unconditional restatements of the first-passage conditional structure:
    E[e^(-lam T) g(X)] - E[e^(-sqrt(2 lam) X) g(X)] = 0 for three weights."""
    n = 100_000 if budget == "quick" else 1_000_000
    out = []
    for g in ("one", "x", "below_2rho"):
        for lam in (0.3, 1.0, 2.5):
            est = mc.conditional_identity_experiment(1.0, lam, g, n, seed, threads)
            band = 3 * est.stderr
            out.append(
                _record(
                    f"conditional_{g}_lam{lam}", 0.0, est.mean, est.stderr,
                    band, abs(est.mean) <= band,
                )
            )
            seed += 1
    return out


def _kv(nu, z):
    return special.kv(nu, z)


def densities(budget="desk", seed=0, threads=1):
    """Quadrature checks: normalizations, marginalization consistency, the
    radial moment formulas, and the Gaussian quartic integral identity."""
    out = []
    rho = 1.0

    # normalizations (tolerance 1e-6)
    def t_norm_integrand(s):  # t = rho^2/(4 s) maps the time density onto (0, inf)
        return math.exp(-s) * _kv(0.25, s) / math.sqrt(math.pi**3 * s)

    t_norm = integrate.quad(t_norm_integrand, 0, np.inf, limit=200)[0]
    out.append(_record("t_density_normalizes", 1.0, t_norm, 0.0, 1e-6,
                       abs(t_norm - 1) <= 1e-6))

    def x_norm_integrand(u):  # x = u^2 + rho removes the edge singularity
        return analytic.hit_place_density(rho, u * u + rho) * 2 * u

    x_norm = integrate.quad(x_norm_integrand, 0, np.inf, limit=200)[0]
    out.append(_record("x_density_normalizes", 1.0, x_norm, 0.0, 1e-6,
                       abs(x_norm - 1) <= 1e-6))

    def joint_t_integral(x):  # inner integral over t via u = x/sqrt(t)
        val = integrate.quad(
            lambda u: analytic.ray_hit_density(rho, x * x / (u * u), x)
            * 2 * x * x / (u * u * u),
            0, np.inf, limit=200,
        )[0]
        return val

    joint_norm = integrate.quad(
        lambda u: joint_t_integral(u * u + rho) * 2 * u, 0, np.inf, limit=200
    )[0]
    out.append(_record("joint_density_normalizes", 1.0, joint_norm, 0.0, 1e-6,
                       abs(joint_norm - 1) <= 1e-6))

    # marginalization consistency on 20-point grids (tolerance 1e-6)
    xs = rho + np.geomspace(0.05, 20.0, 20)
    worst = 0.0
    for x in xs:
        worst = max(worst, abs(joint_t_integral(x) - analytic.hit_place_density(rho, x)))
    out.append(_record("joint_to_x_marginal", 0.0, worst, 0.0, 1e-6, worst <= 1e-6))

    ts = np.geomspace(0.05, 30.0, 20)
    worst_t = 0.0
    for t in ts:
        inner = integrate.quad(
            lambda u: analytic.ray_hit_density(rho, t, u * u + rho) * 2 * u,
            0, np.inf, limit=200,
        )[0]
        worst_t = max(worst_t, abs(inner - analytic.hit_time_density(rho, t)))
    out.append(_record("joint_to_t_marginal", 0.0, worst_t, 0.0, 1e-6, worst_t <= 1e-6))

    # radial moment formulas against density quadrature (tolerance 1e-6)
    for p in (-0.4, 1.0, 2.0, 3.0):
        val = integrate.quad(
            lambda r: r**p * analytic.bm_radial_density(r), 0, np.inf, limit=400
        )[0]
        target = analytic.bm_radial_moment(p)
        out.append(_record(f"bm_moment_p{p}", target, val, 0.0, 1e-6,
                           abs(val - target) <= 1e-6))
    for p in (-0.9, 1.0, 2.0, 3.0):
        val = integrate.quad(
            lambda r: r**p * analytic.bb_radial_density(r), 0, np.inf, limit=400
        )[0]
        target = analytic.bb_radial_moment(p)
        out.append(_record(f"bb_moment_p{p}", target, val, 0.0, 1e-6,
                           abs(val - target) <= 1e-6))

    # Gaussian quartic identity (relative tolerance 1e-8)
    for a, b in ((0.5, 0.5), (1.0, 2.0), (2.0, 0.1)):
        lhs = integrate.quad(
            lambda u, a=a, b=b: math.exp(-a * u**4 - 2 * b * u * u), 0, np.inf
        )[0]
        w = b * b / (2 * a)
        rhs = 0.25 * math.sqrt(2 * b / a) * math.exp(w) * analytic.bessel_k(0.25, w)
        rel = abs(lhs - rhs) / rhs
        out.append(_record(f"quartic_identity_a{a}_b{b}", 0.0, rel, 0.0, 1e-8,
                           rel <= 1e-8))

    # transform-level conditional structure on a 3x3 grid (tolerance 1e-8)
    worst_l = 0.0
    for lam in (0.2, 1.0, 3.0):
        for muv in (0.1, 0.7, 2.0):
            decay = math.sqrt(2 * lam) + muv
            val = integrate.quad(
                lambda u: math.exp(-decay * (u * u + rho))
                * analytic.hit_place_density(rho, u * u + rho) * 2 * u,
                0, np.inf, limit=200,
            )[0]
            worst_l = max(worst_l, abs(val - analytic.ray_hit_laplace(rho, lam, muv)))
    out.append(_record("laplace_via_x_density", 0.0, worst_l, 0.0, 1e-8,
                       worst_l <= 1e-8))
    return out


def tail(budget="desk", seed=20260871, threads=1):
    """Log-log survival slope of exact hitting-time draws against -1/4."""
    n = 1_000_000 if budget == "quick" else 10_000_000
    est = mc.tail_experiment(n, seed)
    target, band = -0.25, 0.03
    return [
        _record("tail_slope", target, est.mean, est.stderr, band,
                abs(est.mean - target) <= band)
    ]


def geometry_suite(budget="desk", seed=20260881, threads=1):
    """Inclusion chain with discretization allowances on random paths, radial
    idempotence, rotation equivariance, and closed-form polyline fixtures."""
    n_paths = 200 if budget == "quick" else 1_000
    n_bins, n_steps, cell = 64, 256, 0.02
    out = []

    worst_ts = -np.inf  # topo <= star + perimeter*cell
    worst_sc = -np.inf  # star <= convex + 2*pi*r_max^2/n_bins
    for i in range(n_paths):
        rng = substream(seed, i)
        process = "bm" if i % 2 == 0 else "bb"
        path = paths.sample_path(paths.PathSpec(process, n_steps), rng)
        prof = geometry.radial_profile(path, n_bins)
        star = geometry.star_hull_area(prof)
        convex = geometry.polygon_area(geometry.convex_hull(path))
        topo = geometry.topological_hull_area(path, cell)
        perimeter = float(np.hypot(*np.diff(path.vertices, axis=0).T).sum())
        r_max = float(prof.values.max())
        worst_ts = max(worst_ts, topo - star - perimeter * cell)
        worst_sc = max(worst_sc, star - convex - 2 * math.pi * r_max**2 / n_bins)
    out.append(_record("inclusion_topo_le_star", 0.0, worst_ts, 0.0, 0.0,
                       worst_ts <= 0.0))
    out.append(_record("inclusion_star_le_convex", 0.0, worst_sc, 0.0, 0.0,
                       worst_sc <= 0.0))

    # radial idempotence on the reconstructed boundary polygon
    worst_idem = 0.0
    for i in range(20):
        rng = substream(seed + 1, i)
        path = paths.sample_path(paths.PathSpec("bm", 200), rng)
        prof = geometry.radial_profile(path, n_bins)
        prof2 = geometry.radial_profile(geometry.profile_polygon(prof), n_bins)
        rel = np.max(
            np.abs(prof2.values - prof.values) / np.maximum(prof.values, 1e-300)
        )
        worst_idem = max(worst_idem, float(rel))
    out.append(_record("radial_idempotence", 0.0, worst_idem, 0.0, 1e-12,
                       worst_idem <= 1e-12))

    # rotation equivariance: rotating by k bins cycles the profile by k
    worst_rot = 0.0
    for i, k in enumerate((1, 7, 33)):
        rng = substream(seed + 2, i)
        path = paths.sample_path(paths.PathSpec("bm", 200), rng)
        prof = geometry.radial_profile(path, n_bins).values
        rotated = paths.rotate(path, 2 * math.pi * k / n_bins)
        prof_rot = geometry.radial_profile(rotated, n_bins).values
        worst_rot = max(worst_rot, float(np.max(np.abs(prof_rot - np.roll(prof, k)))))
    out.append(_record("rotation_equivariance", 0.0, worst_rot, 0.0, 1e-9,
                       worst_rot <= 1e-9))

    # closed-form fixtures
    L = geometry.PlanarPath(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
    nb = 2**10
    l_area = geometry.star_hull_area(geometry.radial_profile(L, nb))
    band = 10.0 / nb**2
    out.append(_record("L_path_star_area", 0.5, l_area, 0.0, band,
                       abs(l_area - 0.5) <= band))
    square = geometry.convex_hull(
        np.array([[0.0, 0.0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]])
    )
    sq_area = geometry.polygon_area(square)
    out.append(_record("square_hull_area", 1.0, sq_area, 0.0, 1e-12,
                       abs(sq_area - 1.0) <= 1e-12))
    boundary = geometry.PlanarPath(
        np.array([[0.0, 0.0], [1, 0], [1, 1], [0, 1], [0, 0]]), closed=True
    )
    cell_sq = 0.01
    topo_sq = geometry.topological_hull_area(boundary, cell_sq)
    out.append(_record("square_topo_area", 1.0, topo_sq, 0.0, 4 * cell_sq,
                       abs(topo_sq - 1.0) <= 4 * cell_sq))
    return out


SUITES = {
    "radial-areas": radial_areas,
    "path-areas": path_areas,
    "bridge-topo": bridge_topo,
    "lattice-walk": lattice_walk,
    "joint-law": joint_law,
    "conditional": conditional,
    "densities": densities,
    "tail": tail,
    "geometry": geometry_suite,
}


def suite_names():
    return list(SUITES) + ["all"]


def run_suite(name: str, budget: str = "desk", seed=None, threads: int = 1):
    """Run one suite (or "all"); returns the list of criterion records."""
    if budget not in _BUDGETS:
        raise DomainError(f"budget must be one of {_BUDGETS}")
    if name == "all":
        records = []
        for suite in SUITES.values():
            records.extend(
                suite(budget, threads=threads) if seed is None
                else suite(budget, seed=seed, threads=threads)
            )
        return records
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {suite_names()}")
    suite = SUITES[name]
    if seed is None:
        return suite(budget, threads=threads)
    return suite(budget, seed=seed, threads=threads)
