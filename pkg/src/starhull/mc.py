"""Reproducible Monte Carlo experiments, statistics, and the named runs that
reproduce the exact hull-area constants.

Determinism contract: every estimate is a deterministic function of
(master seed, replica count), independent of thread count and completion
order.  Replicas are grouped into fixed-size chunks; chunk partials are
reduced in chunk order, so partial runs merge bit-identically into full runs.
Scalar samplers get one substream per replica; vectorized samplers draw each
chunk from the chunk's substream.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import geometry, hitting, paths
from .errors import DomainError, NumericError, StatisticsError
from .rng import substream

__all__ = [
    "McEstimate",
    "PartialEstimate",
    "ExperimentSpec",
    "estimate",
    "estimate_partial",
    "estimate_batched",
    "area_experiment",
    "radial_area_experiment",
    "ray_laplace_experiment",
    "conditional_identity_experiment",
    "hull_bm_topo_experiment",
    "tail_experiment",
    "resolution_ladder",
    "run_experiment",
    "ks_one_sample",
    "ks_two_sample",
    "ks_threshold",
    "TailFit",
    "fit_tail",
    "tail_slope",
    "PAPER_SCALE",
]

_DEFAULT_CHUNK = 1024


@dataclass(frozen=True)
class McEstimate:
    """Sample mean with its standard error and provenance."""

    mean: float
    stderr: float
    n: int
    master_seed: int
    config_digest: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("an estimate needs n >= 2")
        if not self.stderr >= 0:
            raise DomainError("stderr must be >= 0")


def config_digest(params: dict) -> str:
    payload = json.dumps(params, sort_keys=True, default=str).encode()
    return hashlib.sha256(payload).hexdigest()[:12]


@dataclass
class PartialEstimate:
    """Ordered chunk partials of a (possibly split) estimation run.

    Chunks carry (chunk_index, count, mean, M2).  Merging concatenates chunk
    lists; finalization reduces them in chunk order with the exact pairwise
    update, so any aligned split of the replica range reproduces the full
    run bit for bit.
    """

    master_seed: int
    chunk_size: int
    chunks: list = field(default_factory=list)

    def merge(self, other: "PartialEstimate") -> "PartialEstimate":
        if other.master_seed != self.master_seed or other.chunk_size != self.chunk_size:
            raise DomainError("can only merge partials of the same run configuration")
        merged = PartialEstimate(self.master_seed, self.chunk_size)
        merged.chunks = sorted(self.chunks + other.chunks)
        indices = [c[0] for c in merged.chunks]
        if len(set(indices)) != len(indices):
            raise DomainError("partials overlap")
        return merged

    def to_estimate(self, digest: str = "") -> McEstimate:
        if not self.chunks:
            raise DomainError("empty partial estimate")
        n, mean, m2 = 0, 0.0, 0.0
        for _, cn, cmean, cm2 in sorted(self.chunks):
            tot = n + cn
            delta = cmean - mean
            mean += delta * cn / tot
            m2 += cm2 + delta * delta * n * cn / tot
            n = tot
        stderr = math.sqrt(m2 / (n - 1) / n) if n > 1 else 0.0
        return McEstimate(mean, stderr, n, self.master_seed, digest)


def _chunk_stats(values: np.ndarray, first_replica: int):
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        bad = first_replica + int(np.argmin(np.isfinite(values)))
        raise NumericError(f"non-finite sample at replica {bad}")
    mean = float(values.mean())
    m2 = float(np.sum((values - mean) ** 2))
    return len(values), mean, m2


def _run_chunks(chunk_jobs, threads: int):
    if threads <= 1:
        return [job() for job in chunk_jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: job(), chunk_jobs))


def estimate_partial(
    sampler,
    seed: int,
    lo: int,
    hi: int,
    *,
    chunk_size: int = _DEFAULT_CHUNK,
    threads: int = 1,
) -> PartialEstimate:
    """Evaluate replicas [lo, hi) of a scalar sampler on their substreams.

    ``lo`` and ``hi`` must sit on chunk boundaries (or ``hi`` may be the run
    end) so that split runs merge exactly.
    """
    if lo % chunk_size != 0:
        raise DomainError("replica range must start on a chunk boundary")

    def make_job(c_lo, c_hi):
        def job():
            vals = np.array(
                [sampler(substream(seed, i)) for i in range(c_lo, c_hi)], dtype=float
            )
            return (c_lo // chunk_size, *_chunk_stats(vals, c_lo))

        return job

    jobs = [
        make_job(c, min(c + chunk_size, hi)) for c in range(lo, hi, chunk_size)
    ]
    part = PartialEstimate(seed, chunk_size)
    part.chunks = _run_chunks(jobs, threads)
    return part


def estimate(
    sampler,
    n: int,
    seed: int,
    *,
    chunk_size: int = _DEFAULT_CHUNK,
    threads: int = 1,
    digest: str = "",
) -> McEstimate:
    """Mean and standard error of ``n`` scalar samples, one substream each."""
    if n < 2:
        raise DomainError("n must be >= 2")
    part = estimate_partial(sampler, seed, 0, n, chunk_size=chunk_size, threads=threads)
    return part.to_estimate(digest or config_digest({"n": n, "chunk_size": chunk_size}))


def estimate_batched(
    batch_sampler,
    n: int,
    seed: int,
    *,
    chunk_size: int = 1 << 16,
    threads: int = 1,
    digest: str = "",
) -> McEstimate:
    """Like :func:`estimate` for vectorized samplers.

    ``batch_sampler(k, rng)`` must return ``k`` samples; chunk ``c`` draws
    from substream ``c``, so determinism and mergeability match the scalar
    path at chunk granularity.
    """
    if n < 2:
        raise DomainError("n must be >= 2")

    def make_job(c_idx, k, c_lo):
        def job():
            vals = batch_sampler(k, substream(seed, c_idx))
            return (c_idx, *_chunk_stats(vals, c_lo))

        return job

    jobs = [
        make_job(c // chunk_size, min(chunk_size, n - c), c)
        for c in range(0, n, chunk_size)
    ]
    part = PartialEstimate(seed, chunk_size)
    part.chunks = _run_chunks(jobs, threads)
    return part.to_estimate(digest or config_digest({"n": n, "chunk_size": chunk_size}))


# ---------------------------------------------------------------------------
# named experiments


_EXPERIMENT_NAMES = ("area", "radial_area", "ray_laplace", "tail", "hull_bm_topo")


@dataclass(frozen=True)
class ExperimentSpec:
    """Configuration of one named experiment; only name-compatible knobs may be set."""

    name: str
    n_replicas: int
    seed: int = 0
    process: str | None = None
    hull: str | None = None
    n_steps: int | None = None
    n_bins: int | None = None
    cell_size: float | None = None
    rho: float | None = None
    lam: float | None = None
    mu: float | None = None
    walk_len: int | None = None

    def __post_init__(self):
        if self.name not in _EXPERIMENT_NAMES:
            raise DomainError(f"unknown experiment {self.name!r}")
        if self.n_replicas < 2:
            raise DomainError("n_replicas must be >= 2")
        for knob in ("n_steps", "n_bins", "walk_len"):
            v = getattr(self, knob)
            if v is not None and v < 1:
                raise DomainError(f"{knob} must be positive")
        if self.cell_size is not None and not self.cell_size > 0:
            raise DomainError("cell_size must be positive")
        if self.name == "area":
            if self.process not in ("bm", "bb"):
                raise DomainError("area experiment needs process bm|bb")
            if self.hull not in ("convex", "star", "topological"):
                raise DomainError("area experiment needs hull convex|star|topological")
            if self.n_steps is None:
                raise DomainError("area experiment needs n_steps")
            if self.hull == "star" and self.n_bins is None:
                raise DomainError("star area experiment needs n_bins")
            if self.hull == "topological" and self.cell_size is None:
                raise DomainError("topological area experiment needs cell_size")
        elif self.name == "radial_area":
            if self.process not in ("bm", "bb"):
                raise DomainError("radial_area experiment needs process bm|bb")
        elif self.name == "ray_laplace":
            if self.rho is None or self.lam is None or self.mu is None:
                raise DomainError("ray_laplace experiment needs rho, lam, mu")
        elif self.name == "hull_bm_topo":
            if self.walk_len is None or self.walk_len < 1000:
                raise DomainError("hull_bm_topo experiment needs walk_len >= 1000")

    def params(self) -> dict:
        out = {"name": self.name, "n_replicas": self.n_replicas, "seed": self.seed}
        for knob in (
            "process", "hull", "n_steps", "n_bins", "cell_size",
            "rho", "lam", "mu", "walk_len",
        ):
            v = getattr(self, knob)
            if v is not None:
                out[knob] = v
        return out


def _hull_area_fn(spec: ExperimentSpec):
    if spec.hull == "convex":
        return lambda p: geometry.polygon_area(geometry.convex_hull(p))
    if spec.hull == "star":
        return lambda p: geometry.star_hull_area(geometry.radial_profile(p, spec.n_bins))
    return lambda p: geometry.topological_hull_area(p, spec.cell_size)


def area_experiment(spec: ExperimentSpec, threads: int = 1) -> McEstimate:
    """Mean hull area over independently generated paths, one substream each."""
    if spec.name != "area":
        raise DomainError("spec.name must be 'area'")
    path_spec = paths.PathSpec(spec.process, spec.n_steps, 1.0, spec.seed)
    area_of = _hull_area_fn(spec)

    def sampler(rng):
        return area_of(paths.sample_path(path_spec, rng))

    return estimate(
        sampler, spec.n_replicas, spec.seed,
        chunk_size=64, threads=threads, digest=config_digest(spec.params()),
    )


def radial_area_experiment(
    process: str, n: int, seed: int, threads: int = 1
) -> McEstimate:
    """Star-hull expected area via the exact radial-distance samplers.

    Estimates pi * E[R^2]; no path discretization enters, so the estimator
    is unbiased for the true hull constants.
    """
    if process == "bm":
        batch = lambda k, rng: np.pi * hitting.bm_radial_batch(k, rng) ** 2
    elif process == "bb":
        batch = lambda k, rng: np.pi * hitting.bb_radial_batch(k, rng) ** 2
    else:
        raise DomainError("process must be bm|bb")
    digest = config_digest({"name": "radial_area", "process": process, "n": n, "seed": seed})
    return estimate_batched(batch, n, seed, threads=threads, digest=digest)


def ray_laplace_experiment(
    rho: float, lam: float, mu: float, n: int, seed: int, threads: int = 1
) -> McEstimate:
    """MC estimate of E[exp(-lam*T - mu*X)] from the exact joint sampler."""
    if lam < 0 or mu < 0:
        raise DomainError("lam and mu must be >= 0")

    def batch(k, rng):
        t, x = hitting.ray_hit_batch(rho, k, rng)
        return np.exp(-lam * t - mu * x)

    digest = config_digest(
        {"name": "ray_laplace", "rho": rho, "lam": lam, "mu": mu, "n": n, "seed": seed}
    )
    return estimate_batched(batch, n, seed, threads=threads, digest=digest)


_CONDITIONAL_WEIGHTS = ("one", "x", "below_2rho")


def conditional_identity_experiment(
    rho: float, lam: float, g: str, n: int, seed: int, threads: int = 1
) -> McEstimate:
    """Paired-difference estimate of E[e^(-lam T) g(X)] - E[e^(-sqrt(2 lam) X) g(X)].

    The conditional first-passage structure of T given X makes the difference
    exactly zero in expectation; sharing draws between the two terms makes the
    standard error of the difference the right yardstick.
    """
    if g not in _CONDITIONAL_WEIGHTS:
        raise DomainError(f"g must be one of {_CONDITIONAL_WEIGHTS}")

    def weight(x):
        if g == "one":
            return 1.0
        if g == "x":
            return x
        return (x < 2 * rho).astype(float)

    root = math.sqrt(2.0 * lam)

    def batch(k, rng):
        t, x = hitting.ray_hit_batch(rho, k, rng)
        return (np.exp(-lam * t) - np.exp(-root * x)) * weight(x)

    digest = config_digest(
        {"name": "conditional", "rho": rho, "lam": lam, "g": g, "n": n, "seed": seed}
    )
    return estimate_batched(batch, n, seed, threads=threads, digest=digest)


#: The published lattice run: 1e5 walks of 1e5 steps (not run by default).
PAPER_SCALE = {"n_walks": 100_000, "walk_len": 100_000}


def hull_bm_topo_experiment(
    n_walks: int, walk_len: int, seed: int, threads: int = 1
) -> McEstimate:
    """Scaled mean topological-hull cell count of lattice random walks.

    A walk of length m has per-coordinate variance m/2, so its hull area is
    divided by m/2 to estimate the unit-time Brownian constant.  The same
    normalization sends the convex-hull analogue to pi/2, which pins the
    scale.
    """
    if walk_len < 1000:
        raise DomainError("walk_len must be >= 1000")
    path_spec = paths.PathSpec("srw", walk_len, float(walk_len), seed)

    def sampler(rng):
        walk = paths.sample_srw(path_spec, rng)
        return geometry.lattice_hull_area(walk) / (walk_len / 2.0)

    digest = config_digest(
        {"name": "hull_bm_topo", "n_walks": n_walks, "walk_len": walk_len, "seed": seed}
    )
    return estimate(
        sampler, n_walks, seed, chunk_size=16, threads=threads, digest=digest
    )


def tail_experiment(
    n: int,
    seed: int,
    t_lo: float = 1e2,
    t_hi: float = 1e6,
    n_points: int = 25,
) -> McEstimate:
    """Log-log survival slope of exact hitting-time samples (target -1/4).

    The reported stderr is the OLS slope error; thresholds share samples, so
    it is indicative rather than exact.
    """
    n_chunks = -(-n // (1 << 20))
    t = np.concatenate(
        [hitting.ray_hit_batch(1.0, 1 << 20, substream(seed, c))[0]
         for c in range(n_chunks)]
    )[:n]
    fit = fit_tail(t, t_lo, t_hi, n_points)
    digest = config_digest({"name": "tail", "n": n, "seed": seed})
    return McEstimate(fit.slope, fit.stderr, n, seed, digest)


def resolution_ladder(
    process: str,
    hull: str,
    n_steps: int,
    n_bins: int,
    rungs: int,
    n: int,
    seed: int,
) -> list[McEstimate]:
    """Hull-area estimates on a resolution-doubling ladder with common paths.

    Each replica generates one path at the finest resolution; coarser rungs
    reuse it through exact downsampling (and proportionally fewer angular
    bins), so rung differences are dominated by discretization bias rather
    than Monte Carlo noise.  Rung ``r`` uses n_steps/2^(rungs-1-r) steps.
    """
    if rungs < 2:
        raise DomainError("need at least 2 rungs")
    if n_steps % (1 << (rungs - 1)) != 0 or (
        hull == "star" and n_bins % (1 << (rungs - 1)) != 0
    ):
        raise DomainError("n_steps and n_bins must be divisible by 2^(rungs-1)")
    path_spec = paths.PathSpec(process, n_steps, 1.0, seed)

    def areas_of(rng):
        fine = paths.sample_path(path_spec, rng)
        out = np.empty(rungs)
        for r in range(rungs):
            factor = 1 << (rungs - 1 - r)
            p = paths.downsample(fine, factor)
            if hull == "convex":
                out[r] = geometry.polygon_area(geometry.convex_hull(p))
            elif hull == "star":
                out[r] = geometry.star_hull_area(
                    geometry.radial_profile(p, n_bins // factor)
                )
            else:
                raise DomainError("ladder supports convex|star hulls")
        return out

    chunk_size = 64
    partials = [[] for _ in range(rungs)]
    for c_lo in range(0, n, chunk_size):
        c_hi = min(c_lo + chunk_size, n)
        block = np.array([areas_of(substream(seed, i)) for i in range(c_lo, c_hi)])
        for r in range(rungs):
            partials[r].append((c_lo // chunk_size, *_chunk_stats(block[:, r], c_lo)))
    out = []
    for r in range(rungs):
        part = PartialEstimate(seed, chunk_size)
        part.chunks = partials[r]
        out.append(part.to_estimate(config_digest({"ladder_rung": r, "seed": seed})))
    return out


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> dict:
    """Run a named experiment and serialize it as a flat JSON-ready record."""
    start = time.perf_counter()
    if spec.name == "area":
        est = area_experiment(spec, threads)
    elif spec.name == "radial_area":
        est = radial_area_experiment(spec.process, spec.n_replicas, spec.seed, threads)
    elif spec.name == "ray_laplace":
        est = ray_laplace_experiment(
            spec.rho, spec.lam, spec.mu, spec.n_replicas, spec.seed, threads
        )
    elif spec.name == "tail":
        est = tail_experiment(spec.n_replicas, spec.seed)
    else:
        est = hull_bm_topo_experiment(
            spec.n_replicas, spec.walk_len, spec.seed, threads
        )
    wall = time.perf_counter() - start
    return {
        "name": spec.name,
        "params": spec.params(),
        "mean": est.mean,
        "stderr": est.stderr,
        "n": est.n,
        "seed": spec.seed,
        "config_digest": est.config_digest,
        "wall_time_s": wall,
    }


# ---------------------------------------------------------------------------
# statistics


def ks_one_sample(samples, cdf) -> float:
    """Supremum distance between the sample ECDF and a reference CDF."""
    samples = np.sort(np.asarray(samples, dtype=float))
    n = len(samples)
    if n < 20:
        raise StatisticsError("KS test needs at least 20 samples")
    f = np.asarray(cdf(samples), dtype=float)
    up = np.arange(1, n + 1) / n - f
    down = f - np.arange(0, n) / n
    return float(max(up.max(), down.max()))


def ks_two_sample(a, b) -> float:
    """Supremum distance between two sample ECDFs."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if len(a) < 20 or len(b) < 20:
        raise StatisticsError("KS test needs at least 20 samples per side")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.abs(fa - fb).max())


def ks_threshold(n: int, m: int | None = None, alpha: float = 0.01) -> float:
    """Asymptotic KS critical value; two-sample when ``m`` is given."""
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    if m is None:
        return c / math.sqrt(n)
    return c * math.sqrt((n + m) / (n * m))


@dataclass(frozen=True)
class TailFit:
    """OLS fit of log-survival against log-threshold."""

    slope: float
    intercept: float
    r_squared: float
    stderr: float
    thresholds: np.ndarray
    survival: np.ndarray


def fit_tail(
    samples,
    t_lo: float,
    t_hi: float,
    n_points: int = 25,
    min_exceedances: int = 100,
) -> TailFit:
    """Fit the tail exponent of heavy-tailed samples on log-spaced thresholds.

    Raises :class:`StatisticsError` when any threshold has fewer than
    ``min_exceedances`` exceedances, where the empirical survival becomes too
    noisy for a slope estimate.
    """
    if not (0 < t_lo < t_hi):
        raise DomainError("need 0 < t_lo < t_hi")
    if n_points < 3:
        raise DomainError("need at least 3 thresholds")
    samples = np.sort(np.asarray(samples, dtype=float))
    n = len(samples)
    thresholds = np.geomspace(t_lo, t_hi, n_points)
    exceed = n - np.searchsorted(samples, thresholds, side="right")
    if exceed.min() < min_exceedances:
        raise StatisticsError(
            f"only {int(exceed.min())} exceedances at the highest threshold; "
            f"need {min_exceedances}"
        )
    x = np.log(thresholds)
    y = np.log(exceed / n)
    xbar, ybar = x.mean(), y.mean()
    sxx = np.sum((x - xbar) ** 2)
    slope = float(np.sum((x - xbar) * (y - ybar)) / sxx)
    intercept = float(ybar - slope * xbar)
    resid = y - (intercept + slope * x)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - ybar) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    dof = max(n_points - 2, 1)
    stderr = math.sqrt(ss_res / dof / sxx)
    return TailFit(slope, intercept, r2, stderr, thresholds, exceed / n)


def tail_slope(samples, t_lo: float, t_hi: float, n_points: int = 25) -> float:
    """Least-squares slope of log-survival vs log-threshold."""
    return fit_tail(samples, t_lo, t_hi, n_points).slope
