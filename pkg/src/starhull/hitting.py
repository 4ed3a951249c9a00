"""Exact samplers for the ray-hit pair (T, X) and the radial distances.

The hitting place X is drawn by inverting its arctan CDF; conditionally on
X = x the hitting time T is an ordinary level-x first passage time, sampled
as x^2/Z^2 with Z standard normal.  Composing the two gives exact draws from
the joint law, with no path discretization anywhere.  Cauchy draws use
tan(pi*(U - 1/2)); normal draws use numpy's ziggurat; both choices are fixed
for reproducibility.

``path_ray_hit`` is the deliberately naive Euler-walk estimator kept only to
cross-validate the exact samplers; its O(sqrt(dt)) bias is part of what the
tests measure.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError

__all__ = [
    "RayHitSample",
    "sample_hit_place",
    "sample_first_passage",
    "sample_ray_hit",
    "sample_hit_place_halfplane",
    "sample_bm_radial",
    "sample_bb_radial",
    "hit_place_batch",
    "first_passage_batch",
    "ray_hit_batch",
    "halfplane_batch",
    "bm_radial_batch",
    "bb_radial_batch",
    "path_ray_hit",
    "path_ray_hit_batch",
    "write_samples_csv",
]


class RayHitSample(NamedTuple):
    """One draw of (hitting time, hitting abscissa)."""

    t: float
    x: float


def _check_rho(rho: float) -> None:
    if not (math.isfinite(rho) and rho > 0):
        raise DomainError("rho must be finite and > 0")


def _open_uniform(rng: np.random.Generator, n=None):
    """Uniform draws guaranteed inside the open interval (0, 1)."""
    u = rng.random(n)
    if n is None:
        while u == 0.0:
            u = rng.random()
        return u
    zero = u == 0.0
    while np.any(zero):
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    return u


def sample_hit_place(rho: float, rng: np.random.Generator) -> float:
    """Exact draw of the hitting abscissa: x = rho * (1 + tan^2(pi*U/2))."""
    _check_rho(rho)
    u = _open_uniform(rng)
    return rho * (1.0 + math.tan(0.5 * math.pi * u) ** 2)


def hit_place_batch(rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    _check_rho(rho)
    u = _open_uniform(rng, n)
    return rho * (1.0 + np.tan(0.5 * np.pi * u) ** 2)


def sample_first_passage(level: float, rng: np.random.Generator) -> float:
    """First passage time of one-dimensional Brownian motion to ``level``:
    T = level^2 / Z^2."""
    if not (math.isfinite(level) and level > 0):
        raise DomainError("level must be finite and > 0")
    z = rng.standard_normal()
    while z == 0.0:  # probability-zero guard
        z = rng.standard_normal()
    return level * level / (z * z)


def first_passage_batch(level, rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    """Vectorized first-passage draws; ``level`` may be an array."""
    level = np.asarray(level, dtype=float)
    if np.any(level <= 0):
        raise DomainError("level must be > 0")
    size = level.shape if n is None else n
    z = rng.standard_normal(size)
    zero = z == 0.0
    while np.any(zero):
        z[zero] = rng.standard_normal(int(zero.sum()))
        zero = z == 0.0
    return level * level / (z * z)


def sample_ray_hit(rho: float, rng: np.random.Generator) -> RayHitSample:
    """Exact joint draw of (T, X): first the place, then the conditional time."""
    x = sample_hit_place(rho, rng)
    return RayHitSample(sample_first_passage(x, rng), x)


def ray_hit_batch(rho: float, n: int, rng: np.random.Generator):
    """Vectorized exact joint draws; returns (t, x) arrays of length n."""
    x = hit_place_batch(rho, n, rng)
    t = first_passage_batch(x, rng)
    return t, x


def sample_hit_place_halfplane(rho: float, rng: np.random.Generator) -> float:
    """Alternative exact draw of the hitting abscissa through the half-plane
    map z -> z^2 + 1: x = rho * (C^2 + 1) with C standard Cauchy."""
    _check_rho(rho)
    u = rng.random()
    c = math.tan(math.pi * (u - 0.5))
    return rho * (c * c + 1.0)


def halfplane_batch(rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    _check_rho(rho)
    c = np.tan(np.pi * (rng.random(n) - 0.5))
    return rho * (c * c + 1.0)


def sample_bm_radial(rng: np.random.Generator) -> float:
    """Exact draw of the Brownian-motion radial distance, T_1^{-1/2}."""
    t, _ = sample_ray_hit(1.0, rng)
    return 1.0 / math.sqrt(t)


def bm_radial_batch(n: int, rng: np.random.Generator) -> np.ndarray:
    t, _ = ray_hit_batch(1.0, n, rng)
    return 1.0 / np.sqrt(t)


def sample_bb_radial(rng: np.random.Generator) -> float:
    """Exact draw of the bridge radial distance, |Z|/2 (half-normal)."""
    return 0.5 * abs(rng.standard_normal())


def bb_radial_batch(n: int, rng: np.random.Generator) -> np.ndarray:
    return 0.5 * np.abs(rng.standard_normal(n))


def path_ray_hit(
    rho: float, dt: float, t_max: float, rng: np.random.Generator
) -> RayHitSample | None:
    """Naive Euler-walk estimate of one ray hit; ``None`` marks a timeout.

    Walks a discretized planar Brownian motion, looks for steps whose
    y-endpoints straddle zero, interpolates the crossing abscissa linearly,
    and accepts the first crossing at or beyond the ray offset.  Timeouts are
    common by design: the hitting time has tail index 1/4, so callers must
    censor at t_max on both sides of any comparison.
    """
    t, x, hit = path_ray_hit_batch(rho, dt, t_max, 1, rng)
    if not hit[0]:
        return None
    return RayHitSample(float(t[0]), float(x[0]))


def path_ray_hit_batch(
    rho: float,
    dt: float,
    t_max: float,
    n: int,
    rng: np.random.Generator,
    block_steps: int = 512,
):
    """Run ``n`` independent Euler walkers; returns (t, x, hit) arrays.

    Entries of ``t``/``x`` are meaningful only where ``hit`` is True.
    Crossings are rare along a walk, so the interpolation work happens only
    at the straddling steps.
    """
    _check_rho(rho)
    if not (0 < dt < t_max) or not math.isfinite(t_max):
        raise DomainError("need 0 < dt < t_max < inf")
    n_steps = int(math.ceil(t_max / dt))
    sd = math.sqrt(dt)

    t_out = np.full(n, np.nan)
    x_out = np.full(n, np.nan)
    hit = np.zeros(n, dtype=bool)
    active = np.arange(n)
    pos_x = np.zeros(n)
    pos_y = np.zeros(n)
    step_done = 0
    while step_done < n_steps and active.size:
        m = min(block_steps, n_steps - step_done)
        na = active.size
        x = rng.standard_normal((na, m))
        y = rng.standard_normal((na, m))
        x *= sd
        y *= sd
        np.cumsum(x, axis=1, out=x)
        np.cumsum(y, axis=1, out=y)
        x += pos_x[active, None]
        y += pos_y[active, None]
        # straddle test against the previous position, boundary column first
        straddle = np.empty((na, m), dtype=bool)
        straddle[:, 0] = pos_y[active] * y[:, 0] < 0.0
        np.less(y[:, :-1] * y[:, 1:], 0.0, out=straddle[:, 1:])
        rows, cols = np.nonzero(straddle)  # ordered by row, then by step
        if rows.size:
            yp = np.where(cols > 0, y[rows, cols - 1], pos_y[active][rows])
            xp = np.where(cols > 0, x[rows, cols - 1], pos_x[active][rows])
            yn = y[rows, cols]
            xn = x[rows, cols]
            xc = xp - yp * (xn - xp) / (yn - yp)
            ok = xc >= rho
            rows, cols, xc = rows[ok], cols[ok], xc[ok]
            if rows.size:
                first_rows, first_idx = np.unique(rows, return_index=True)
                walkers = active[first_rows]
                # crossing assigned to the end of the straddling step
                t_out[walkers] = (step_done + cols[first_idx] + 1) * dt
                x_out[walkers] = xc[first_idx]
                hit[walkers] = True
                keep = np.ones(na, dtype=bool)
                keep[first_rows] = False
                pos_x[active] = x[:, -1]
                pos_y[active] = y[:, -1]
                active = active[keep]
                step_done += m
                continue
        pos_x[active] = x[:, -1]
        pos_y[active] = y[:, -1]
        step_done += m
    return t_out, x_out, hit


def write_samples_csv(samples, fh, header: str) -> None:
    """Dump samples as CSV at 17 significant digits.

    ``header`` "t,x" writes ray-hit pairs; a single-column header writes one
    value per row.
    """
    fh.write(header + "\n")
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        for v in arr:
            fh.write(f"{v:.17g}\n")
    else:
        for row in arr:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
