"""Discretized planar Brownian motion, Brownian bridge, and simple random walk.

All generators take an explicit ``numpy.random.Generator`` stream handle and
are pure given that handle; replicated experiments derive one substream per
replica (see :mod:`starhull.rng`), so results never depend on scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import PlanarPath

__all__ = [
    "PathSpec",
    "sample_bm",
    "sample_bridge",
    "sample_srw",
    "sample_path",
    "rotate",
    "downsample",
    "path_times",
    "write_path_csv",
]

_PROCESSES = ("bm", "bb", "srw")


@dataclass(frozen=True)
class PathSpec:
    """What to generate: process, number of steps, time horizon, master seed."""

    process: str
    n_steps: int
    horizon: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.process not in _PROCESSES:
            raise DomainError(f"process must be one of {_PROCESSES}")
        if self.n_steps < 1:
            raise DomainError("n_steps must be >= 1")
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise DomainError("horizon must be > 0")


def sample_bm(spec: PathSpec, rng: np.random.Generator) -> PlanarPath:
    """Brownian path from the origin: i.i.d. centered Gaussian increments with
    per-coordinate variance horizon/n_steps."""
    if spec.process != "bm":
        raise DomainError("spec.process must be 'bm'")
    scale = math.sqrt(spec.horizon / spec.n_steps)
    steps = rng.standard_normal((spec.n_steps, 2)) * scale
    vertices = np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])
    return PlanarPath(vertices)


def sample_bridge(spec: PathSpec, rng: np.random.Generator) -> PlanarPath:
    """Brownian bridge from the origin back to the origin on a uniform grid.

    Built as B_t = W_t - t*W_1, which has the exact bridge law at the grid
    times and is numerically clean at both endpoints.
    """
    if spec.process != "bb":
        raise DomainError("spec.process must be 'bb'")
    if spec.horizon != 1.0:
        raise DomainError("the bridge has duration 1; horizon must be 1")
    w = sample_bm(PathSpec("bm", spec.n_steps, 1.0, spec.seed), rng).vertices
    t = np.linspace(0.0, 1.0, spec.n_steps + 1)[:, None]
    return PlanarPath(w - t * w[-1], closed=True)


def sample_srw(spec: PathSpec, rng: np.random.Generator) -> PlanarPath:
    """Simple random walk on the integer lattice: unit steps uniform over
    {east, west, north, south}."""
    if spec.process != "srw":
        raise DomainError("spec.process must be 'srw'")
    directions = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=np.int64)
    steps = directions[rng.integers(0, 4, spec.n_steps)]
    vertices = np.vstack([np.zeros((1, 2), dtype=np.int64), np.cumsum(steps, axis=0)])
    return PlanarPath(vertices)


_SAMPLERS = {"bm": sample_bm, "bb": sample_bridge, "srw": sample_srw}


def sample_path(spec: PathSpec, rng: np.random.Generator) -> PlanarPath:
    """Dispatch on ``spec.process``."""
    return _SAMPLERS[spec.process](spec, rng)


def rotate(path: PlanarPath, theta: float) -> PlanarPath:
    """Rotate every vertex counterclockwise by ``theta`` about the origin."""
    if not math.isfinite(theta):
        raise DomainError("theta must be finite")
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    return PlanarPath(np.asarray(path.vertices, dtype=float) @ rot.T, closed=path.closed)


def downsample(path: PlanarPath, factor: int) -> PlanarPath:
    """Keep every ``factor``-th vertex (endpoints included).

    For a Brownian path on a uniform grid this is an exact coarsening: the
    result is a Brownian path on the coarser grid, nested in the original.
    """
    if factor < 1 or (path.n_vertices - 1) % factor != 0:
        raise DomainError("factor must divide the number of steps")
    return PlanarPath(path.vertices[::factor], closed=path.closed)


def path_times(spec: PathSpec) -> np.ndarray:
    """Grid times of a generated path: i * horizon / n_steps."""
    return np.linspace(0.0, spec.horizon, spec.n_steps + 1)


def write_path_csv(path: PlanarPath, times: np.ndarray, fh) -> None:
    """Dump a path as ``t,x,y`` rows at 17 significant digits."""
    fh.write("t,x,y\n")
    for t, (x, y) in zip(times, np.asarray(path.vertices, dtype=float)):
        fh.write(f"{t:.17g},{x:.17g},{y:.17g}\n")
