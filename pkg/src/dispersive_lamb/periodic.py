"""Spatial profiles on the periodic domain ``-pi <= x < pi``.

Partial sums are accumulated in ascending wave number at every grid point, so
the result at a point never depends on how the grid is split up.  That is
what makes chunked, threaded evaluation bitwise reproducible.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .core import DispersionRelation, OscillatorParams, oscillator_displacement
from .modal import (
    _bidirectional_from_omega,
    _unidirectional_from_omega,
    a0_bidirectional,
    a0_unidirectional,
)

__all__ = [
    "SolutionProfile",
    "uniform_grid",
    "eval_bidirectional",
    "eval_unidirectional",
    "dalembert_periodic",
]

DEFAULT_GRID_SIZE = 2048


@dataclass(frozen=True)
class SolutionProfile:
    """Sampled profile ``u(t, x)`` plus a record of how it was produced."""

    t: float
    x: np.ndarray
    u: np.ndarray
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        u = np.array(self.u, dtype=float)
        if x.ndim != 1 or x.shape != u.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if x.size < 2:
            raise ValueError("a profile needs at least two samples")
        if not np.all(np.isfinite(u)):
            raise ValueError("profile values must be finite")
        x.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "t", float(self.t))

    def __len__(self):
        return self.x.size

    def scaled(self, factor: float, **provenance) -> "SolutionProfile":
        return SolutionProfile(self.t, self.x, factor * self.u,
                               {**self.provenance, **provenance})

    def sup_distance(self, other: "SolutionProfile", mask=None) -> float:
        if not np.array_equal(self.x, other.x):
            raise ValueError("profiles live on different grids")
        diff = np.abs(self.u - other.u)
        if mask is not None:
            diff = diff[mask]
        return float(diff.max()) if diff.size else 0.0


def uniform_grid(m: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    """``m`` equally spaced points on ``[-pi, pi)``."""
    if m < 2:
        raise ValueError("grid needs at least two points")
    return -np.pi + (2.0 * np.pi / m) * np.arange(m)


def _check_grid(grid) -> np.ndarray:
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("grid must be a 1-d array with at least two points")
    if np.any(np.diff(x) <= 0):
        raise ValueError("grid must be strictly increasing")
    if x[0] < -np.pi or x[-1] >= np.pi:
        raise ValueError("grid points must lie in [-pi, pi)")
    return x


def _check_common(n_modes, t):
    if int(n_modes) != n_modes or n_modes < 1:
        raise ValueError(f"truncation N must be an integer >= 1, got {n_modes!r}")
    if not t >= 0:
        raise ValueError(f"time must be >= 0, got {t!r}")


def _synthesize(x, mean, cos_coef, sin_coef=None):
    u = np.full_like(x, 0.5 * mean)
    for k in range(1, len(cos_coef) + 1):
        kx = k * x
        u += cos_coef[k - 1] * np.cos(kx)
        if sin_coef is not None:
            u += sin_coef[k - 1] * np.sin(kx)
    return u


def _chunked(func, x, n_jobs):
    if n_jobs is None or n_jobs <= 1:
        return func(x)
    parts = np.array_split(x, n_jobs)
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return np.concatenate(list(pool.map(func, parts)))


def _provenance(model, params, rel, n_modes):
    return {
        "model": model,
        "relation": rel.as_dict() if isinstance(rel, DispersionRelation) else repr(rel),
        "truncation": int(n_modes) if n_modes is not None else "closed-form",
        "oscillator": params.as_dict(),
    }


def eval_bidirectional(params: OscillatorParams, rel: DispersionRelation, n_modes: int,
                       t: float, grid=None, *, n_jobs: int | None = None) -> SolutionProfile:
    """Order-``n_modes`` cosine partial sum of the bidirectional solution."""
    _check_common(n_modes, t)
    x = _check_grid(uniform_grid() if grid is None else grid)
    k = np.arange(1, int(n_modes) + 1, dtype=float)
    coef = _bidirectional_from_omega(params, rel.omega(k), t)
    mean = a0_bidirectional(params, t)
    u = _chunked(lambda part: _synthesize(part, mean, coef), x, n_jobs)
    return SolutionProfile(t, x, u, _provenance("bidirectional", params, rel, n_modes))


def eval_unidirectional(params: OscillatorParams, rel: DispersionRelation, n_modes: int,
                        t: float, grid=None, *, n_jobs: int | None = None) -> SolutionProfile:
    """Order-``n_modes`` partial sum with both cosine and sine terms."""
    _check_common(n_modes, t)
    x = _check_grid(uniform_grid() if grid is None else grid)
    k = np.arange(1, int(n_modes) + 1, dtype=float)
    a, b = _unidirectional_from_omega(params, rel.omega(k), t)
    mean = a0_unidirectional(params, t)
    u = _chunked(lambda part: _synthesize(part, mean, a, b), x, n_jobs)
    return SolutionProfile(t, x, u, _provenance("unidirectional", params, rel, n_modes))


def dalembert_periodic(params: OscillatorParams, t: float, grid=None) -> SolutionProfile:
    """Image-sum solution of the classical periodic Lamb problem.

    Uses the original forcing ``-2c h'(t) delta(x)``, so it equals ``-2c`` times
    the cosine series built with the dispersive normalization.
    """
    if not t >= 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    x = _check_grid(uniform_grid() if grid is None else grid)
    c = params.wave_speed
    n_max = int(math.ceil((c * t + np.pi) / (2.0 * np.pi))) + 1
    u = np.zeros_like(x)
    for n in range(-n_max, n_max + 1):
        u -= oscillator_displacement(params, t - np.abs(x - 2.0 * n * np.pi) / c)
    prov = {"model": "bidirectional", "relation": {"name": "wave", "params": {"c": c}},
            "truncation": "closed-form", "oscillator": params.as_dict(),
            "normalization": "classical"}
    return SolutionProfile(t, x, u, prov)
