"""Fractal-dimension estimation, partial-sum convergence and the log-singular series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DispersionRelation, OscillatorParams, normalize_model
from .periodic import SolutionProfile, eval_bidirectional, eval_unidirectional

__all__ = [
    "FractalEstimate",
    "ConvergenceReport",
    "box_counting_dimension",
    "box_counts",
    "convergence_report",
    "log_singularity_sum",
    "partial_fraction_terms",
    "weierstrass_profile",
]

FINEST_LEVEL = 10
MIN_SAMPLES = 1024
OSCILLATORY_SUP = 0.1
# a gap must fall below this fraction of the previous one to count as shrinking
SHRINK_FACTOR = 0.95


@dataclass(frozen=True)
class FractalEstimate:
    """Box-counting estimate.  ``levels`` are dyadic: box side ``2**-level``."""

    dimension: float
    scale_range: tuple[float, float]
    fit_residual: float
    box_counts: dict[float, int]
    levels: tuple[int, ...] = ()
    flat: bool = False

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "scale_range": list(self.scale_range),
            "fit_residual": self.fit_residual,
            "box_counts": {repr(k): v for k, v in self.box_counts.items()},
            "flat": self.flat,
        }


def _values(profile):
    if isinstance(profile, SolutionProfile):
        return profile.x, profile.u
    u = np.asarray(profile, dtype=float)
    return np.linspace(0.0, 1.0, u.size), u


def box_counts(u, level: int) -> int:
    """Boxes of side ``2**-level`` met by the piecewise-linear graph of ``u``.

    ``u`` must already be normalized to ``[0, 1]`` on an implicitly uniform
    grid over ``[0, 1]``.  Each box column is charged the vertical range of
    the segments crossing it, including the interpolated values at the
    column edges.
    """
    n_cols = 2**level
    m = u.size
    s = np.linspace(0.0, 1.0, m)
    edges = np.linspace(0.0, 1.0, n_cols + 1)
    edge_vals = np.interp(edges, s, u)
    col = np.minimum((s * n_cols).astype(np.int64), n_cols - 1)
    lo = np.minimum(edge_vals[:-1], edge_vals[1:])
    hi = np.maximum(edge_vals[:-1], edge_vals[1:])
    np.minimum.at(lo, col, u)
    np.maximum.at(hi, col, u)
    top = np.minimum(np.floor(hi * n_cols), n_cols - 1)
    bottom = np.minimum(np.floor(lo * n_cols), n_cols - 1)
    return int(np.sum(top - bottom + 1))


def box_counting_dimension(profile, n_scales: int = 8, finest_level: int = FINEST_LEVEL,
                           drop_fine: int = 2, drop_coarse: int = 1) -> FractalEstimate:
    """Box-counting dimension of a sampled graph.

    The graph is mapped to the unit square and covered at dyadic box sizes
    ``2**-(finest_level - n_scales + 1)`` through ``2**-finest_level``.  The
    slope of ``log N`` against ``log(1/size)`` is fitted over the middle
    band, dropping the ``drop_fine`` finest and ``drop_coarse`` coarsest
    scales.  A constant profile has dimension 1 and ``flat=True``.
    """
    x, u = _values(profile)
    if u.size < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {u.size}")
    if n_scales < 5:
        raise ValueError("n_scales must be >= 5")
    if n_scales - drop_fine - drop_coarse < 2:
        raise ValueError("fewer than two scales left to fit")
    dx = np.diff(x)
    if not np.allclose(dx, dx[0], rtol=1e-9, atol=0.0):
        raise ValueError("box counting needs a uniform grid")

    levels = tuple(range(finest_level - n_scales + 1, finest_level + 1))
    sizes = [2.0**-lv for lv in levels]
    extent = float(u.max() - u.min())
    if extent == 0.0:
        counts = {size: 2**lv for size, lv in zip(sizes, levels)}
        return FractalEstimate(1.0, (sizes[-1], sizes[0]), 0.0, counts, levels, flat=True)

    unit = (u - u.min()) / extent
    counts = {size: box_counts(unit, lv) for size, lv in zip(sizes, levels)}

    fit = slice(drop_coarse, n_scales - drop_fine)
    log_inv = np.log(1.0 / np.array(sizes))[fit]
    log_n = np.log(np.array([counts[s] for s in sizes], dtype=float))[fit]
    coef, residual, *_ = np.polyfit(log_inv, log_n, 1, full=True)
    res = float(residual[0]) if residual.size else 0.0
    used = np.array(sizes)[fit]
    return FractalEstimate(float(coef[0]), (float(used.min()), float(used.max())), res,
                           counts, levels)


def weierstrass_profile(n_points: int = 2**16, n_terms: int = 12, hurst: float = 0.5):
    """``sum_j 2**(-j*H) cos(2**j x)`` on ``[-pi, pi)``; box dimension ``2 - H``."""
    x = -np.pi + 2.0 * np.pi * np.arange(n_points) / n_points
    u = np.zeros_like(x)
    for j in range(1, n_terms + 1):
        u += 2.0 ** (-j * hurst) * np.cos(2.0**j * x)
    return SolutionProfile(0.0, x, u, {"model": "weierstrass", "hurst": hurst, "terms": n_terms})


@dataclass(frozen=True)
class ConvergenceReport:
    truncations: tuple[int, ...]
    sup_differences: tuple[float, ...]
    l2_differences: tuple[float, ...]
    verdict: str
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "truncations": list(self.truncations),
            "sup_differences": list(self.sup_differences),
            "l2_differences": list(self.l2_differences),
            "verdict": self.verdict,
            **self.meta,
        }


def _verdict(sup):
    shrinking = len(sup) > 1 and all(b < SHRINK_FACTOR * a for a, b in zip(sup, sup[1:]))
    if shrinking:
        return "converging"
    if sup[-1] > OSCILLATORY_SUP:
        return "oscillatory"
    return "inconclusive"


def convergence_report(params: OscillatorParams, rel: DispersionRelation, model: str, t: float,
                       truncations, grid=None) -> ConvergenceReport:
    """Compare partial sums at increasing truncation orders.

    Verdict: ``converging`` when the sup-norm gaps between consecutive orders
    shrink monotonically (each below 95% of the one before); ``oscillatory``
    when they do not and the last one exceeds 0.1; ``inconclusive`` otherwise.
    """
    model = normalize_model(model)
    orders = [int(n) for n in truncations]
    if len(orders) < 2:
        raise ValueError("need at least two truncation orders")
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("truncation orders must be strictly ascending")
    evaluate = eval_bidirectional if model == "bidirectional" else eval_unidirectional
    profiles = [evaluate(params, rel, n, t, grid) for n in orders]
    sup, l2 = [], []
    for prev, cur in zip(profiles, profiles[1:]):
        diff = cur.u - prev.u
        sup.append(float(np.max(np.abs(diff))))
        # RMS over the period, i.e. the L2 norm normalized by the domain length
        l2.append(float(np.sqrt(np.mean(diff * diff))))
    meta = {"model": model, "relation": rel.as_dict(), "t": float(t)}
    return ConvergenceReport(tuple(orders), tuple(sup), tuple(l2), _verdict(sup), meta)


def log_singularity_sum(alpha: float, x: float, n_terms: int):
    """Partial sum of ``sum_{k != 0} (1/|k| - alpha/k**2) e^{ikx}`` and its closed form.

    Returns ``(partial_sum, closed_form)``; the closed form is
    ``-2 log|2 sin(x/2)| - alpha (x**2/2 - pi |x| + pi**2/3)``.
    """
    if not -np.pi <= x <= np.pi:
        raise ValueError("x must lie in [-pi, pi]")
    if x == 0:
        raise ValueError("the series has a logarithmic singularity at x = 0")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    k = np.arange(1, int(n_terms) + 1, dtype=float)
    terms = (1.0 / k - alpha / (k * k)) * np.cos(k * x)
    partial = 2.0 * float(np.sum(terms))
    ax = abs(x)
    closed = -2.0 * math.log(abs(2.0 * math.sin(0.5 * x))) - alpha * (
        0.5 * x * x - math.pi * ax + math.pi**2 / 3.0)
    return partial, closed


def partial_fraction_terms(alpha: float, k: float):
    """Split ``1/(|k| + alpha)`` as ``1/|k| - alpha/k**2 + alpha**2/(k**2 (|k| + alpha))``."""
    if k == 0:
        raise ValueError("k must be nonzero")
    ak = abs(k)
    if ak + alpha == 0:
        raise ValueError("|k| + alpha must be nonzero")
    k2 = ak * ak
    return 1.0 / ak, -alpha / k2, alpha * alpha / (k2 * (ak + alpha))
