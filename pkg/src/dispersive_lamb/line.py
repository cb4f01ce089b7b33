"""Lamb problem on the whole line.

``lamb_line_closed_form`` is Lamb's classical solution (original forcing
``-2c h'(t) delta``).  ``line_profile_quadrature`` evaluates the inverse
Fourier integral of the modal solution (dispersive forcing ``h'(t) delta``)
with a composite midpoint rule; multiply it by :func:`classical_prefactor`
to compare with the closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import (
    DispersionRelation,
    OscillatorParams,
    classical_prefactor,
    classify_regularity,
    normalize_model,
)
from .modal import _bidirectional_from_omega, _unidirectional_from_omega, modal_coefficients
from .periodic import SolutionProfile

__all__ = [
    "LineQuadratureResult",
    "TruncationWarning",
    "lamb_line_closed_form",
    "line_profile_quadrature",
    "to_classical",
]

DEFAULT_K_MAX = 400.0
DEFAULT_N_QUAD = 2**15
TAIL_FLAG = 1e-2
_BLOCK = 512


class TruncationWarning(UserWarning):
    """The estimated tail beyond ``k_max`` is larger than ``TAIL_FLAG``."""


@dataclass(frozen=True)
class LineQuadratureResult:
    profile: SolutionProfile
    error_estimate: float
    k_max_too_small: bool


def lamb_line_closed_form(params: OscillatorParams, t: float, grid) -> SolutionProfile:
    """``-C exp(-(ct-|x|)/(2b)) sin(kappa (ct-|x|))`` inside the light cone, zero outside."""
    if not t >= 0:
        raise ValueError("t must be >= 0")
    x = np.asarray(grid, dtype=float)
    lag = params.wave_speed * t - np.abs(x)
    inside = lag > 0
    lag = np.where(inside, lag, 0.0)
    u = -params.amplitude * np.exp(-lag / (2.0 * params.lamb_b)) * np.sin(params.lamb_kappa * lag)
    u = np.where(inside, u, 0.0)
    prov = {"model": "bidirectional", "relation": {"name": "wave", "params": {"c": params.wave_speed}},
            "truncation": "closed-form", "oscillator": params.as_dict(),
            "normalization": "classical", "domain": "line"}
    return SolutionProfile(t, x, u, prov)


def to_classical(profile: SolutionProfile, params: OscillatorParams) -> SolutionProfile:
    """Rescale a dispersive-normalized profile to the classical forcing (factor ``-2c``)."""
    if profile.provenance.get("normalization") == "classical":
        raise ValueError("profile is already in the classical normalization")
    return profile.scaled(classical_prefactor(params), normalization="classical")


def _envelope(params, omega, t, model):
    # bound on |integrand| at the cutoff, ignoring the oscillating phase
    mc = modal_coefficients(params, omega)
    decay = math.exp(-params.beta * t)
    steady = math.hypot(mc.p, mc.q)
    if model == "bidirectional":
        transient = decay * math.hypot(mc.p, mc.r)
        return 0.5 * abs(params.amplitude) / math.pi * (steady + transient)
    transient = decay * (math.hypot(mc.p, mc.r) + math.hypot(mc.q, mc.s))
    scale = abs(params.amplitude) / (2.0 * params.wave_speed * math.pi)
    return 0.5 * scale * (2.0 * steady + transient)


def line_profile_quadrature(params: OscillatorParams, rel: DispersionRelation, model: str,
                            t: float, grid, k_max: float = DEFAULT_K_MAX,
                            n_quad: int = DEFAULT_N_QUAD) -> LineQuadratureResult:
    """Inverse Fourier integral of the modal solution on ``[-k_max, k_max]``.

    Bidirectional: ``u = 1/2 * int a(|k|, t) cos(kx) dk``.  Unidirectional (odd
    extension of ``omega``): ``v = int_0^inf [a(k,t) cos kx + b(k,t) sin kx] dk``.
    Panels are summed in ascending order at every grid point.

    The error estimate is the tail integral of a power-law envelope fitted
    at ``k_max``; it is infinite when the coefficients decay no faster than
    ``1/|k|``.
    """
    model = normalize_model(model)
    if not t >= 0:
        raise ValueError("t must be >= 0")
    if not k_max > 0:
        raise ValueError("k_max must be positive")
    if int(n_quad) != n_quad or n_quad < 64:
        raise ValueError("n_quad must be an integer >= 64")
    n_quad = int(n_quad)
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1:
        raise ValueError("grid must be one-dimensional")

    step = 2.0 * k_max / n_quad
    k = -k_max + step * (np.arange(n_quad) + 0.5)
    kabs = np.abs(k)
    omega = rel.omega(kabs)
    if model == "bidirectional":
        cos_w = 0.5 * _bidirectional_from_omega(params, omega, t)
        sin_w = None
    else:
        a, b = _unidirectional_from_omega(params, omega, t)
        cos_w = 0.5 * a
        sin_w = 0.5 * np.sign(k) * b
    if not (np.all(np.isfinite(cos_w)) and (sin_w is None or np.all(np.isfinite(sin_w)))):
        raise FloatingPointError("non-finite quadrature integrand")

    u = np.zeros_like(x)
    for start in range(0, n_quad, _BLOCK):
        stop = min(start + _BLOCK, n_quad)
        phase = np.outer(k[start:stop], x)
        terms = cos_w[start:stop, None] * np.cos(phase)
        if sin_w is not None:
            terms += sin_w[start:stop, None] * np.sin(phase)
        for row in terms:
            u += row
    u *= step

    decay = classify_regularity(rel, model).decay_exponent
    if t == 0:
        err = 0.0
    elif decay <= 1.0:
        err = math.inf
    else:
        err = 2.0 * _envelope(params, rel.omega(k_max), t, model) * k_max / (decay - 1.0)
    flagged = err > TAIL_FLAG
    if flagged:
        warnings.warn(f"tail beyond k_max={k_max:g} estimated at {err:.3g}", TruncationWarning,
                      stacklevel=2)

    prov = {"model": model, "relation": rel.as_dict(), "truncation": {"k_max": k_max, "n_quad": n_quad},
            "oscillator": params.as_dict(), "domain": "line", "normalization": "dispersive"}
    return LineQuadratureResult(SolutionProfile(t, x, u, prov), err, flagged)
