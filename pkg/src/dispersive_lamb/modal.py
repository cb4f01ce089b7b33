"""Closed-form Fourier coefficients of the periodic Lamb solutions.

Bidirectional coefficients solve ``a'' + omega**2 a = h'(t)/pi`` from rest;
unidirectional ones carry the extra ``1/(2c)`` normalization of the
first-order model.  Every function broadcasts over ``omega``/``k`` and ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DispersionRelation, OscillatorParams

__all__ = [
    "ModalCoefficients",
    "modal_coefficients",
    "a0_bidirectional",
    "ak_bidirectional",
    "a0_unidirectional",
    "modal_unidirectional",
]


@dataclass(frozen=True)
class ModalCoefficients:
    """Amplitude factors ``p, q, r, s`` sharing the denominator ``D``."""

    p: np.ndarray | float
    q: np.ndarray | float
    r: np.ndarray | float
    s: np.ndarray | float
    denominator: np.ndarray | float


def modal_coefficients(params: OscillatorParams, omega) -> ModalCoefficients:
    omega = np.asarray(omega, dtype=float)
    beta, sigma2, vs = params.beta, params.sigma**2, params.varsigma
    w2 = omega * omega
    detune = sigma2 - w2
    # strictly positive for beta > 0: a square plus 4 w^2 beta^2, and sigma^4 at w = 0
    denom = detune * detune + 4.0 * w2 * beta * beta
    p = vs * detune / denom
    q = 2.0 * omega * beta * vs / denom
    r = beta * (sigma2 + w2) / denom
    s = omega * (2.0 * beta * beta - sigma2 + w2) / denom
    if omega.ndim == 0:
        p, q, r, s, denom = (float(v) for v in (p, q, r, s, denom))
    return ModalCoefficients(p, q, r, s, denom)


def _omega(rel, k):
    if isinstance(rel, DispersionRelation):
        return rel.omega(k)
    return rel(k)


def a0_bidirectional(params: OscillatorParams, t):
    """Mean-mode coefficient: ``(1/pi)`` times the integral of ``h`` over ``[0, t]``."""
    t = np.asarray(t, dtype=float)
    beta, vs = params.beta, params.varsigma
    bracket = vs - np.exp(-beta * t) * (vs * np.cos(vs * t) + beta * np.sin(vs * t))
    out = params.amplitude * bracket / (np.pi * (beta * beta + vs * vs))
    return float(out) if out.ndim == 0 else out


def ak_bidirectional(params: OscillatorParams, rel, k, t, *, transient_frequency=None):
    """Coefficient of ``cos(kx)`` for ``k >= 1`` in the bidirectional model.

    ``transient_frequency`` overrides the frequency of the decaying term; it
    exists only so the ``sigma`` misprint can be demonstrated
    (``transient_frequency=params.sigma`` breaks ``a_k'(0) = 0``).
    """
    omega = _omega(rel, k)
    return _bidirectional_from_omega(params, omega, t, transient_frequency)


def _bidirectional_from_omega(params, omega, t, transient_frequency=None):
    t = np.asarray(t, dtype=float)
    mc = modal_coefficients(params, omega)
    f = params.varsigma if transient_frequency is None else transient_frequency
    wt = np.asarray(omega) * t
    decay = np.exp(-params.beta * t)
    bracket = (mc.p * np.cos(wt) + mc.q * np.sin(wt)
               - decay * (mc.p * np.cos(f * t) + mc.r * np.sin(f * t)))
    out = params.amplitude / np.pi * bracket
    return float(out) if np.ndim(out) == 0 else out


def a0_unidirectional(params: OscillatorParams, t):
    t = np.asarray(t, dtype=float)
    beta, vs, c = params.beta, params.varsigma, params.wave_speed
    bracket = vs - np.exp(-beta * t) * (vs * np.cos(vs * t) + beta * np.sin(vs * t))
    out = params.amplitude / (2.0 * c * np.pi * params.sigma**2) * bracket
    return float(out) if out.ndim == 0 else out


def modal_unidirectional(params: OscillatorParams, rel, k, t):
    """Return ``(a_k, b_k)``, the cosine and sine coefficients for ``k >= 1``."""
    omega = _omega(rel, k)
    return _unidirectional_from_omega(params, omega, t)


def _unidirectional_from_omega(params, omega, t):
    t = np.asarray(t, dtype=float)
    mc = modal_coefficients(params, omega)
    vs = params.varsigma
    wt = np.asarray(omega) * t
    cw, sw = np.cos(wt), np.sin(wt)
    decay = np.exp(-params.beta * t)
    cv, sv = np.cos(vs * t), np.sin(vs * t)
    scale = params.amplitude / (2.0 * params.wave_speed * np.pi)
    a = scale * (mc.p * cw + mc.q * sw - decay * (mc.p * cv + mc.r * sv))
    b = scale * (-mc.q * cw + mc.p * sw + decay * (mc.q * cv + mc.s * sv))
    if np.ndim(a) == 0:
        return float(a), float(b)
    return a, b
