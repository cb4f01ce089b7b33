"""Independent numerical integrators for the modal equations.

Nothing here imports the closed-form coefficient code: the forcing is rebuilt
from the oscillator parameters and the mode equations are integrated with
classical fourth-order Runge-Kutta, so a transcription error in the closed
forms cannot validate itself.
"""

from __future__ import annotations

import math

import numpy as np

from .core import OscillatorParams

__all__ = [
    "ResolutionError",
    "default_step",
    "rk4_bidirectional_mode",
    "rk4_unidirectional_mode",
    "rk4_harmonic",
    "integral_of_h",
    "trapezoid_integral_of_h",
]

MAX_PHASE_STEP = 0.1


class ResolutionError(ValueError):
    """Step too coarse for the fastest frequency in the system."""


def default_step(omega, params: OscillatorParams | None = None) -> float:
    """``1e-4``, halved until ``dt * max(omega, sigma)`` is within the resolution guard."""
    fastest = float(np.max(np.abs(omega))) if np.size(omega) else 0.0
    if params is not None:
        fastest = max(fastest, params.sigma)
    if fastest * 1e-4 <= MAX_PHASE_STEP:
        return 1e-4
    # power-of-two refinement keeps step classes shared between nearby modes
    return 1e-4 / 2.0 ** math.ceil(math.log2(fastest * 1e-4 / MAX_PHASE_STEP))


def _check_step(dt, omega, params):
    if not dt > 0:
        raise ValueError("dt must be positive")
    fastest = max(float(np.max(np.abs(omega))), params.sigma)
    if dt * fastest > MAX_PHASE_STEP:
        raise ResolutionError(
            f"dt={dt:g} under-resolves frequency {fastest:g} (dt*omega must be <= {MAX_PHASE_STEP})"
        )


def _forcing(params):
    amp, beta, vs = params.amplitude, params.beta, params.varsigma

    def h(t):
        return amp * math.exp(-beta * t) * math.sin(vs * t)

    def dh(t):
        return amp * math.exp(-beta * t) * (vs * math.cos(vs * t) - beta * math.sin(vs * t))

    return h, dh


def _rk4(rhs, y0, times, dt):
    """Integrate ``y' = rhs(t, y)`` from ``t = 0`` and sample at ``times``.

    The step is shortened slightly on each leg so output times are hit exactly.
    """
    y = np.array(y0, dtype=float)
    out = []
    t_prev = 0.0
    for t_target in times:
        if t_target < t_prev:
            raise ValueError("output times must be nondecreasing and >= 0")
        n = int(math.ceil((t_target - t_prev) / dt - 1e-9))
        if n > 0:
            h = (t_target - t_prev) / n
            half = 0.5 * h
            for i in range(n):
                t = t_prev + i * h
                k1 = rhs(t, y)
                k2 = rhs(t + half, y + half * k1)
                k3 = rhs(t + half, y + half * k2)
                k4 = rhs(t + h, y + h * k3)
                y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        out.append(y.copy())
        t_prev = t_target
    return out


def _times(t_end):
    scalar = np.ndim(t_end) == 0
    times = [float(t_end)] if scalar else [float(v) for v in t_end]
    if any(t < 0 for t in times):
        raise ValueError("t_end must be >= 0")
    return scalar, times


def rk4_bidirectional_mode(params: OscillatorParams, omega, t_end, dt=None):
    """Integrate ``a'' + omega**2 a = h'(t)/pi`` from rest.

    ``omega`` may be an array (modes integrate side by side) and ``t_end`` a
    sequence of output times.  Returns ``(value, derivative)``.
    """
    omega = np.asarray(omega, dtype=float)
    dt = default_step(omega, params) if dt is None else dt
    _check_step(dt, omega, params)
    _, dh = _forcing(params)
    w2 = omega * omega

    def rhs(t, y):
        out = np.empty_like(y)
        out[0] = y[1]
        out[1] = dh(t) / math.pi - w2 * y[0]
        return out

    scalar, times = _times(t_end)
    zero = np.zeros_like(omega)
    states = _rk4(rhs, [zero, zero], times, dt)
    value = np.array([s[0] for s in states])
    deriv = np.array([s[1] for s in states])
    if scalar:
        value, deriv = value[0], deriv[0]
    if np.ndim(value) == 0:
        return float(value), float(deriv)
    return value, deriv


def rk4_harmonic(omega, y0, t_end, dt=1e-4):
    """Unforced ``a'' + omega**2 a = 0`` from ``y0 = (a, a')``; returns the final state."""
    omega = float(omega)
    if dt * omega > MAX_PHASE_STEP:
        raise ResolutionError(f"dt={dt:g} under-resolves frequency {omega:g}")
    w2 = omega * omega
    (state,) = _rk4(lambda t, y: np.array([y[1], -w2 * y[0]]), [y0[0], y0[1]], [t_end], dt)
    return float(state[0]), float(state[1])


def rk4_unidirectional_mode(params: OscillatorParams, omega, t_end, dt=None):
    """Integrate the complex mode equation ``c' + i omega c = h(t)/(2 pi)`` from 0.

    The real pair ``(Re c, Im c)`` is stepped; the result is returned as a
    complex number (or array).  The unidirectional Fourier coefficients are
    ``a_k = Re(c) / c_wave`` and ``b_k = -Im(c) / c_wave``.
    """
    omega = np.asarray(omega, dtype=float)
    dt = default_step(omega, params) if dt is None else dt
    _check_step(dt, omega, params)
    h, _ = _forcing(params)

    def rhs(t, y):
        out = np.empty_like(y)
        out[0] = omega * y[1] + h(t) / (2.0 * math.pi)
        out[1] = -omega * y[0]
        return out

    scalar, times = _times(t_end)
    zero = np.zeros_like(omega)
    states = _rk4(rhs, [zero, zero], times, dt)
    out = np.array([s[0] + 1j * s[1] for s in states])
    if scalar:
        out = out[0]
    return complex(out) if np.ndim(out) == 0 else out


def integral_of_h(params: OscillatorParams, t) -> float:
    """Closed form of the integral of ``C exp(-beta s) sin(varsigma s)`` over ``[0, t]``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    beta, vs = params.beta, params.varsigma
    bracket = vs - math.exp(-beta * t) * (vs * math.cos(vs * t) + beta * math.sin(vs * t))
    return params.amplitude * bracket / params.sigma**2


def trapezoid_integral_of_h(params: OscillatorParams, t, dt=1e-4) -> float:
    """Composite trapezoid estimate of the same integral."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0
    n = max(1, int(math.ceil(t / dt)))
    s = np.linspace(0.0, t, n + 1)
    h = params.amplitude * np.exp(-params.beta * s) * np.sin(params.varsigma * s)
    return float(np.trapezoid(h, s))
