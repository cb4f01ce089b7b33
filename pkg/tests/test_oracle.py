import math

import numpy as np
import pytest

from dispersive_lamb import FIGURE_ONE, ak_bidirectional, make_relation
from dispersive_lamb.oracle import (
    MAX_PHASE_STEP,
    ResolutionError,
    default_step,
    integral_of_h,
    rk4_bidirectional_mode,
    rk4_harmonic,
    rk4_unidirectional_mode,
    trapezoid_integral_of_h,
)


def test_zero_horizon_returns_initial_state():
    assert rk4_bidirectional_mode(FIGURE_ONE, 3.0, 0.0) == (0.0, 0.0)
    assert rk4_unidirectional_mode(FIGURE_ONE, 3.0, 0.0) == 0j
    assert rk4_harmonic(2.0, (0.7, -0.1), 0.0) == (0.7, -0.1)


def test_harmonic_energy_conserved():
    w = 3.0
    a, v = rk4_harmonic(w, (1.0, 0.0), 10.0)
    assert abs(0.5 * v * v + 0.5 * w * w * a * a - 0.5 * w * w) < 1e-8
    assert a == pytest.approx(math.cos(30.0), abs=1e-9)


def test_resolution_guard():
    with pytest.raises(ResolutionError):
        rk4_bidirectional_mode(FIGURE_ONE, 5000.0, 1.0, dt=1e-4)
    with pytest.raises(ResolutionError):
        rk4_harmonic(2000.0, (1.0, 0.0), 1.0, dt=1e-4)


def test_default_step_meets_guard():
    for w in (0.5, 1e3, 1e4, 6e4):
        dt = default_step(w, FIGURE_ONE)
        assert dt * w <= MAX_PHASE_STEP and dt <= 1e-4


def test_negative_horizon_rejected():
    with pytest.raises(ValueError):
        rk4_bidirectional_mode(FIGURE_ONE, 1.0, -1.0)


def test_zero_mode_is_integral_of_forcing():
    # omega = 0 and h(0) = 0: a' = h/pi, so a is the running integral of h over pi
    value, deriv = rk4_bidirectional_mode(FIGURE_ONE, 0.0, 4.0)
    assert deriv == pytest.approx(-0.5 * math.exp(-0.4) * math.sin(4 * FIGURE_ONE.varsigma) / math.pi, abs=1e-12)
    assert value == pytest.approx(trapezoid_integral_of_h(FIGURE_ONE, 4.0) / math.pi, abs=1e-9)


@pytest.mark.parametrize("t", [0.0, 1.0, 5.0, 40.0])
def test_integral_of_h(t):
    assert integral_of_h(FIGURE_ONE, t) == pytest.approx(trapezoid_integral_of_h(FIGURE_ONE, t), abs=1e-9)


def test_integral_of_h_limit():
    assert integral_of_h(FIGURE_ONE, 1e4) == pytest.approx(-0.49749372, abs=1e-8)


def test_fourth_order_convergence():
    exact = math.cos(3.0 * 7.0)
    e1 = abs(rk4_harmonic(3.0, (1.0, 0.0), 7.0, dt=0.02)[0] - exact)
    e2 = abs(rk4_harmonic(3.0, (1.0, 0.0), 7.0, dt=0.01)[0] - exact)
    assert e1 / e2 >= 8.0


def test_vector_modes_and_times_match_scalar():
    w = np.array([1.0, 2.5, 7.0])
    vals, _ = rk4_bidirectional_mode(FIGURE_ONE, w, [0.5, 2.0])
    assert vals.shape == (2, 3)
    single, _ = rk4_bidirectional_mode(FIGURE_ONE, 2.5, 2.0)
    assert vals[1, 1] == pytest.approx(single, abs=1e-13)


def test_resonant_mode_against_closed_form():
    rel = make_relation("wave")
    value, _ = rk4_bidirectional_mode(FIGURE_ONE, 1.0, 12.0)
    assert value == pytest.approx(ak_bidirectional(FIGURE_ONE, rel, 1, 12.0), abs=1e-9)
