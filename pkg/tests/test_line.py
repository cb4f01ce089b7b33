import math
import warnings

import numpy as np
import pytest

from dispersive_lamb import (
    FIGURE_ONE,
    OscillatorParams,
    lamb_line_closed_form,
    line_profile_quadrature,
    make_relation,
    oscillator_displacement,
    to_classical,
)
from dispersive_lamb.line import TruncationWarning

WAVE = make_relation("wave")


def test_closed_form_value():
    u = lamb_line_closed_form(FIGURE_ONE, 10.0, [0.0, 1.0]).u[0]
    assert u == pytest.approx(-0.5 * -math.exp(-1.0) * math.sin(10 * math.sqrt(0.99)), rel=1e-12)
    assert u == pytest.approx(-0.0922083, abs=1e-7)


def test_closed_form_cone_and_symmetry():
    x = np.linspace(-15, 15, 301)
    u = lamb_line_closed_form(FIGURE_ONE, 4.0, x).u
    assert np.all(u[np.abs(x) >= 4.0] == 0.0)
    assert np.allclose(u, u[::-1], atol=1e-15)
    assert np.allclose(u, -oscillator_displacement(FIGURE_ONE, 4.0 - np.abs(x)))


def test_quadrature_matches_closed_form():
    t = 6.0
    x = np.linspace(-10, 10, 201)
    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        res = line_profile_quadrature(FIGURE_ONE, WAVE, "bi", t, x)
    exact = lamb_line_closed_form(FIGURE_ONE, t, x)
    mask = np.abs(np.abs(x) - t) > 0.1
    assert to_classical(res.profile, FIGURE_ONE).sup_distance(exact, mask) < 5e-3
    assert not res.k_max_too_small


def test_classical_factor_applied_once():
    p = OscillatorParams(-0.5, 0.1, 1.0, 2.0)
    x = np.linspace(-8, 8, 81)
    res = line_profile_quadrature(p, make_relation("wave", c=2.0), "bi", 2.0, x)
    classical = to_classical(res.profile, p)
    assert np.allclose(classical.u, -4.0 * res.profile.u)
    with pytest.raises(ValueError):
        to_classical(classical, p)
    with pytest.raises(ValueError):
        to_classical(lamb_line_closed_form(p, 2.0, x), p)


def test_unidirectional_transport_on_line():
    t = 3.0
    x = np.linspace(-6, 6, 121)
    # coefficients decay like 1/k here, so the tail estimate is unbounded
    with pytest.warns(TruncationWarning):
        res = line_profile_quadrature(FIGURE_ONE, WAVE, "uni", t, x)
    expected = np.where(x >= 0, oscillator_displacement(FIGURE_ONE, t - x) / 2.0, 0.0)
    mask = (np.abs(x) > 0.2) & (np.abs(x - t) > 0.2)
    assert np.max(np.abs(res.profile.u - expected)[mask]) < 5e-3


def test_slow_decay_gives_infinite_tail_estimate():
    with pytest.warns(TruncationWarning):
        res = line_profile_quadrature(FIGURE_ONE, make_relation("regularized_boussinesq"),
                                      "bi", 2.0, [0.0, 1.0], n_quad=1024)
    assert math.isinf(res.error_estimate) and res.k_max_too_small


def test_small_cutoff_flagged():
    with pytest.warns(TruncationWarning):
        res = line_profile_quadrature(FIGURE_ONE, WAVE, "bi", 2.0, [0.0, 1.0], k_max=2.0, n_quad=256)
    assert res.error_estimate > 1e-2


def test_zero_time():
    res = line_profile_quadrature(FIGURE_ONE, WAVE, "bi", 0.0, [0.0, 1.0], n_quad=256)
    assert np.all(res.profile.u == 0.0) and res.error_estimate == 0.0


@pytest.mark.parametrize("kwargs", [dict(k_max=0.0), dict(n_quad=10), dict(t=-1.0)])
def test_validation(kwargs):
    args = dict(t=1.0, k_max=10.0, n_quad=128) | kwargs
    with pytest.raises(ValueError):
        line_profile_quadrature(FIGURE_ONE, WAVE, "bi", args["t"], [0.0, 1.0], args["k_max"], args["n_quad"])
