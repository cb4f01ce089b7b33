import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from dispersive_lamb import (
    FIGURE_ONE,
    BoxCountingDimension,
    LineLambSolver,
    PeriodicLambSolver,
    box_counting_dimension,
    eval_bidirectional,
    eval_unidirectional,
    line_profile_quadrature,
    make_relation,
    uniform_grid,
)
from dispersive_lamb.analysis import weierstrass_profile
from dispersive_lamb.estimators import check_positions


def test_get_params_and_clone():
    est = PeriodicLambSolver(dispersion="sqrt_abs_k", n_modes=50, t=3.0)
    params = est.get_params()
    assert params["dispersion"] == "sqrt_abs_k" and params["n_modes"] == 50
    twin = clone(est)
    assert twin.get_params() == params and not hasattr(twin, "coef_")
    twin.set_params(t=4.0)
    assert twin.t == 4.0 and est.t == 3.0


@pytest.mark.parametrize("model, func", [("bi", eval_bidirectional), ("uni", eval_unidirectional)])
def test_periodic_matches_functional_api(model, func):
    grid = uniform_grid(512)
    est = PeriodicLambSolver(dispersion="water_wave", model=model, n_modes=200, t=7.0).fit()
    ref = func(FIGURE_ONE, make_relation("water_wave"), 200, 7.0, grid)
    assert np.array_equal(est.predict(grid), ref.u)
    assert np.array_equal(est.profile(grid).u, ref.u)


def test_periodic_regularity_attribute():
    est = PeriodicLambSolver(dispersion="sqrt_abs_k").fit()
    assert est.regularity_.regime == "fractal-candidate"


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        PeriodicLambSolver().predict([0.0])


def test_invalid_hyperparameters_caught_in_fit():
    est = PeriodicLambSolver(n_modes=0)
    with pytest.raises(ValueError):
        est.fit()
    with pytest.raises(ValueError):
        PeriodicLambSolver(beta=2.0).fit()
    with pytest.raises(ValueError):
        PeriodicLambSolver(dispersion="nope").fit()


def test_relation_wave_speed_follows_oscillator():
    est = PeriodicLambSolver(wave_speed=2.0).fit()
    assert est.relation_.params["c"] == 2.0


def test_line_solver_matches_functional_api():
    x = np.linspace(-5, 5, 41)
    est = LineLambSolver(t=2.0, n_quad=2048).fit()
    ref = line_profile_quadrature(FIGURE_ONE, make_relation("wave"), "bi", 2.0, x, n_quad=2048)
    assert np.array_equal(est.predict(x.reshape(-1, 1)), ref.profile.u)
    assert est.error_estimate_ == ref.error_estimate


def test_check_positions():
    assert check_positions([[1.0], [2.0]]).shape == (2,)
    with pytest.raises(ValueError):
        check_positions([[1.0, 2.0]])
    with pytest.raises(ValueError):
        check_positions([np.nan])


def test_box_counting_estimator():
    prof = weierstrass_profile()
    est = BoxCountingDimension().fit(prof)
    assert est.dimension_ == box_counting_dimension(prof).dimension
    assert BoxCountingDimension().fit_predict(prof.u) == pytest.approx(est.dimension_)
    assert clone(est).get_params()["n_scales"] == 8
