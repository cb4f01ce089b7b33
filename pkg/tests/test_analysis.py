import math

import numpy as np
import pytest

from dispersive_lamb import (
    FIGURE_ONE,
    box_counting_dimension,
    convergence_report,
    eval_bidirectional,
    log_singularity_sum,
    make_relation,
    partial_fraction_terms,
    uniform_grid,
)
from dispersive_lamb.analysis import _verdict, box_counts, weierstrass_profile


def test_weierstrass_dimension():
    est = box_counting_dimension(weierstrass_profile())
    assert est.dimension == pytest.approx(1.5, abs=0.1)
    assert len(est.box_counts) == 8
    assert est.scale_range == (2.0**-8, 2.0**-4)


def test_line_has_dimension_one():
    est = box_counting_dimension(np.linspace(0, 1, 4096))
    assert est.dimension == pytest.approx(1.0, abs=0.02)


def test_constant_profile():
    est = box_counting_dimension(np.full(2048, 3.0))
    assert est.dimension == 1.0 and est.flat


def test_box_counts_diagonal():
    u = np.linspace(0, 1, 1025)
    assert box_counts(u, 3) >= 8
    assert box_counts(u, 3) <= 2 * 8


def test_smooth_profile_near_one():
    grid = uniform_grid(8192)
    prof = eval_bidirectional(FIGURE_ONE, make_relation("quadratic"), 1000, 10.0, grid)
    assert box_counting_dimension(prof).dimension <= 1.05


@pytest.mark.parametrize("kwargs", [dict(n_scales=4), dict(drop_fine=4, drop_coarse=3)])
def test_bad_scale_config(kwargs):
    with pytest.raises(ValueError):
        box_counting_dimension(np.sin(np.linspace(0, 9, 4096)), **kwargs)


def test_too_few_samples():
    with pytest.raises(ValueError, match="at least"):
        box_counting_dimension(np.zeros(100))


def test_verdict_rules():
    assert _verdict([1.0, 0.5, 0.2]) == "converging"
    assert _verdict([1.0, 0.99]) == "oscillatory"
    assert _verdict([0.05, 0.05]) == "inconclusive"


def test_convergence_quadratic():
    rep = convergence_report(FIGURE_ONE, make_relation("quadratic"), "bi", 10.0, [500, 1000, 1500])
    assert rep.verdict == "converging"
    assert rep.sup_differences[-1] < 1e-8
    assert len(rep.l2_differences) == 2


def test_convergence_asymptotically_constant():
    rep = convergence_report(FIGURE_ONE, make_relation("regularized_boussinesq"), "bi", 10.0,
                             [500, 1000, 1500])
    assert rep.verdict == "oscillatory"


def test_convergence_rejects_unsorted():
    with pytest.raises(ValueError):
        convergence_report(FIGURE_ONE, make_relation("wave"), "bi", 1.0, [100, 50])
    with pytest.raises(ValueError):
        convergence_report(FIGURE_ONE, make_relation("wave"), "bi", 1.0, [100])


@pytest.mark.parametrize("alpha, k", [(0.7, 3), (2.0, -5), (0.1, 1000)])
def test_partial_fractions_exact(alpha, k):
    terms = partial_fraction_terms(alpha, k)
    assert math.fsum(terms) == pytest.approx(1.0 / (abs(k) + alpha), rel=1e-15)


def test_partial_fraction_singular_inputs():
    with pytest.raises(ValueError):
        partial_fraction_terms(1.0, 0)
    with pytest.raises(ValueError):
        partial_fraction_terms(-2.0, 2)


@pytest.mark.parametrize("x", [0.5, -1.0, 2.5])
def test_log_series(x):
    partial, closed = log_singularity_sum(0.7, x, 200000)
    assert partial == pytest.approx(closed, abs=1e-3)


def test_log_series_rejects_singular_point():
    with pytest.raises(ValueError):
        log_singularity_sum(0.7, 0.0, 10)


@pytest.mark.parametrize("k", [1e3, 1e4, 1e5])
def test_partial_fraction_remainder_is_cubic(k):
    ratio = partial_fraction_terms(0.8, 2 * k)[2] / partial_fraction_terms(0.8, k)[2]
    assert 1 / 9 <= ratio <= 1 / 7
