"""Scikit-learn style wrappers around the solvers and the dimension estimator.

Hyperparameters live in ``__init__`` and are only validated in ``fit``, as
scikit-learn expects, so the objects work with ``clone``, ``get_params`` and
``set_params``.  ``X`` is always a set of spatial positions (a 1-d array or a
single-column 2-d array); ``predict`` returns the displacement there.

>>> solver = PeriodicLambSolver(dispersion="sqrt_abs_k", t=30.0).fit()
>>> u = solver.predict(np.linspace(-np.pi, np.pi, 5, endpoint=False))
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import box_counting_dimension
from .core import CATALOG, OscillatorParams, classify_regularity, make_relation, normalize_model
from .line import DEFAULT_K_MAX, DEFAULT_N_QUAD, line_profile_quadrature
from .modal import (
    _bidirectional_from_omega,
    _unidirectional_from_omega,
    a0_bidirectional,
    a0_unidirectional,
)
from .periodic import SolutionProfile, _chunked, _synthesize, uniform_grid

__all__ = ["PeriodicLambSolver", "LineLambSolver", "BoxCountingDimension", "check_positions"]


def check_positions(X) -> np.ndarray:
    """Flatten ``X`` to a 1-d float array of finite positions."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"X must have a single column of positions, got shape {X.shape}")
        X = X[:, 0]
    return check_array(X, ensure_2d=False, dtype=float, ensure_min_samples=1)


class _OscillatorMixin:
    def _build(self):
        self.oscillator_ = OscillatorParams(self.amplitude, self.beta, self.sigma, self.wave_speed)
        if self.dispersion not in CATALOG:
            raise ValueError(f"unknown dispersion {self.dispersion!r}")
        params = dict(self.dispersion_params or {})
        if "c" in CATALOG[self.dispersion].defaults and "c" not in params:
            params["c"] = self.wave_speed
        self.relation_ = make_relation(self.dispersion, **params)
        self.model_ = normalize_model(self.model)
        self.regularity_ = classify_regularity(self.relation_, self.model_)
        if not self.t >= 0:
            raise ValueError(f"t must be >= 0, got {self.t!r}")


class PeriodicLambSolver(_OscillatorMixin, BaseEstimator):
    """Partial-sum solution of the periodic Lamb problem at time ``t``.

    ``fit`` takes no data: it validates the hyperparameters and evaluates the
    Fourier coefficients once, leaving them in ``coef_`` (cosine),
    ``sin_coef_`` (unidirectional only) and ``mean_``.
    """

    def __init__(self, dispersion="wave", dispersion_params=None, model="bi", n_modes=1000, t=1.0,
                 amplitude=-0.5, beta=0.1, sigma=1.0, wave_speed=1.0, n_jobs=None):
        self.dispersion = dispersion
        self.dispersion_params = dispersion_params
        self.model = model
        self.n_modes = n_modes
        self.t = t
        self.amplitude = amplitude
        self.beta = beta
        self.sigma = sigma
        self.wave_speed = wave_speed
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        self._build()
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ValueError(f"n_modes must be a positive integer, got {self.n_modes!r}")
        k = np.arange(1, int(self.n_modes) + 1, dtype=float)
        omega = self.relation_.omega(k)
        if self.model_ == "bidirectional":
            self.coef_ = _bidirectional_from_omega(self.oscillator_, omega, self.t)
            self.sin_coef_ = None
            self.mean_ = a0_bidirectional(self.oscillator_, self.t)
        else:
            self.coef_, self.sin_coef_ = _unidirectional_from_omega(self.oscillator_, omega, self.t)
            self.mean_ = a0_unidirectional(self.oscillator_, self.t)
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        x = check_positions(X)
        return _chunked(lambda part: _synthesize(part, self.mean_, self.coef_, self.sin_coef_),
                        x, self.n_jobs)

    def profile(self, X=None) -> SolutionProfile:
        x = uniform_grid() if X is None else check_positions(X)
        prov = {"model": self.model_, "relation": self.relation_.as_dict(),
                "truncation": int(self.n_modes), "oscillator": self.oscillator_.as_dict()}
        return SolutionProfile(self.t, x, self.predict(x), prov)


class LineLambSolver(_OscillatorMixin, BaseEstimator):
    """Full-line solution at time ``t`` by midpoint quadrature of the Fourier integral.

    After ``predict`` the tail estimate of the last call is in
    ``error_estimate_``.
    """

    def __init__(self, dispersion="wave", dispersion_params=None, model="bi", t=1.0,
                 k_max=DEFAULT_K_MAX, n_quad=DEFAULT_N_QUAD,
                 amplitude=-0.5, beta=0.1, sigma=1.0, wave_speed=1.0):
        self.dispersion = dispersion
        self.dispersion_params = dispersion_params
        self.model = model
        self.t = t
        self.k_max = k_max
        self.n_quad = n_quad
        self.amplitude = amplitude
        self.beta = beta
        self.sigma = sigma
        self.wave_speed = wave_speed

    def fit(self, X=None, y=None):
        self._build()
        if not self.k_max > 0 or self.n_quad < 64:
            raise ValueError("k_max must be positive and n_quad >= 64")
        self.is_fitted_ = True
        return self

    def predict(self, X):
        check_is_fitted(self, "is_fitted_")
        x = check_positions(X)
        res = line_profile_quadrature(self.oscillator_, self.relation_, self.model_, self.t, x,
                                      self.k_max, self.n_quad)
        self.error_estimate_ = res.error_estimate
        return np.array(res.profile.u)


class BoxCountingDimension(BaseEstimator):
    """Box-counting dimension of a sampled graph.

    ``fit`` accepts the sampled values on a uniform grid (1-d array) or a
    :class:`SolutionProfile`; the estimate is stored in ``dimension_`` with
    ``scale_range_``, ``fit_residual_`` and ``box_counts_``.
    """

    def __init__(self, n_scales=8, finest_level=10, drop_fine=2, drop_coarse=1):
        self.n_scales = n_scales
        self.finest_level = finest_level
        self.drop_fine = drop_fine
        self.drop_coarse = drop_coarse

    def fit(self, X, y=None):
        if not isinstance(X, SolutionProfile):
            X = check_positions(X)
        est = box_counting_dimension(X, self.n_scales, self.finest_level, self.drop_fine,
                                     self.drop_coarse)
        self.estimate_ = est
        self.dimension_ = est.dimension
        self.scale_range_ = est.scale_range
        self.fit_residual_ = est.fit_residual
        self.box_counts_ = est.box_counts
        return self

    def fit_predict(self, X, y=None) -> float:
        return self.fit(X).dimension_
