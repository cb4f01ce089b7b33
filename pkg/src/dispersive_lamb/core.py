"""Oscillator parameters, the dispersion-relation catalog and regularity rules.

All quantities use the slow ("h-scale") time of the forced medium: the
oscillator displacement is ``h(t) = C exp(-beta t) sin(varsigma t)``.  The
classical Lamb constants ``b`` and ``kappa`` are exposed as derived,
read-only properties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

__all__ = [
    "UnderdampingError",
    "OscillatorParams",
    "DispersionRelation",
    "RegularityReport",
    "CATALOG",
    "FIGURE_ONE",
    "oscillator_from_physical",
    "oscillator_displacement",
    "dispersion_eval",
    "make_relation",
    "classify_regularity",
    "classical_prefactor",
    "normalize_model",
]


class UnderdampingError(ValueError):
    """Raised when oscillator parameters violate ``sigma > beta > 0``."""


@dataclass(frozen=True)
class OscillatorParams:
    """Damped point-mass oscillator coupled to the medium.

    Parameters
    ----------
    amplitude : float
        Integration constant ``C`` of the oscillator displacement.
    beta : float
        Radiation damping rate (1/time).
    sigma : float
        Uncoupled natural frequency (1/time).
    wave_speed : float
        Intrinsic wave speed ``c`` of the medium.
    """

    amplitude: float = -0.5
    beta: float = 0.1
    sigma: float = 1.0
    wave_speed: float = 1.0

    def __post_init__(self):
        for name in ("amplitude", "beta", "sigma", "wave_speed"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.amplitude == 0.0:
            raise ValueError("amplitude must be nonzero")
        if self.wave_speed <= 0.0:
            raise ValueError(f"wave_speed must be positive, got {self.wave_speed}")
        if not self.sigma > self.beta > 0.0:
            raise UnderdampingError(
                "oscillator must be underdamped (sigma > beta > 0); "
                f"got sigma={self.sigma}, beta={self.beta}"
            )

    @property
    def varsigma(self) -> float:
        """Damped frequency ``sqrt(sigma**2 - beta**2)``."""
        return math.sqrt((self.sigma - self.beta) * (self.sigma + self.beta))

    @property
    def lamb_b(self) -> float:
        """Lamb's length scale ``c / (2 beta)``."""
        return self.wave_speed / (2.0 * self.beta)

    @property
    def lamb_kappa(self) -> float:
        """Lamb's wave number ``varsigma / c``."""
        return self.varsigma / self.wave_speed

    @classmethod
    def from_lamb(cls, amplitude, wave_speed, lamb_b, lamb_kappa) -> "OscillatorParams":
        """Build from Lamb's ``(C, c, b, kappa)`` parametrization."""
        beta = wave_speed / (2.0 * lamb_b)
        varsigma = lamb_kappa * wave_speed
        return cls(amplitude, beta, math.sqrt(varsigma**2 + beta**2), wave_speed)

    def as_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "beta": self.beta,
            "sigma": self.sigma,
            "wave_speed": self.wave_speed,
        }


# c = 1, C = -1/2, b = 5, kappa = sqrt(.99); sigma comes out as exactly 1.
FIGURE_ONE = OscillatorParams(amplitude=-0.5, beta=0.1, sigma=1.0, wave_speed=1.0)


def oscillator_from_physical(mass, tension, density, natural_frequency, amplitude=-0.5):
    """Oscillator parameters from the string/mass physical constants.

    ``c = sqrt(T / rho)`` and the radiation damping is ``beta = sqrt(rho T) / M``.
    """
    for name, value in (("mass", mass), ("tension", tension), ("density", density)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")
    wave_speed = math.sqrt(tension / density)
    beta = math.sqrt(density * tension) / mass
    if beta >= natural_frequency:
        raise UnderdampingError(
            f"damping beta={beta} is not below natural_frequency={natural_frequency}; "
            "the oscillator must be underdamped (sigma > beta)"
        )
    return OscillatorParams(amplitude, beta, natural_frequency, wave_speed)


def oscillator_displacement(params: OscillatorParams, t):
    """Displacement of the mass, extended by zero to ``t <= 0``."""
    t = np.asarray(t, dtype=float)
    tp = np.where(t > 0.0, t, 0.0)
    value = params.amplitude * np.exp(-params.beta * tp) * np.sin(params.varsigma * tp)
    value = np.where(t > 0.0, value, 0.0)
    return float(value) if value.ndim == 0 else value


def classical_prefactor(params: OscillatorParams) -> float:
    """Factor ``-2c`` mapping dispersive-normalized solutions to the classical forcing."""
    return -2.0 * params.wave_speed


def normalize_model(model: str) -> str:
    aliases = {"bi": "bidirectional", "bidirectional": "bidirectional",
               "uni": "unidirectional", "unidirectional": "unidirectional"}
    try:
        return aliases[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected 'bi' or 'uni'") from None


# ---------------------------------------------------------------------------
# Dispersion relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Variant:
    formula: str
    defaults: Mapping[str, float]
    omega: Callable[..., np.ndarray]
    exponent: Callable[..., float]
    check: Callable[..., None] = lambda **_: None


def _nonneg(**p):
    for key in ("epsilon", "denom_scale"):
        if key in p and p[key] < 0:
            raise ValueError(f"{key} must be >= 0 for a real dispersion relation")


def _positive_c(**p):
    if p["c"] <= 0:
        raise ValueError("c must be positive")
    _nonneg(**p)


def _kg_check(**p):
    _positive_c(**p)
    if p["kg_mass"] < 0:
        raise ValueError("kg_mass must be >= 0")


def _boussinesq_check(**p):
    _positive_c(**p)
    if p["epsilon"] <= 0:
        raise ValueError("epsilon must be positive for the regularized Boussinesq relation")


def _rational_check(**p):
    if p["denom_scale"] <= 0:
        raise ValueError("denom_scale must be positive")


def _power_check(**p):
    if not 0 < p["m_pow"] <= 4:
        raise ValueError("power_law exponent m_pow must lie in (0, 4]")


CATALOG: Mapping[str, _Variant] = MappingProxyType({
    "wave": _Variant(
        "c|k|", {"c": 1.0},
        lambda k, c: c * np.abs(k),
        lambda **_: 1.0, _positive_c),
    "elastic_string": _Variant(
        "sqrt(c^2 k^2 + epsilon k^4)", {"c": 1.0, "epsilon": 1.0},
        lambda k, c, epsilon: np.sqrt(c * c * k * k + epsilon * (k * k) ** 2),
        lambda epsilon, **_: 2.0 if epsilon > 0 else 1.0, _positive_c),
    "regularized_boussinesq": _Variant(
        "c|k| / sqrt(1 + epsilon k^2)", {"c": 1.0, "epsilon": 1.0},
        lambda k, c, epsilon: c * np.abs(k) / np.sqrt(1.0 + epsilon * k * k),
        lambda **_: 0.0, _boussinesq_check),
    "klein_gordon": _Variant(
        "sqrt(c^2 k^2 + kg_mass^2)", {"c": 1.0, "kg_mass": 1.0},
        lambda k, c, kg_mass: np.sqrt(c * c * k * k + kg_mass * kg_mass),
        lambda **_: 1.0, _kg_check),
    "sqrt_abs_k": _Variant(
        "sqrt(|k|)", {},
        lambda k: np.sqrt(np.abs(k)),
        lambda **_: 0.5),
    "water_wave": _Variant(
        "sqrt(k tanh k)", {},
        lambda k: np.sqrt(k * np.tanh(k)),
        lambda **_: 0.5),
    "quadratic": _Variant(
        "k^2", {},
        lambda k: k * k,
        lambda **_: 2.0),
    "rational_quadratic": _Variant(
        "k^2 / (1 + denom_scale k^2)", {"denom_scale": 1.0 / 3.0},
        lambda k, denom_scale: k * k / (1.0 + denom_scale * k * k),
        lambda **_: 0.0, _rational_check),
    "power_law": _Variant(
        "|k|^m_pow", {"m_pow": 1.5},
        lambda k, m_pow: np.abs(k) ** m_pow,
        lambda m_pow: float(m_pow), _power_check),
})


@dataclass(frozen=True)
class DispersionRelation:
    """A named, parameterized real dispersion relation ``omega(k)``.

    Use :func:`make_relation` to fill in defaults.  ``omega`` is even in ``k``
    for every catalog variant.
    """

    name: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in CATALOG:
            raise ValueError(
                f"unknown dispersion relation {self.name!r}; "
                f"choose from {', '.join(CATALOG)}"
            )
        variant = CATALOG[self.name]
        unknown = set(self.params) - set(variant.defaults)
        if unknown:
            raise ValueError(f"{self.name} does not take parameters {sorted(unknown)}")
        merged = {**variant.defaults, **{k: float(v) for k, v in self.params.items()}}
        for key, value in merged.items():
            if not math.isfinite(value):
                raise ValueError(f"{key} must be finite")
        variant.check(**merged)
        object.__setattr__(self, "params", MappingProxyType(merged))

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.params.items()))))

    def __eq__(self, other):
        if not isinstance(other, DispersionRelation):
            return NotImplemented
        return self.name == other.name and dict(self.params) == dict(other.params)

    @property
    def formula(self) -> str:
        return CATALOG[self.name].formula

    @property
    def asymptotic_exponent(self) -> float:
        return CATALOG[self.name].exponent(**self.params)

    def omega(self, k):
        k = np.asarray(k, dtype=float)
        value = CATALOG[self.name].omega(k, **self.params)
        return float(value) if value.ndim == 0 else value

    __call__ = omega

    def as_dict(self) -> dict:
        return {"name": self.name, "params": dict(self.params)}

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.name}({args})"


def make_relation(name: str, **params) -> DispersionRelation:
    return DispersionRelation(name, params)


def dispersion_eval(rel: DispersionRelation, k):
    """Evaluate ``omega(k)``; scalar in, scalar out."""
    return rel.omega(k)


# ---------------------------------------------------------------------------
# Regularity
# ---------------------------------------------------------------------------

_REGIMES = ("non-decaying", "fractal-candidate", "inconclusive", "piecewise-smooth", "smooth")


@dataclass(frozen=True)
class RegularityReport:
    model: str
    asymptotic_exponent: float
    decay_exponent: float
    max_smooth_order: int | None
    regime: str

    @property
    def rank(self) -> int:
        """Ordering key; larger means more regular."""
        return _REGIMES.index(self.regime)

    def describe(self) -> str:
        decay = f"|k|^-{self.decay_exponent:g}"
        if self.max_smooth_order is None:
            smooth = "no C^n guaranteed"
        else:
            smooth = f"C^{self.max_smooth_order} guaranteed"
        return f"{self.regime} (coefficients ~ {decay}, {smooth})"

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "asymptotic_exponent": self.asymptotic_exponent,
            "decay_exponent": self.decay_exponent,
            "max_smooth_order": self.max_smooth_order,
            "regime": self.regime,
            "description": self.describe(),
        }


def _largest_order_below(bound: float) -> int | None:
    # largest integer n >= 0 with n < bound
    if bound <= 0:
        return None
    return math.ceil(bound) - 1


def classify_regularity(rel, model: str = "bidirectional") -> RegularityReport:
    """Coefficient decay and guaranteed smoothness from the large-``k`` exponent.

    Bidirectional coefficients decay like ``omega(k)**-2 ~ |k|**(-2m)`` and the
    profile is ``C^n`` for ``n < 2m - 1``; unidirectional ones decay like
    ``|k|**-m`` with ``C^n`` for ``n < m - 1``.  ``rel`` may also be a bare
    exponent.
    """
    model = normalize_model(model)
    m = float(rel if isinstance(rel, (int, float)) else rel.asymptotic_exponent)
    if m < 0:
        raise ValueError("asymptotic exponent must be >= 0")
    if model == "bidirectional":
        decay = 2.0 * m
        order = _largest_order_below(2.0 * m - 1.0)
    else:
        decay = m
        order = _largest_order_below(m - 1.0)

    if m == 0:
        regime = "non-decaying"
    elif m < 1:
        regime = "fractal-candidate" if model == "bidirectional" else "inconclusive"
    elif order is None or order == 0:
        regime = "piecewise-smooth"
    else:
        regime = "smooth"
    return RegularityReport(model, m, decay, order, regime)
