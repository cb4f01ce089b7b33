"""Cross-checks between closed forms, oracles and estimators.

Each check runs at fixed tolerances and reports whether it passed, a short
detail string, and its wall time against a budget.  ``run_all`` is what the
``verify`` command executes.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import (
    box_counting_dimension,
    convergence_report,
    log_singularity_sum,
    partial_fraction_terms,
    weierstrass_profile,
)
from .core import CATALOG, FIGURE_ONE, classical_prefactor, make_relation
from .io import profile_csv_text
from .line import lamb_line_closed_form, line_profile_quadrature, to_classical
from .modal import a0_bidirectional, a0_unidirectional, ak_bidirectional, modal_unidirectional
from .oracle import default_step, rk4_bidirectional_mode, rk4_unidirectional_mode
from .periodic import dalembert_periodic, eval_bidirectional, eval_unidirectional, uniform_grid

__all__ = ["CheckResult", "CHECKS", "run_all", "sigma_variant_margins", "derivative_at_zero"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    budget: float = math.inf
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed < self.budget

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.ok, "tolerance_passed": self.passed,
                "detail": self.detail, "elapsed_s": round(self.elapsed, 3),
                "budget_s": self.budget}


def _catalog():
    return [make_relation(name) for name in CATALOG]


def derivative_at_zero(func, step=1e-6):
    """Centered difference of ``func(t)`` at ``t = 0``."""
    return (np.asarray(func(step)) - np.asarray(func(-step))) / (2.0 * step)


# -- 1 -----------------------------------------------------------------------

def check_classical_oracle(params=FIGURE_ONE):
    grid = uniform_grid(2048)
    wave = make_relation("wave", c=params.wave_speed)
    worst = {}
    for t in (1.0, 2.0, 5.0, 10.0):
        fourier = eval_bidirectional(params, wave, 1000, t, grid)
        images = dalembert_periodic(params, t, grid)
        worst[t] = float(np.max(np.abs(classical_prefactor(params) * fourier.u - images.u)))
    top = max(worst.values())
    return top < 1e-2, f"max sup-norm {top:.3e} (< 1e-2)", {"sup": worst}


# -- 2 -----------------------------------------------------------------------

LINE_GRID = np.linspace(-15.0, 15.0, 1201)
KINK_EXCLUSION = 0.1


def kink_mask(x, t, c):
    return np.all([np.abs(x - kink) > KINK_EXCLUSION for kink in (0.0, c * t, -c * t)], axis=0)


def check_line_closed_form(params=FIGURE_ONE):
    wave = make_relation("wave", c=params.wave_speed)
    worst = {}
    for t in (1.0, 5.0, 10.0):
        quad = line_profile_quadrature(params, wave, "bidirectional", t, LINE_GRID)
        exact = lamb_line_closed_form(params, t, LINE_GRID)
        mask = kink_mask(LINE_GRID, t, params.wave_speed)
        worst[t] = to_classical(quad.profile, params).sup_distance(exact, mask)
    top = max(worst.values())
    return top < 5e-3, f"max sup-norm off kinks {top:.3e} (< 5e-3)", {"sup": worst}


# -- 3 -----------------------------------------------------------------------

ORACLE_K = (1, 2, 5, 17, 40)
ORACLE_T = (0.5, 1.0, 5.0, 10.0)


def _mode_table(params):
    # (relation, k, omega) triples grouped by shared RK4 step so each group integrates once
    groups = {}
    for rel in _catalog():
        for k in ORACLE_K:
            omega = rel.omega(float(k))
            groups.setdefault(default_step(omega, params), []).append((rel, k, omega))
    return groups


def check_modal_oracle(params=FIGURE_ONE):
    worst_bi = worst_uni = 0.0
    where = {}
    two_c = 2.0 * params.wave_speed
    for dt, modes in _mode_table(params).items():
        omegas = np.array([m[2] for m in modes])
        value, _ = rk4_bidirectional_mode(params, omegas, ORACLE_T, dt)
        mode = rk4_unidirectional_mode(params, omegas, ORACLE_T, dt)
        for j, (rel, k, _) in enumerate(modes):
            for i, t in enumerate(ORACLE_T):
                err = abs(value[i, j] - ak_bidirectional(params, rel, k, t))
                a, b = modal_unidirectional(params, rel, k, t)
                err_u = max(abs(2.0 * mode[i, j].real / two_c - a),
                            abs(-2.0 * mode[i, j].imag / two_c - b))
                if err > worst_bi:
                    worst_bi, where["bidirectional"] = err, (rel.name, k, t)
                if err_u > worst_uni:
                    worst_uni, where["unidirectional"] = err_u, (rel.name, k, t)
    top = max(worst_bi, worst_uni)
    detail = f"max |closed - RK4| bi {worst_bi:.2e}, uni {worst_uni:.2e} (< 1e-7)"
    return top < 1e-7, detail, {"worst_at": where}


# -- 4 -----------------------------------------------------------------------

IC_MODES = np.arange(1, 65, dtype=float)


def _ic_defects(params, transient_frequency=None):
    value = deriv = 0.0
    for rel in _catalog():
        def bi(t, rel=rel):
            return ak_bidirectional(params, rel, IC_MODES, t, transient_frequency=transient_frequency)
        value = max(value, float(np.max(np.abs(bi(0.0)))))
        deriv = max(deriv, float(np.max(np.abs(derivative_at_zero(bi)))))
        if transient_frequency is None:
            for part in (0, 1):
                def uni(t, rel=rel, part=part):
                    return modal_unidirectional(params, rel, IC_MODES, t)[part]
                value = max(value, float(np.max(np.abs(uni(0.0)))))
                deriv = max(deriv, float(np.max(np.abs(derivative_at_zero(uni)))))
    for mean in (a0_bidirectional, a0_unidirectional):
        value = max(value, abs(mean(params, 0.0)))
        deriv = max(deriv, abs(float(derivative_at_zero(lambda t: mean(params, t)))))
    return value, deriv


def sigma_variant_margins(params=FIGURE_ONE):
    """Largest ``|a_k'(0)|`` per relation when the decaying term uses ``sigma``."""
    out = {}
    for rel in _catalog():
        d = derivative_at_zero(lambda t, rel=rel: ak_bidirectional(
            params, rel, IC_MODES, t, transient_frequency=params.sigma))
        out[rel.name] = float(np.max(np.abs(d)))
    return out


def check_initial_conditions(params=FIGURE_ONE):
    value, deriv = _ic_defects(params)
    sigma_value, sigma_deriv = _ic_defects(params, transient_frequency=params.sigma)
    good = value == 0.0 and deriv < 1e-6
    sigma_fails = not (sigma_value == 0.0 and sigma_deriv < 1e-6)
    detail = (f"a_k(0) max {value:.1e}, max |a_k'(0)| {deriv:.2e} (< 1e-6); "
              f"sigma variant max |a_k'(0)| {sigma_deriv:.2e} ({'fails' if sigma_fails else 'PASSES'})")
    return good and sigma_fails, detail, {"sigma_variant_derivative": sigma_deriv}


# -- 5 -----------------------------------------------------------------------

FRACTAL_TIMES = (10.0, 30.0, 50.0)


def check_fractal_bounds(params=FIGURE_ONE):
    calib = box_counting_dimension(weierstrass_profile()).dimension
    calibrated = abs(calib - 1.5) <= 0.1
    grid = uniform_grid(8192)
    dims = {}
    for name in ("sqrt_abs_k", "quadratic", "klein_gordon"):
        rel = make_relation(name)
        dims[name] = [box_counting_dimension(eval_bidirectional(params, rel, 1000, t, grid)).dimension
                      for t in FRACTAL_TIMES]
    rough = all(1.15 <= d <= 1.85 for d in dims["sqrt_abs_k"])
    smooth = all(d <= 1.15 for name in ("quadratic", "klein_gordon") for d in dims[name])
    fmt = ", ".join(f"{n} " + "/".join(f"{d:.3f}" for d in v) for n, v in dims.items())
    detail = f"Weierstrass {calib:.3f} (1.5 +- 0.1); {fmt}"
    return calibrated and rough and smooth, detail, {"weierstrass": calib, "dimensions": dims}


# -- 6 -----------------------------------------------------------------------

def check_identities():
    worst_pf = 0.0
    k = np.arange(1, 10_001, dtype=float)
    for alpha in (0.5, 1.0, 2.0):
        for kk in k:
            t1, t2, t3 = partial_fraction_terms(alpha, kk)
            exact = 1.0 / (kk + alpha)
            worst_pf = max(worst_pf, abs(math.fsum((t1, t2, t3)) - exact) / exact)
    worst_log = 0.0
    for alpha in (0.0, 1.0):
        for x in (0.1, 0.5, 1.0, 2.0, 3.0):
            partial, closed = log_singularity_sum(alpha, x, 100_000)
            worst_log = max(worst_log, abs(partial - closed))
    detail = f"partial fractions rel err {worst_pf:.1e} (<= 1e-15); log series err {worst_log:.1e} (< 1e-3)"
    return worst_pf <= 1e-15 and worst_log < 1e-3, detail, {}


# -- 7 -----------------------------------------------------------------------

def check_decay_laws(params=FIGURE_ONE, t=5.0):
    k = np.arange(100, 1001, dtype=float)
    ratios, failures = {}, []
    for rel in _catalog():
        w = rel.omega(k)
        scaled = {
            "bi a": np.abs(ak_bidirectional(params, rel, k, t)) * w**2,
            "uni a": np.abs(modal_unidirectional(params, rel, k, t)[0]) * w,
            "uni b": np.abs(modal_unidirectional(params, rel, k, t)[1]) * w,
        }
        for label, series in scaled.items():
            ratio = float(series.max() / series[0])
            ratios[f"{rel.name} {label}"] = ratio
            if not ratio <= 10.0:
                failures.append(f"{rel.name} {label} ratio {ratio:.1f}")
    detail = f"max/k=100 ratio {max(ratios.values()):.2f} (<= 10)"
    if failures:
        detail += "; FAILED: " + ", ".join(failures)
    return not failures, detail, {"ratios": ratios}


# -- 8 -----------------------------------------------------------------------

def check_convergence_dichotomy(params=FIGURE_ONE):
    grid = uniform_grid(4096)
    orders = (500, 1000, 1500)
    quad = convergence_report(params, make_relation("quadratic"), "bi", 10.0, orders, grid)
    root = convergence_report(params, make_relation("sqrt_abs_k"), "bi", 30.0, orders, grid)
    bous = convergence_report(params, make_relation("regularized_boussinesq"), "bi", 20.0, orders, grid)
    ok = (quad.verdict == "converging" and quad.sup_differences[-1] < 1e-4
          and root.verdict == "converging" and root.sup_differences[-1] < 5e-2
          and bous.verdict == "oscillatory")
    detail = (f"quadratic {quad.verdict} ({quad.sup_differences[-1]:.1e}), "
              f"sqrt_abs_k {root.verdict} ({root.sup_differences[-1]:.1e}), "
              f"regularized_boussinesq {bous.verdict} ({bous.sup_differences[-1]:.1e})")
    return ok, detail, {}


# -- 9 -----------------------------------------------------------------------

def check_determinism(params=FIGURE_ONE):
    grid = uniform_grid(2048)
    rel = make_relation("sqrt_abs_k")
    texts = []
    for n_jobs in (1, 4, 16, 1):
        bi = eval_bidirectional(params, rel, 1000, 30.0, grid, n_jobs=n_jobs)
        uni = eval_unidirectional(params, rel, 1000, 30.0, grid, n_jobs=n_jobs)
        texts.append(profile_csv_text(bi) + profile_csv_text(uni))
    with tempfile.TemporaryDirectory() as tmp:
        from .cli import main
        blobs = []
        for run in ("a", "b"):
            out = Path(tmp) / run
            code = main(["simulate", "--model", "bi", "--dispersion", "sqrt_abs_k", "--t", "10,30",
                         "--modes", "500", "--grid", "1024", "--out", str(out), "--quiet"])
            blobs.append(code == 0 and b"".join(p.read_bytes() for p in sorted(out.glob("*.csv"))))
    same = all(t == texts[0] for t in texts) and blobs[0] and blobs[0] == blobs[1]
    return bool(same), "CSV bytes identical across 1/4/16 threads and repeated CLI runs" if same \
        else "CSV output differs between runs", {}


CHECKS = [
    ("1 classical oracle", check_classical_oracle, 10.0),
    ("2 line closed form", check_line_closed_form, 30.0),
    ("3 modal vs RK4", check_modal_oracle, 60.0),
    ("4 initial conditions", check_initial_conditions, 5.0),
    ("5 fractal bounds", check_fractal_bounds, 60.0),
    ("6 identities", check_identities, 10.0),
    ("7 decay laws", check_decay_laws, 5.0),
    ("8 convergence dichotomy", check_convergence_dichotomy, 120.0),
    ("9 determinism", check_determinism, 10.0),
]


def run_check(name, func, budget) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail, data = func()
    except Exception as exc:  # a crashing check is a failed check, not a crashed suite
        passed, detail, data = False, f"error: {exc!r}", {}
    return CheckResult(name, bool(passed), detail, time.perf_counter() - start, budget, data)


def run_all(select=None, progress=None) -> list[CheckResult]:
    results = []
    for name, func, budget in CHECKS:
        if select and not any(s in name for s in select):
            continue
        result = run_check(name, func, budget)
        if progress:
            progress(result)
        results.append(result)
    return results
