"""Command-line front end: ``lamb {catalog,simulate,line,fractal,converge,verify}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import box_counting_dimension, convergence_report
from .core import (
    CATALOG,
    FIGURE_ONE,
    OscillatorParams,
    classical_prefactor,
    classify_regularity,
    make_relation,
    normalize_model,
)
from .io import atomic_write_text, json_text, read_json, write_json, write_profile_csv
from .line import lamb_line_closed_form, line_profile_quadrature
from .periodic import dalembert_periodic, eval_bidirectional, eval_unidirectional, uniform_grid

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------

def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _key_value(text):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected k=v, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key!r} needs a numeric value") from None


def _add_oscillator(p):
    g = p.add_argument_group("oscillator (defaults: c=1, C=-1/2, b=5, kappa=sqrt(.99))")
    g.add_argument("--amplitude", type=float, default=FIGURE_ONE.amplitude, help="C")
    g.add_argument("--beta", type=float, default=FIGURE_ONE.beta, help="damping rate")
    g.add_argument("--sigma", type=float, default=FIGURE_ONE.sigma, help="natural frequency")
    g.add_argument("--wave-speed", type=float, default=FIGURE_ONE.wave_speed, help="c")


def _add_relation(p, default="wave"):
    p.add_argument("--model", default="bi", choices=["bi", "uni"])
    p.add_argument("--dispersion", default=default, choices=list(CATALOG))
    p.add_argument("--param", type=_key_value, action="append", default=[], metavar="K=V",
                   help="dispersion parameter, repeatable")


def _oscillator(args):
    return OscillatorParams(args.amplitude, args.beta, args.sigma, args.wave_speed)


def _relation(name, pairs, params):
    values = dict(pairs)
    # relations with a wave speed inherit the oscillator's unless overridden
    if "c" in CATALOG[name].defaults and "c" not in values:
        values["c"] = params.wave_speed
    return make_relation(name, **values)


def _evaluator(model):
    return eval_bidirectional if normalize_model(model) == "bidirectional" else eval_unidirectional


def _tag(t):
    return format(t, "g").replace(".", "p").replace("-", "m")


def _emit(args, payload, lines):
    if getattr(args, "json", False):
        sys.stdout.write(json_text(payload))
    elif not getattr(args, "quiet", False):
        for line in lines:
            print(line)


# -- catalog ------------------------------------------------------------------

def cmd_catalog(args):
    models = ["bidirectional", "unidirectional"] if args.model is None else [normalize_model(args.model)]
    entries = []
    for name in CATALOG:
        rel = make_relation(name)
        entries.append({
            "name": name,
            "formula": rel.formula,
            "params": dict(rel.params),
            "asymptotic_exponent": rel.asymptotic_exponent,
            "regularity": {m: classify_regularity(rel, m).as_dict() for m in models},
        })
    lines = []
    for e in entries:
        params = ", ".join(f"{k}={v:g}" for k, v in e["params"].items()) or "-"
        lines.append(f"{e['name']:<24} omega = {e['formula']:<30} [{params}]  m = {e['asymptotic_exponent']:g}")
        for m, rep in e["regularity"].items():
            lines.append(f"    {m:<15} {rep['description']}")
    _emit(args, {"relations": entries}, lines)
    return EXIT_OK


# -- simulate -----------------------------------------------------------------

def _simulate_params(args):
    return {
        "oscillator": _oscillator(args).as_dict(),
        "model": normalize_model(args.model),
        "relation": {"name": args.dispersion, "params": dict(args.param)},
        "t": list(args.t),
        "modes": args.modes,
        "grid": args.grid,
        "fractal": args.fractal,
        "converge": list(args.converge or []),
        "oracle": args.oracle,
    }


def _apply_manifest(args):
    manifest = read_json(args.from_manifest)
    if manifest.get("command") != "simulate":
        raise UsageError("manifest was not written by 'simulate'")
    p = manifest["parameters"]
    osc = p["oscillator"]
    args.amplitude, args.beta, args.sigma, args.wave_speed = (
        osc["amplitude"], osc["beta"], osc["sigma"], osc["wave_speed"])
    args.model = "bi" if p["model"] == "bidirectional" else "uni"
    args.dispersion = p["relation"]["name"]
    args.param = list(p["relation"]["params"].items())
    args.t, args.modes, args.grid = p["t"], p["modes"], p["grid"]
    args.fractal, args.converge, args.oracle = p["fractal"], p["converge"], p["oracle"]
    if args.out is None:
        args.out = str(Path(args.from_manifest).parent)


def cmd_simulate(args):
    if args.from_manifest:
        _apply_manifest(args)
    if args.out is None:
        args.out = "lamb-out"
    if args.t is None:
        raise UsageError("--t is required")
    if args.modes < 1 or args.grid < 2:
        raise UsageError("--modes must be >= 1 and --grid >= 2")
    if any(t < 0 for t in args.t):
        raise UsageError("times must be >= 0")
    if args.oracle and (args.dispersion != "wave" or args.model != "bi"):
        raise UsageError("--oracle compares with the d'Alembert solution and needs --model bi --dispersion wave")
    if args.fractal and args.grid < 1024:
        raise UsageError("--fractal needs --grid >= 1024")
    if args.converge and len(args.converge) < 2:
        raise UsageError("--converge needs at least two truncation orders")

    params = _oscillator(args)
    rel = _relation(args.dispersion, args.param, params)
    evaluate = _evaluator(args.model)
    grid = uniform_grid(args.grid)

    # compute everything before touching the output directory
    profiles = [evaluate(params, rel, args.modes, t, grid, n_jobs=args.jobs) for t in args.t]
    report, lines = {}, []
    for prof in profiles:
        lines.append(f"t={prof.t:g}: {len(prof)} samples, max |u| {np.max(np.abs(prof.u)):.6g}")
    if args.oracle:
        sup = {}
        for prof in profiles:
            images = dalembert_periodic(params, prof.t, grid)
            sup[format(prof.t, "g")] = float(np.max(np.abs(classical_prefactor(params) * prof.u - images.u)))
        report["oracle_sup_norm"] = sup
        lines += [f"t={t}: sup-norm vs d'Alembert {v:.3e}" for t, v in sup.items()]
    if args.fractal:
        dims = {format(p.t, "g"): box_counting_dimension(p).as_dict() for p in profiles}
        report["fractal"] = dims
        lines += [f"t={t}: box-counting dimension {d['dimension']:.4f}" for t, d in dims.items()]
    if args.converge:
        conv = {format(t, "g"): convergence_report(params, rel, args.model, t, args.converge, grid).as_dict()
                for t in args.t}
        report["convergence"] = conv
        lines += [f"t={t}: {c['verdict']} (sup diffs {', '.join(f'{d:.2e}' for d in c['sup_differences'])})"
                  for t, c in conv.items()]

    out = Path(args.out)
    outputs = []
    for prof in profiles:
        name = f"profile_t{_tag(prof.t)}.csv"
        write_profile_csv(out / name, prof)
        outputs.append(name)
    if report:
        write_json(out / "report.json", report)
        outputs.append("report.json")
    if args.gnuplot:
        atomic_write_text(out / "plot.gp", _gnuplot(outputs))
        outputs.append("plot.gp")
    manifest = {"command": "simulate", "version": __version__, "parameters": _simulate_params(args),
                "outputs": outputs}
    write_json(out / "manifest.json", manifest)
    _emit(args, {"manifest": manifest, "report": report}, lines + [f"wrote {len(outputs)} files to {out}"])
    return EXIT_FAILED if args.oracle and max(report["oracle_sup_norm"].values()) >= 1e-2 else EXIT_OK


def _gnuplot(outputs):
    csvs = [o for o in outputs if o.endswith(".csv")]
    plots = ", \\\n     ".join(f"'{c}' using 1:2 with lines title '{c[8:-4]}'" for c in csvs)
    return ("set datafile separator ','\nset key autotitle columnhead\nset xrange [-pi:pi]\n"
            f"plot {plots}\n")


# -- line ---------------------------------------------------------------------

def cmd_line(args):
    if args.t is None:
        raise UsageError("--t is required")
    params = _oscillator(args)
    rel = _relation(args.dispersion, args.param, params)
    grid = np.linspace(-args.xmax, args.xmax, args.grid)
    lines, report = [], {}
    results = [line_profile_quadrature(params, rel, args.model, t, grid, args.k_max, args.n_quad)
               for t in args.t]
    out = Path(args.out) if args.out else None
    outputs = []
    for res in results:
        t = res.profile.t
        entry = {"error_estimate": res.error_estimate, "k_max_too_small": res.k_max_too_small}
        if args.compare and rel.name == "wave" and args.model == "bi":
            exact = lamb_line_closed_form(params, t, grid)
            diff = np.abs(classical_prefactor(params) * res.profile.u - exact.u)
            mask = np.all([np.abs(grid - k) > 0.1 for k in (0.0, params.wave_speed * t,
                                                               -params.wave_speed * t)], axis=0)
            entry["sup_vs_closed_form"] = float(diff[mask].max()) if mask.any() else 0.0
        report[format(t, "g")] = entry
        lines.append(f"t={t:g}: error estimate {res.error_estimate:.3g}"
                     + (" (k_max too small)" if res.k_max_too_small else "")
                     + (f", sup vs closed form {entry['sup_vs_closed_form']:.3e}"
                        if "sup_vs_closed_form" in entry else ""))
        if out:
            name = f"line_t{_tag(t)}.csv"
            write_profile_csv(out / name, res.profile)
            outputs.append(name)
    if out:
        write_json(out / "report.json", report)
        manifest = {"command": "line", "version": __version__, "outputs": outputs + ["report.json"],
                    "parameters": {"oscillator": params.as_dict(), "relation": rel.as_dict(),
                                   "model": normalize_model(args.model), "t": list(args.t),
                                   "grid": args.grid, "xmax": args.xmax, "k_max": args.k_max,
                                   "n_quad": args.n_quad}}
        write_json(out / "manifest.json", manifest)
    _emit(args, report, lines)
    return EXIT_OK


# -- fractal / converge -------------------------------------------------------

def cmd_fractal(args):
    if args.t is None:
        raise UsageError("--t is required")
    params = _oscillator(args)
    rel = _relation(args.dispersion, args.param, params)
    grid = uniform_grid(args.grid)
    evaluate = _evaluator(args.model)
    result, lines = {}, []
    for t in args.t:
        est = box_counting_dimension(evaluate(params, rel, args.modes, t, grid), n_scales=args.scales)
        result[format(t, "g")] = est.as_dict()
        lines.append(f"t={t:g}: dimension {est.dimension:.4f} (fit residual {est.fit_residual:.2e})")
    _emit(args, result, lines)
    return EXIT_OK


def cmd_converge(args):
    if args.t is None:
        raise UsageError("--t is required")
    if len(args.modes) < 2:
        raise UsageError("--modes needs at least two ascending orders")
    params = _oscillator(args)
    rel = _relation(args.dispersion, args.param, params)
    grid = uniform_grid(args.grid)
    result, lines = {}, []
    for t in args.t:
        rep = convergence_report(params, rel, args.model, t, args.modes, grid)
        result[format(t, "g")] = rep.as_dict()
        lines.append(f"t={t:g}: {rep.verdict}; sup diffs "
                     + ", ".join(f"{d:.3e}" for d in rep.sup_differences))
    _emit(args, result, lines)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def cmd_verify(args):
    from .verify import run_all, sigma_variant_margins

    def progress(r):
        if not args.json:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status}  {r.name:<26} {r.elapsed:7.2f}s / {r.budget:g}s  {r.detail}", flush=True)

    results = run_all(args.only, progress)
    payload = {"checks": [r.as_dict() for r in results], "passed": all(r.ok for r in results)}
    if args.sigma_variant:
        margins = sigma_variant_margins()
        payload["sigma_variant"] = margins
        if not args.json:
            print("\nsigma in place of varsigma in the decaying term, max |a_k'(0)| over k = 1..64:")
            for name, value in margins.items():
                print(f"    {name:<24} {value:.3e}  {'violates' if value >= 1e-6 else 'ok'} (tolerance 1e-6)")
    if args.json:
        sys.stdout.write(json_text(payload))
    failed = [r.name for r in results if not r.ok]
    if failed:
        print("failed: " + "; ".join(failed), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="lamb", description="Dispersive Lamb oscillator toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list dispersion relations")
    p.add_argument("--model", choices=["bi", "uni", "bidirectional", "unidirectional"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("simulate", help="periodic partial-sum profiles to CSV")
    _add_relation(p)
    _add_oscillator(p)
    p.add_argument("--t", type=_float_list)
    p.add_argument("--modes", type=int, default=1000)
    p.add_argument("--grid", type=int, default=2048)
    p.add_argument("--out")
    p.add_argument("--oracle", action="store_true", help="compare with the d'Alembert image sum")
    p.add_argument("--fractal", action="store_true", help="add box-counting dimensions to report.json")
    p.add_argument("--converge", type=_int_list, help="truncation orders for a convergence report")
    p.add_argument("--gnuplot", action="store_true", help="also write plot.gp")
    p.add_argument("--jobs", type=int, default=1, help="threads for grid evaluation")
    p.add_argument("--from-manifest", help="replay the run recorded in a manifest.json")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("line", help="full-line profiles by Fourier quadrature")
    _add_relation(p)
    _add_oscillator(p)
    p.add_argument("--t", type=_float_list)
    p.add_argument("--grid", type=int, default=1201)
    p.add_argument("--xmax", type=float, default=15.0)
    p.add_argument("--k-max", type=float, default=400.0)
    p.add_argument("--n-quad", type=int, default=2**15)
    p.add_argument("--compare", action="store_true", help="compare wave/bi with Lamb's closed form")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_line)

    p = sub.add_parser("fractal", help="box-counting dimension of profiles")
    _add_relation(p, default="sqrt_abs_k")
    _add_oscillator(p)
    p.add_argument("--t", type=_float_list)
    p.add_argument("--modes", type=int, default=1000)
    p.add_argument("--grid", type=int, default=8192)
    p.add_argument("--scales", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fractal)

    p = sub.add_parser("converge", help="partial-sum convergence diagnostics")
    _add_relation(p, default="sqrt_abs_k")
    _add_oscillator(p)
    p.add_argument("--t", type=_float_list)
    p.add_argument("--modes", type=_int_list, default=[500, 1000, 1500])
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", help="run the oracle and invariant checks")
    p.add_argument("--sigma-variant", action="store_true",
                   help="show how sigma in the decaying term breaks a_k'(0) = 0")
    p.add_argument("--only", action="append", help="run checks whose name contains this text")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"lamb {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
