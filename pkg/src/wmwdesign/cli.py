"""Command-line interface.

Subcommands: power, optimal-design, power-curve, deficiency, exact-null,
simulate, check-identities, reproduce.  Output is JSON on stdout, or CSV to
an --out path where a curve/table is produced.

Exit codes: 0 success, 1 usage or input error, 2 numerical failure,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import design as design_mod
from . import power as power_mod
from . import scenarios as scenarios_mod
from .distributions import DistributionSpec, ParameterError
from .exact_null import TableSizeError, build_table, critical_value
from .exceedance import QuadratureAccuracyError, check_identities
from .moments import Design, alt_moments, null_moments
from .power import (
    ONE_SIDED_UPPER,
    SIDES,
    PowerQuery,
    deficiency_general,
    deficiency_symmetric,
    welch_optimal_omega,
    welch_power,
    wmw_power,
)
from .simulate import TESTS, SimulationPlan, simulate_power

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sig10(x):
    """Round floats to 10 significant digits, locale independent."""
    if isinstance(x, float):
        return float(f"{x:.10g}")
    if isinstance(x, dict):
        return {k: _sig10(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sig10(v) for v in x]
    return x


def _emit_json(data):
    json.dump(_sig10(data), sys.stdout, indent=2)
    sys.stdout.write("\n")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([f"{v:.10g}" if isinstance(v, float) else v for v in row])


def _load_spec(text: str, flag: str) -> DistributionSpec:
    try:
        if text.lstrip().startswith("{"):
            return DistributionSpec.from_json(text)
        return DistributionSpec.from_json(Path(text).read_text())
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read spec file: {exc}") from exc
    except ParameterError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _resolve_design(args) -> Design:
    if args.m is not None and args.n2 is not None:
        return Design(args.m, args.n2)
    if args.n is None:
        raise UsageError("--n is required unless both --m and --n2 are given")
    omega = args.omega if args.omega is not None else 0.5
    return Design.from_total(args.n, omega)


def _add_spec_args(p):
    p.add_argument("--f-spec", required=True, help="JSON spec (inline or file path) for group F")
    p.add_argument("--g-spec", required=True, help="JSON spec (inline or file path) for group G")
    p.add_argument("--n", type=int, default=50, help="total sample size N (default 50)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--side", choices=SIDES, default=ONE_SIDED_UPPER)


def _power_result_dict(res):
    return {
        "approx_power": res.approx_power,
        "mu_n": res.mu_n,
        "sigma2_n": res.sigma2_n,
        "method": res.method,
        "low_confidence": res.low_confidence,
        "degenerate_variance": res.degenerate_variance,
    }


def _design_report_dict(report):
    return {
        "optimal": {
            "m": report.optimal.m,
            "n": report.optimal.n,
            "omega": report.optimal.omega,
        },
        "optimal_power": report.optimal_power,
        "deficiency_at_half": report.deficiency_at_half,
        "epsilon": report.epsilon,
        "power_curve": [
            {"omega": p.omega, "m": p.m, "n": p.n, "power": p.power}
            for p in report.power_curve
        ],
    }


# -- subcommand handlers -------------------------------------------------


def _cmd_power(args):
    F = _load_spec(args.f_spec, "--f-spec")
    G = _load_spec(args.g_spec, "--g-spec")
    d = _resolve_design(args)
    res = wmw_power(PowerQuery(F, G, d, args.alpha, args.side))
    out = {"design": {"m": d.m, "n": d.n, "omega": d.omega}}
    out.update(_power_result_dict(res))
    _emit_json(out)
    return EXIT_OK


def _cmd_optimal_design(args):
    F = _load_spec(args.f_spec, "--f-spec")
    G = _load_spec(args.g_spec, "--g-spec")
    report = design_mod.optimal_design(
        F, G, args.n, alpha=args.alpha, side=args.side, epsilon=args.epsilon
    )
    _emit_json(_design_report_dict(report))
    if args.out:
        _write_csv(
            args.out,
            ["omega", "m", "n", "power"],
            [(p.omega, p.m, p.n, p.power) for p in report.power_curve],
        )
    return EXIT_OK


def _cmd_power_curve(args):
    F = _load_spec(args.f_spec, "--f-spec")
    G = _load_spec(args.g_spec, "--g-spec")
    grid = None
    if args.grid:
        try:
            grid = [float(v) for v in args.grid.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"--grid: {exc}") from exc
    points = design_mod.power_curve(F, G, args.n, alpha=args.alpha, side=args.side, grid=grid)
    header = ["omega", "m", "n", "power_approx"]
    rows = [[p.omega, p.m, p.n, p.power] for p in points]
    if args.mc_trials:
        header += ["power_mc", "mc_se"]
        for row, p in zip(rows, points):
            plan = SimulationPlan(F, G, Design(p.m, p.n), args.alpha, args.side,
                                  trials=args.mc_trials, seed=args.seed)
            sim = simulate_power(plan, test="wmw_exact")
            row += [sim.rejection_rate, sim.standard_error]
    if args.out:
        _write_csv(args.out, header, rows)
    else:
        _emit_json([dict(zip(header, row)) for row in rows])
    return EXIT_OK


def _cmd_deficiency(args):
    if args.f_spec or args.g_spec:
        if not (args.f_spec and args.g_spec and args.n):
            raise UsageError("general deficiency needs --f-spec, --g-spec and --n")
        F = _load_spec(args.f_spec, "--f-spec")
        G = _load_spec(args.g_spec, "--g-spec")
        d = deficiency_general(F, G, args.n, args.omega, alpha=args.alpha,
                               side=args.side, epsilon=args.epsilon)
        _emit_json({"omega": args.omega, "deficiency": d, "method": "general"})
    else:
        d = deficiency_symmetric(args.omega)
        _emit_json({"omega": args.omega, "deficiency": d, "method": "symmetric_closed_form"})
    return EXIT_OK


def _cmd_exact_null(args):
    table = build_table(args.m, args.n)
    e0, var0 = null_moments(Design(args.m, args.n))
    cv = critical_value(table, args.alpha, "upper")
    _emit_json({
        "m": args.m,
        "n": args.n,
        "mean": float(table.exact_mean()),
        "variance": float(table.exact_variance()),
        "formula_mean": e0,
        "formula_variance": var0,
        "upper_critical_value": cv.value,
        "achieved_size": cv.achieved_size,
        "degenerate": cv.degenerate,
    })
    if args.out:
        _write_csv(
            args.out,
            ["u", "probability"],
            list(enumerate(table.pmf.tolist())),
        )
    return EXIT_OK


def _cmd_simulate(args):
    F = _load_spec(args.f_spec, "--f-spec")
    G = _load_spec(args.g_spec, "--g-spec")
    d = _resolve_design(args)
    plan = SimulationPlan(F, G, d, args.alpha, args.side, trials=args.trials, seed=args.seed)
    res = simulate_power(plan, test=args.test)
    _emit_json({
        "design": {"m": d.m, "n": d.n, "omega": d.omega},
        "rejection_rate": res.rejection_rate,
        "standard_error": res.standard_error,
        "test_used": res.test_used,
        "trials": res.trials,
        "fell_back_to_normal": res.fell_back_to_normal,
    })
    return EXIT_OK


def _cmd_check_identities(args):
    F = _load_spec(args.f_spec, "--f-spec")
    G = _load_spec(args.g_spec, "--g-spec")
    report = check_identities(F, G)
    _emit_json({
        "complement_residual": report.complement_residual,
        "nested_residual": report.nested_residual,
        "p_x_ge_y": report.summary.p_x_ge_y,
        "int_g2_f": report.summary.int_g2_f,
        "int_1mf2_g": report.summary.int_1mf2_g,
        "quadrature_error_bound": report.summary.quadrature_error_bound,
    })
    return EXIT_OK


def _cmd_reproduce(args):
    if args.figure == "deficiency":
        rows = []
        for i in range(1, 100):
            omega = i / 100.0
            rows.append((omega, deficiency_symmetric(omega)))
        if args.out:
            _write_csv(args.out, ["omega", "deficiency"], rows)
        else:
            _emit_json([{"omega": o, "deficiency": d} for o, d in rows])
        return EXIT_OK

    if args.figure == "epping":
        sc = scenarios_mod.SCENARIOS["epping"][0]
        report = design_mod.optimal_design(sc.F, sc.G, sc.total_n,
                                           alpha=sc.alpha, side=sc.side)
        out = _design_report_dict(report)
        # the second group holds the chi-square (recovery) distribution
        out["omega_star_second_group"] = 1.0 - report.optimal.omega
        out["scenario_version"] = scenarios_mod.SCENARIO_VERSION
        _emit_json(out)
        return EXIT_OK

    group = scenarios_mod.SCENARIOS.get(args.figure)
    if group is None:
        raise UsageError(
            f"--figure must be one of {sorted(SCENARIOS_CHOICES)}, got {args.figure!r}"
        )
    rows = []
    grid = [i / 10.0 for i in range(1, 10)]
    for sc in group:
        seed = args.seed if args.seed is not None else sc.seed
        trials = args.trials if args.trials is not None else sc.trials
        for p in design_mod.power_curve(sc.F, sc.G, sc.total_n, alpha=sc.alpha,
                                        side=sc.side, grid=grid):
            plan = SimulationPlan(sc.F, sc.G, Design(p.m, p.n), sc.alpha, sc.side,
                                  trials=trials, seed=seed)
            sim = simulate_power(plan, test="wmw_exact")
            rows.append((sc.name, p.omega, p.m, p.n, p.power,
                         sim.rejection_rate, sim.standard_error))
    header = ["scenario", "omega", "m", "n", "power_approx", "power_mc", "mc_se"]
    if args.out:
        _write_csv(args.out, header, rows)
    else:
        _emit_json([dict(zip(header, row)) for row in rows])
    return EXIT_OK


SCENARIOS_CHOICES = sorted(scenarios_mod.SCENARIOS) + ["deficiency"]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wmwdesign", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", help="approximate power at one design")
    _add_spec_args(p)
    p.add_argument("--omega", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--n2", type=int, help="second group size (with --m)")
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("optimal-design", help="power-maximizing allocation")
    _add_spec_args(p)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--out", help="write the power curve as CSV")
    p.set_defaults(func=_cmd_optimal_design)

    p = sub.add_parser("power-curve", help="power across allocations")
    _add_spec_args(p)
    p.add_argument("--grid", help="comma-separated allocation fractions")
    p.add_argument("--mc-trials", type=int, default=0,
                   help="add Monte Carlo columns with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write CSV here instead of JSON to stdout")
    p.set_defaults(func=_cmd_power_curve)

    p = sub.add_parser("deficiency", help="extra sample size needed at an allocation")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--f-spec")
    p.add_argument("--g-spec")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--side", choices=SIDES, default=ONE_SIDED_UPPER)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.set_defaults(func=_cmd_deficiency)

    p = sub.add_parser("exact-null", help="exact null distribution of U")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", help="write the pmf as CSV (columns: u, probability)")
    p.set_defaults(func=_cmd_exact_null)

    p = sub.add_parser("simulate", help="Monte Carlo power estimate")
    _add_spec_args(p)
    p.add_argument("--omega", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--test", choices=TESTS, default="wmw_exact")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("check-identities", help="residuals of the moment identities")
    p.add_argument("--f-spec", required=True)
    p.add_argument("--g-spec", required=True)
    p.set_defaults(func=_cmd_check_identities)

    p = sub.add_parser("reproduce", help="run a bundled scenario group")
    p.add_argument("--figure", required=True, choices=SCENARIOS_CHOICES)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out", help="write CSV here instead of JSON to stdout")
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureAccuracyError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TableSizeError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
