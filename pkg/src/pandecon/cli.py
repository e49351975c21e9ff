"""Command-line interface.

Subcommands: simulate, optimize, sweep, frontier, debt, validate. Every
file-writing command takes --out DIR and drops a manifest.json naming the tool
version, the scenario hash and the emitted files. Exit codes: 0 success, 1
invalid inputs (bad flags, malformed scenarios, infeasible requests), 2
runtime failure (diverging integration, unexpected errors).
"""

import argparse
import os
import sys

from . import __version__, debt, epidemic, losses, optimizer, reports, scenario
from .errors import IntegrationError, PandeconError, ValidationError


class _ArgumentError(ValidationError):
    """Bad command line; argparse's exit(2) is remapped to exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def _build_parser():
    parser = _Parser(prog="pandecon", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="pandecon " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        if out_required:
            p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="recorded in the manifest; the pipeline is deterministic")

    p = sub.add_parser("simulate", help="integrate one intervention path")
    common(p)
    p.add_argument("--path", required=True, help="comma-separated intensities, e.g. 0,2,1,0")

    p = sub.add_parser("optimize", help="search the path space for the CPL argmin")
    common(p)
    p.add_argument("--method", choices=("enum", "dp"), default="enum")

    p = sub.add_parser("sweep", help="re-rank paths over a lambda grid")
    common(p)
    p.add_argument("--lambdas", required=True, help="comma-separated ascending values")

    p = sub.add_parser("frontier", help="health-capital / income trade-off curve")
    common(p)
    p.add_argument("--gamma-exp", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=50)

    p = sub.add_parser("debt", help="generational ledger for emergency financing")
    p.add_argument("--config", required=True, help="ledger configuration JSON file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--compare", action="store_true",
                   help="run all three financing modes side by side")
    p.add_argument("--seed", type=int, default=None,
                   help="recorded in the manifest; the pipeline is deterministic")

    p = sub.add_parser("validate", help="parse and validate a scenario, print its hash")
    p.add_argument("--scenario", required=True, help="scenario JSON file")

    return parser


def _parse_path(text, n_phases):
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(
            "--path must be comma-separated integers (got %r)" % text
        ) from None
    if len(values) != n_phases:
        raise ValidationError(
            "--path has %d entries, expected length %d (one per phase)"
            % (len(values), n_phases)
        )
    return values


def _parse_lambdas(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(
            "--lambdas must be comma-separated numbers (got %r)" % text
        ) from None


def _outdir(args):
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _emit_manifest(out, command, args_dict, outputs, seed, extra):
    filename = os.path.join(out, "manifest.json")
    reports.write_manifest(filename, command, args_dict, outputs, seed=seed, extra=extra)


def _cmd_simulate(args):
    scn = scenario.load_scenario(args.scenario)
    path = _parse_path(args.path, scn.n_phases)
    schedule = scn.schedule()
    traj = epidemic.simulate(scn.epidemic, scn.effects, schedule, path)
    breakdown = losses.combined_loss(scn, path)
    peaks = epidemic.peak_stats(traj)
    day_income = losses.income_by_day(scn, path)

    out = _outdir(args)
    annual_income = scn.epidemic.horizon_days * scn.econ.y_peace
    el_share = breakdown.el / annual_income
    report = {
        "scenario": scn.name,
        "scenario_hash": scenario.scenario_hash(scn),
        "path": list(path),
        "boundaries": list(schedule.boundaries),
        "losses": reports.breakdown_dict(breakdown),
        "peaks": reports.peaks_dict(peaks),
        "el_share_of_annual_income": el_share,
        "el_pct_of_annual_income": "%.2f%%" % (100.0 * el_share),
    }
    reports.write_trajectory_csv(os.path.join(out, "trajectory.csv"), traj, day_income)
    reports.write_summary_csv(os.path.join(out, "summary.csv"), path, breakdown)
    reports.write_json(os.path.join(out, "report.json"), report)
    _emit_manifest(
        out,
        "simulate",
        {"scenario": args.scenario, "path": list(path)},
        ["trajectory.csv", "summary.csv", "report.json"],
        args.seed,
        {"scenario_hash": report["scenario_hash"], "path": reports.path_str(path)},
    )
    return 0


def _cmd_optimize(args):
    scn = scenario.load_scenario(args.scenario)
    method = {"enum": optimizer.optimize_enumerate, "dp": optimizer.optimize_dp}[args.method]
    result = method(scn)
    deviations = optimizer.deviation_check(scn, result.best_path)

    out = _outdir(args)
    report = {
        "scenario": scn.name,
        "scenario_hash": scenario.scenario_hash(scn),
        "method": result.method,
        "best_path": list(result.best_path),
        "best_loss": reports.breakdown_dict(result.best_loss),
        "deviations": deviations,
        "certified_single_deviation_optimal": all(d["delta_cpl"] >= 0 for d in deviations),
    }
    reports.write_ranking_csv(os.path.join(out, "ranking.csv"), result)
    reports.write_json(os.path.join(out, "report.json"), report)
    _emit_manifest(
        out,
        "optimize",
        {"scenario": args.scenario, "method": args.method},
        ["ranking.csv", "report.json"],
        args.seed,
        {
            "scenario_hash": report["scenario_hash"],
            "method": result.method,
            "best_path": reports.path_str(result.best_path),
        },
    )
    return 0


def _cmd_sweep(args):
    scn = scenario.load_scenario(args.scenario)
    grid = _parse_lambdas(args.lambdas)
    sweep = optimizer.lambda_sweep(scn, grid)

    out = _outdir(args)
    report = {
        "scenario": scn.name,
        "scenario_hash": scenario.scenario_hash(scn),
        "lambda_grid": list(sweep.lambda_grid),
        "entries": [
            {
                "lambda": e["lambda"],
                "path": list(e["path"]),
                "el": e["el"],
                "tsl": e["tsl"],
                "cpl": e["cpl"],
            }
            for e in sweep.entries
        ],
    }
    reports.write_sweep_csv(os.path.join(out, "sweep.csv"), sweep)
    reports.write_json(os.path.join(out, "report.json"), report)
    _emit_manifest(
        out,
        "sweep",
        {"scenario": args.scenario, "lambdas": list(sweep.lambda_grid)},
        ["sweep.csv", "report.json"],
        args.seed,
        {"scenario_hash": report["scenario_hash"]},
    )
    return 0


def _cmd_frontier(args):
    scn = scenario.load_scenario(args.scenario)
    points = losses.frontier(scn.econ, scn.effects, gamma_exp=args.gamma_exp, samples=args.samples)

    out = _outdir(args)
    reports.write_frontier_csv(os.path.join(out, "frontier.csv"), points)
    _emit_manifest(
        out,
        "frontier",
        {"scenario": args.scenario, "gamma_exp": args.gamma_exp, "samples": args.samples},
        ["frontier.csv"],
        args.seed,
        {"scenario_hash": scenario.scenario_hash(scn)},
    )
    return 0


def _cmd_debt(args):
    config = scenario.load_ledger_config(args.config)
    out = _outdir(args)
    config_hash = scenario.document_hash(scenario.ledger_config_to_dict(config))
    outputs = []
    if args.compare:
        comparison = debt.compare_financing(config)
        reports.write_comparison_csv(os.path.join(out, "comparison.csv"), comparison)
        text = "".join(
            reports.render_ledger_text(getattr(comparison, mode)) + "\n"
            for mode in debt.FINANCING_MODES
        )
        outputs += ["comparison.csv", "report.txt"]
    else:
        ledger = debt.run_ledger(config)
        reports.write_ledger_csv(os.path.join(out, "ledger.csv"), ledger)
        text = reports.render_ledger_text(ledger)
        outputs += ["ledger.csv", "report.txt"]
    with open(os.path.join(out, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    _emit_manifest(
        out,
        "debt",
        {"config": args.config, "compare": bool(args.compare)},
        outputs,
        args.seed,
        {"config_hash": config_hash},
    )
    return 0


def _cmd_validate(args):
    scn = scenario.load_scenario(args.scenario)
    boundaries = scn.schedule().boundaries
    print(
        "OK %s version=%s phases=%d boundaries=%s hash=%s"
        % (
            scn.name,
            scn.version,
            scn.n_phases,
            ",".join("%g" % b for b in boundaries),
            scenario.scenario_hash(scn),
        )
    )
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "optimize": _cmd_optimize,
    "sweep": _cmd_sweep,
    "frontier": _cmd_frontier,
    "debt": _cmd_debt,
    "validate": _cmd_validate,
}


def run_cli(argv=None):
    """Parse argv and run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except IntegrationError as exc:
        print("runtime error: %s" % exc, file=sys.stderr)
        return 2
    except PandeconError as exc:
        print("runtime error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort runtime failure
        print("runtime error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
