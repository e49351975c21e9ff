"""Output emission: CSV tables, JSON reports, text ledgers, run manifests.

Floats are written with repr, the shortest string that round-trips to the same
double, so CSV consumers can reproduce in-memory values exactly.
"""

import csv
import json
import math
from dataclasses import asdict

from . import __version__
from .debt import FINANCING_MODES, debt_service_due


def fmt(value):
    """Round-trip-safe scalar formatting for CSV cells."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    return repr(float(value))


def path_str(path):
    return ",".join(str(int(p)) for p in path)


def write_csv(filename, header, rows):
    with open(filename, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])


def write_json(filename, payload):
    with open(filename, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_trajectory_csv(filename, traj, day_income):
    """Per-sample table; daily_income repeats the owning day's income."""
    horizon = len(day_income)
    rows = []
    for k in range(len(traj.times)):
        t = float(traj.times[k])
        day = min(int(math.floor(t)), horizon - 1)
        rows.append(
            (
                t,
                float(traj.susceptible[k]),
                float(traj.infected[k]),
                float(traj.recovered[k]),
                float(traj.new_infections[k]),
                float(traj.cumulative_deaths[k]),
                int(traj.intensity_at[k]),
                float(day_income[day]),
            )
        )
    write_csv(
        filename,
        ["t", "S", "I", "R", "new_infections", "cumulative_deaths", "intensity", "daily_income"],
        rows,
    )


def write_summary_csv(filename, path, breakdown):
    n = len(breakdown.sg_per_phase)
    header = ["path", "msl", "tsl"] + ["sg%d" % (p + 1) for p in range(n)] + ["el", "cpl"]
    row = (
        [path_str(path), breakdown.msl, breakdown.tsl]
        + list(breakdown.sg_per_phase)
        + [breakdown.el, breakdown.cpl]
    )
    write_csv(filename, header, [row])


def write_ranking_csv(filename, result):
    rows = [
        (rank + 1, path_str(r.path), r.el, r.tsl, r.cpl)
        for rank, r in enumerate(result.ranking)
    ]
    write_csv(filename, ["rank", "path", "el", "tsl", "cpl"], rows)


def write_sweep_csv(filename, sweep):
    rows = [
        (e["lambda"], path_str(e["path"]), e["el"], e["tsl"], e["cpl"])
        for e in sweep.entries
    ]
    write_csv(filename, ["lambda", "path", "el", "tsl", "cpl"], rows)


def write_frontier_csv(filename, points):
    rows = [(p.intensity, p.health_capital, p.income, p.label) for p in points]
    write_csv(filename, ["intensity", "health_capital", "income", "label"], rows)


def write_ledger_csv(filename, ledger):
    header = ["period"] + list(ledger.COLUMNS)
    rows = []
    for t in range(ledger.config.periods):
        rows.append([t + 1] + [getattr(ledger, col)[t] for col in ledger.COLUMNS])
    write_csv(filename, header, rows)


def write_comparison_csv(filename, comparison):
    rows = comparison.rows()
    header = ["period"]
    for mode in FINANCING_MODES:
        header += [mode + "_consumption", mode + "_bondholder", mode + "_nonholder"]
    table = [[row[col] for col in header] for row in rows]
    write_csv(filename, header, table)


def render_ledger_text(ledger):
    """Fixed-width table of the ledger, one period per row."""
    cfg = ledger.config
    lines = [
        "generational ledger: financing=%s periods=%d" % (cfg.financing, cfg.periods),
        "cohort_income=%g gov_spending=%g interest_rate=%g" % (
            cfg.cohort_income, cfg.gov_spending, cfg.interest_rate),
    ]
    if cfg.financing != "tax":
        lines.append("debt service due in final period: %g" % debt_service_due(cfg))
    short = {
        "output": "output",
        "taxes": "taxes",
        "debt_service": "service",
        "transfers_to_domestic_bondholders": "transfers",
        "payments_abroad": "abroad",
        "investment": "invest",
        "gov_purchases": "gov",
        "foreign_borrowing": "borrow",
        "aggregate_consumption": "consume",
        "bondholder_consumption": "bond_c",
        "nonholder_consumption": "non_c",
    }
    cols = list(ledger.COLUMNS)
    width = 10
    header = "period".rjust(7) + "".join(short[c].rjust(width) for c in cols)
    lines.append(header)
    for t in range(cfg.periods):
        cells = "".join(("%.2f" % getattr(ledger, c)[t]).rjust(width) for c in cols)
        lines.append(str(t + 1).rjust(7) + cells)
    return "\n".join(lines) + "\n"


def breakdown_dict(breakdown):
    return breakdown.to_dict()


def peaks_dict(stats):
    return asdict(stats)


def write_manifest(filename, command, args_dict, outputs, seed=None, extra=None):
    """Run manifest: tool version, command, inputs, emitted files."""
    from . import backends

    payload = {
        "tool": "pandecon",
        "version": __version__,
        "command": command,
        "backend": backends.backend_name(),
        "seed": seed,
        "arguments": args_dict,
        "outputs": sorted(outputs),
    }
    if extra:
        payload.update(extra)
    write_json(filename, payload)
