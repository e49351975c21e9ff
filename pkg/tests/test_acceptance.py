"""Acceptance suite: one test per shipped guarantee, one printed line each.

Every test prints "[PASS] criterion N: ..." (or FAIL) with the measured
quantity, so a verification run can be audited from the pytest output alone.
Tolerances are pinned here and nowhere looser.
"""

import dataclasses
import json
import time

import numpy as np

from helpers import euler_oracle, random_path, random_scenario

from pandecon import debt, epidemic, losses, optimizer
from pandecon.cli import run_cli
from pandecon.scenario import fixture_path, load_fixture

EPIDEMIC_FIXTURES = (
    "default",
    "early_seeding",
    "early_containment",
    "late_response",
    "premature_relaxation",
)


def _report(num, label, ok, detail):
    print("[%s] criterion %d: %s (%s)" % ("PASS" if ok else "FAIL", num, label, detail))
    assert ok, "criterion %d: %s (%s)" % (num, label, detail)


def _deaths(scn, path):
    traj = epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), path)
    return traj.total_deaths


def _with_lambda(scn, lam):
    return dataclasses.replace(scn, econ=dataclasses.replace(scn.econ, lambda_=lam))


def test_criterion_01_telescoping_identity_under_load():
    rng = np.random.default_rng(40)
    started = time.monotonic()
    worst = 0.0
    for _ in range(1000):
        n_phases = int(rng.integers(1, 6))
        scn = random_scenario(rng, n_phases=n_phases)
        path = random_path(rng, n_phases)
        social = losses.social_losses(scn, path)
        gap = abs(social["msl"] - sum(social["sg_per_phase"]) - social["tsl"])
        assert gap <= 1e-9 * social["msl"]
        worst = max(worst, gap / social["msl"])
    elapsed = time.monotonic() - started
    _report(
        1,
        "telescoping |MSL - sum(SG) - TSL| <= 1e-9*MSL over 1000 draws",
        elapsed < 60.0,
        "worst relative gap %.2e, %.1fs (budget 60s)" % (worst, elapsed),
    )


def test_criterion_02_default_baseline_single_peaked():
    scn = load_fixture("default")
    stats = epidemic.peak_stats(
        epidemic.baseline(scn.epidemic, scn.effects, scn.schedule())
    )
    ok = stats.peak_height > 0.0 and stats.second_peak_height == 0.0
    _report(
        2,
        "default baseline is single-peaked",
        ok,
        "peak %.0f/day at t=%.2f, second peak %.1f"
        % (stats.peak_height, stats.peak_time, stats.second_peak_height),
    )


def test_criterion_03_saturated_phase_one_is_insensitive():
    scn = load_fixture("early_seeding")
    d1 = _deaths(scn, (1, 0, 0, 0))
    d2 = _deaths(scn, (2, 0, 0, 0))
    rel = abs(d1 - d2) / min(d1, d2)
    _report(
        3,
        "early_seeding deaths under (1,0,0,0) vs (2,0,0,0) differ <= 5%",
        rel <= 0.05,
        "relative difference %.3f%%" % (100 * rel),
    )


def test_criterion_04_growth_phase_has_leverage():
    scn = load_fixture("early_seeding")
    d1 = _deaths(scn, (0, 1, 0, 0))
    d2 = _deaths(scn, (0, 2, 0, 0))
    rel = abs(d1 - d2) / max(d1, d2)
    _report(
        4,
        "early_seeding deaths under (0,1,0,0) vs (0,2,0,0) differ >= 30%",
        rel >= 0.30,
        "relative difference %.1f%%" % (100 * rel),
    )


def test_criterion_05_premature_relaxation_resurges():
    scn = load_fixture("premature_relaxation")
    ease = epidemic.peak_stats(
        epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), (0, 2, 0, 0))
    )
    hold = epidemic.peak_stats(
        epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), (0, 2, 2, 0))
    )
    ratio = ease.second_peak_height / ease.peak_height
    ok = ratio >= 0.20 and hold.second_peak_height == 0.0
    _report(
        5,
        "easing after lockdown resurges (>= 20% of first peak), holding does not",
        ok,
        "easing second/first %.2f, holding second peak %.1f"
        % (ratio, hold.second_peak_height),
    )


def test_criterion_06_expected_optima_found_and_certified():
    targets = {
        "early_containment": (1, 1, 0, 0),
        "late_response": (0, 2, 1, 0),
    }
    details = []
    ok = True
    for name, target in targets.items():
        scn = load_fixture(name)
        started = time.monotonic()
        result = optimizer.optimize_enumerate(scn)
        deviations = optimizer.deviation_check(scn, result.best_path)
        elapsed = time.monotonic() - started
        certified = all(d["delta_cpl"] >= 0.0 for d in deviations)
        ok &= result.best_path == target and certified and elapsed < 10.0
        details.append(
            "%s -> %s in %.2fs%s"
            % (
                name,
                ",".join(map(str, result.best_path)),
                elapsed,
                " certified" if certified else " UNCERTIFIED",
            )
        )
    if "late_response" in targets:
        ok &= load_fixture("late_response").pinned_intensities[0] == 0
    _report(
        6,
        "enumeration argmins match the calibrated scenarios (budget 10s each)",
        ok,
        "; ".join(details),
    )


def test_criterion_07_dp_matches_enumeration():
    rng = np.random.default_rng(41)
    worst = 0.0
    for _ in range(100):
        n_phases = int(rng.integers(2, 6))
        scn = random_scenario(rng, n_phases=n_phases)
        enum = optimizer.optimize_enumerate(scn)
        dp = optimizer.optimize_dp(scn)
        assert enum.best_path == dp.best_path
        a = enum.ranking[0].cpl
        b = dp.ranking[0].cpl
        gap = abs(a - b) / max(abs(a), 1.0)
        assert gap <= 1e-9
        worst = max(worst, gap)
    _report(
        7,
        "shared-prefix search equals enumeration on 100 random scenarios",
        True,
        "identical argmin every time, worst relative CPL gap %.2e" % worst,
    )


def test_criterion_08_zero_death_weight_means_no_intervention():
    best = {}
    for name in EPIDEMIC_FIXTURES:
        scn = _with_lambda(load_fixture(name), 0.0)
        result = optimizer.optimize_enumerate(scn)
        best[name] = result.best_path
        assert result.best_path == (0,) * scn.n_phases
    _report(
        8,
        "lambda = 0 selects the all-zero path on every packaged scenario",
        True,
        "; ".join("%s -> %s" % (k, ",".join(map(str, v))) for k, v in best.items()),
    )


def test_criterion_09_death_weight_grid_is_monotone():
    scn = load_fixture("default")
    grid = tuple(np.linspace(0.0, 3.0, 20))
    sweep = optimizer.lambda_sweep(scn, grid)
    tsl = [e["tsl"] for e in sweep.entries]
    el = [e["el"] for e in sweep.entries]
    deaths_ok = all(b <= a for a, b in zip(tsl, tsl[1:]))
    el_ok = all(b >= a for a, b in zip(el, el[1:]))
    _report(
        9,
        "20-point lambda grid: optimal deaths non-increasing, EL non-decreasing",
        deaths_ok and el_ok,
        "deaths %.0f -> %.0f, EL %.0f -> %.0f" % (tsl[0], tsl[-1], el[0], el[-1]),
    )


def test_criterion_10_rk4_agrees_with_fine_euler():
    scn = load_fixture("default")
    schedule = scn.schedule()
    path = (0, 0, 0, 0)
    traj = epidemic.simulate(scn.epidemic, scn.effects, schedule, path)
    stats = epidemic.peak_stats(traj)
    oracle = euler_oracle(scn.epidemic, scn.effects, schedule.boundaries, path, h=1e-3)
    rel = {
        "peak height": abs(stats.peak_height - oracle["peak_rate"]) / oracle["peak_rate"],
        "peak time": abs(stats.peak_time - oracle["peak_time"]) / oracle["peak_time"],
        "attack rate": abs(traj.attack_rate - oracle["attack_rate"]) / oracle["attack_rate"],
    }
    ok = all(v <= 0.005 for v in rel.values())
    _report(
        10,
        "RK4 (h=0.25) within 0.5% of forward Euler (h=1e-3)",
        ok,
        ", ".join("%s %.3f%%" % (k, 100 * v) for k, v in rel.items()),
    )


def test_criterion_11_ledger_identities_close():
    worst = 0.0
    base = dict(
        periods=3, cohort_income=100.0, gov_spending=30.0,
        financing="internal_debt", interest_rate=0.05,
        crowding_out_share=0.4, marginal_product=0.12,
        ricardian=False, bondholder_share=0.4,
    )
    for mode in debt.FINANCING_MODES:
        for ricardian in (False, True):
            for periods in (2, 3, 6):
                cfg = debt.LedgerConfig(
                    **{**base, "financing": mode, "ricardian": ricardian, "periods": periods}
                )
                residuals = debt.identity_residuals(debt.run_ledger(cfg))
                worst = max(worst, *residuals.values())

    neutral = debt.run_ledger(
        debt.LedgerConfig(**{**base, "crowding_out_share": 0.0})
    )
    worst = max(worst, abs(neutral.aggregate_consumption[-1] - neutral.output[-1]))

    external = debt.run_ledger(debt.LedgerConfig(**{**base, "financing": "external_debt"}))
    service = debt.debt_service_due(external.config)
    worst = max(
        worst, abs(external.aggregate_consumption[-1] - (100.0 - service))
    )

    ricardian_run = debt.run_ledger(debt.LedgerConfig(**{**base, "ricardian": True}))
    taxed = debt.run_ledger(debt.LedgerConfig(**{**base, "financing": "tax"}))
    worst = max(
        worst,
        max(
            abs(a - b)
            for a, b in zip(ricardian_run.aggregate_consumption, taxed.aggregate_consumption)
        ),
    )

    for financing in ("tax", "internal_debt"):
        demo = debt.wartime_no_capital_demo(100.0, 40.0, financing=financing)
        worst = max(worst, abs(demo["period1_consumption_drop"] - 40.0))

    _report(
        11,
        "ledger identities, external burden, Ricardian equivalence, no-capital"
        " currentness all within 1e-9",
        worst <= 1e-9,
        "worst residual %.2e" % worst,
    )


def test_criterion_12_two_percent_lockdown_year(tmp_path):
    out = tmp_path / "year"
    code = run_cli(
        [
            "simulate",
            "--scenario", str(fixture_path("docs_two_percent")),
            "--out", str(out),
            "--path", "2,2,2,2",
        ]
    )
    assert code == 0
    with open(out / "report.json") as fh:
        report = json.load(fh)
    share = report["el_share_of_annual_income"]
    ok = abs(share - 0.02) <= 1e-12 and report["el_pct_of_annual_income"] == "2.00%"
    _report(
        12,
        "full-year lockdown scenario reports a 2% income loss",
        ok,
        "share %.12f, rendered %r" % (share, report["el_pct_of_annual_income"]),
    )
