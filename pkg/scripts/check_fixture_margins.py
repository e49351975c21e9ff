"""Report how much headroom each packaged fixture has on its design targets.

The shipped fixtures were calibrated numerically and then frozen; this script
recomputes the quantities the test suite asserts and prints the margins, so a
recalibration (say after changing the integrator defaults) can be checked at a
glance. Exit code 1 when any target is missed.
"""

import sys

import numpy as np

from pandecon import epidemic, losses, optimizer
from pandecon.scenario import load_fixture


def deaths(scn, path):
    traj = epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), path)
    return traj.total_deaths


def check(label, ok, detail):
    print("%-8s %-52s %s" % ("ok" if ok else "MISS", label, detail))
    return ok


def main():
    good = True

    scn = load_fixture("default")
    stats = epidemic.peak_stats(
        epidemic.baseline(scn.epidemic, scn.effects, scn.schedule())
    )
    good &= check(
        "default: single-peaked baseline",
        stats.second_peak_height == 0.0 and stats.peak_height > 0,
        "peak=%.0f second=%.0f boundaries=%s"
        % (stats.peak_height, stats.second_peak_height, scn.schedule().boundaries),
    )

    scn = load_fixture("early_seeding")
    d10, d20 = deaths(scn, (1, 0, 0, 0)), deaths(scn, (2, 0, 0, 0))
    d01, d02 = deaths(scn, (0, 1, 0, 0)), deaths(scn, (0, 2, 0, 0))
    m3 = abs(d10 - d20) / min(d10, d20)
    m4 = abs(d01 - d02) / max(d01, d02)
    good &= check("early_seeding: phase-1 saturation", m3 <= 0.05, "reldiff=%.4f (cap 0.05)" % m3)
    good &= check("early_seeding: phase-2 leverage", m4 >= 0.30, "reldiff=%.4f (floor 0.30)" % m4)

    scn = load_fixture("premature_relaxation")
    ease = epidemic.peak_stats(
        epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), (0, 2, 0, 0))
    )
    hold = epidemic.peak_stats(
        epidemic.simulate(scn.epidemic, scn.effects, scn.schedule(), (0, 2, 2, 0))
    )
    ratio = ease.second_peak_height / ease.peak_height
    good &= check(
        "premature_relaxation: resurgence on easing",
        ratio >= 0.20,
        "second/first=%.3f (floor 0.20)" % ratio,
    )
    good &= check(
        "premature_relaxation: none when held",
        hold.second_peak_height == 0.0,
        "second=%.1f" % hold.second_peak_height,
    )

    for name, target in (("early_containment", (1, 1, 0, 0)), ("late_response", (0, 2, 1, 0))):
        scn = load_fixture(name)
        triples = optimizer._evaluate_all(scn)
        lam = scn.econ.lambda_
        ranked = sorted(triples, key=lambda t: (t[1] + lam * t[2], t[0]))
        best = ranked[0][0]
        gap = (ranked[1][1] + lam * ranked[1][2]) / (ranked[0][1] + lam * ranked[0][2]) - 1.0
        good &= check(
            "%s: argmin" % name,
            best == target,
            "best=%s runner-up gap=%.2f%%" % (",".join(map(str, best)), 100 * gap),
        )
        lo = hi = None
        for l in np.geomspace(lam / 10, lam * 10, 120):
            if min(triples, key=lambda t: (t[1] + l * t[2], t[0]))[0] == target:
                lo = l if lo is None else lo
                hi = l
        good &= check(
            "%s: lambda window" % name,
            lo is not None and lo < lam < hi,
            "[%.3f, %.3f] around %.3f" % (lo or 0, hi or 0, lam),
        )

    scn = load_fixture("docs_two_percent")
    el = losses.economic_loss(scn, (2, 2, 2, 2))
    share = el / (scn.epidemic.horizon_days * scn.econ.y_peace)
    good &= check(
        "docs_two_percent: lockdown-year share",
        abs(share - 0.02) < 1e-12,
        "share=%.6f" % share,
    )

    return 0 if good else 1


if __name__ == "__main__":
    sys.exit(main())
