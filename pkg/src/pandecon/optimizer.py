"""Search over intervention paths.

Two methods minimize CPL = EL + lambda * TSL over the path space:

  * optimize_enumerate integrates every admissible path end to end;
  * optimize_dp walks the phase tree depth-first, threading the exact boundary
    state (S, I, R, C) and the lockdown streak, so shared prefixes are
    integrated once. No state discretization is involved, and the leaf costs
    use the same arithmetic as enumeration, so the two rankings agree bitwise.

Paths are compared by (cpl, path): ties go to the lexicographically smallest
path. Scenarios may pin individual phases to fixed intensities; pinned phases
are excluded from the search and from deviation certificates.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import backends, epidemic, losses
from .errors import CapacityError, ValidationError

MAX_PATHS = 1_000_000


@dataclass(frozen=True)
class RankedPath:
    path: tuple
    el: float
    tsl: float
    cpl: float


@dataclass(frozen=True)
class OptimizationResult:
    """Ranking of the admissible path space; best_path is ranking[0].path."""

    best_path: tuple
    best_loss: losses.LossBreakdown
    ranking: tuple
    method: str


@dataclass(frozen=True)
class LambdaSweep:
    """Per-lambda argmin paths with their loss components."""

    lambda_grid: tuple
    entries: tuple


def _candidates(scenario):
    """Per-phase intensity choices, honoring pinned phases."""
    n_phases = scenario.n_phases
    levels = range(scenario.effects.n_levels)
    pinned = scenario.pinned_intensities
    if pinned is None:
        return [list(levels) for _ in range(n_phases)]
    out = []
    for p, pin in enumerate(pinned):
        out.append(list(levels) if pin is None else [int(pin)])
    return out


def _check_capacity(candidates):
    size = 1
    for c in candidates:
        size *= len(c)
    if size > MAX_PATHS:
        raise CapacityError(
            "path space holds %d paths, above the exhaustive-search cap of %d; "
            "reduce phases or pin intensities" % (size, MAX_PATHS)
        )
    return size


def _evaluate_all(scenario):
    """(path, el, tsl) for every admissible path, in lexicographic order."""
    candidates = _check_and_candidates(scenario)
    out = []
    for path in itertools.product(*candidates):
        el = losses.economic_loss(scenario, path)
        tsl = losses._deaths(scenario, path)
        out.append((path, el, tsl))
    return out


def _check_and_candidates(scenario):
    scenario.validate()
    candidates = _candidates(scenario)
    _check_capacity(candidates)
    return candidates


def _rank(triples, lambda_):
    ranking = [
        RankedPath(path=p, el=el, tsl=tsl, cpl=el + lambda_ * tsl) for p, el, tsl in triples
    ]
    ranking.sort(key=lambda r: (r.cpl, r.path))
    return tuple(ranking)


def _result(scenario, ranking, method):
    best = ranking[0]
    return OptimizationResult(
        best_path=best.path,
        best_loss=losses.combined_loss(scenario, best.path),
        ranking=ranking,
        method=method,
    )


def optimize_enumerate(scenario):
    """Exhaustive search; the ranking covers the whole admissible space."""
    triples = _evaluate_all(scenario)
    return _result(scenario, _rank(triples, scenario.econ.lambda_), "enumeration")


def optimize_dp(scenario):
    """Shared-prefix search over the phase tree; same ranking as enumeration."""
    candidates = _check_and_candidates(scenario)
    params = scenario.epidemic
    effects = scenario.effects
    econ = scenario.econ
    schedule = scenario.schedule()
    n_phases = schedule.n_phases

    h = params.step_days
    t_left = np.arange(params.n_steps) * h
    steps_per_phase = np.bincount(
        epidemic.phase_of(schedule.boundaries, t_left), minlength=n_phases
    )
    days_per_phase = losses.day_counts(schedule, params.horizon_days)

    # Constant per-step parameter arrays, one pair per (phase, intensity).
    segment_params = {}
    for p in range(n_phases):
        for i in candidates[p]:
            beta_eff = params.beta0 * (1.0 - effects.contact_cut[i])
            import_eff = params.import_rate * (1.0 - effects.import_cut[i])
            segment_params[(p, i)] = (
                np.full(int(steps_per_phase[p]), beta_eff),
                np.full(int(steps_per_phase[p]), import_eff),
            )

    leaves = []

    def visit(p, state, streak, el_acc, prefix):
        if p == n_phases:
            tsl = params.ifr * state[3]
            leaves.append((prefix, el_acc, tsl))
            return
        for i in candidates[p]:
            el_p, streak_out = losses._phase_el(econ, i, days_per_phase[p], streak)
            beta_arr, import_arr = segment_params[(p, i)]
            s, inf, r, c = backends.integrate(
                state[0], state[1], state[2], state[3],
                params.population, params.gamma, h, beta_arr, import_arr,
            )
            next_state = (float(s[-1]), float(inf[-1]), float(r[-1]), float(c[-1]))
            visit(p + 1, next_state, streak_out, el_acc + el_p, prefix + (i,))

    initial = (
        params.population - params.initial_infected,
        float(params.initial_infected),
        0.0,
        float(params.initial_infected),
    )
    visit(0, initial, 0, 0.0, ())
    return _result(scenario, _rank(leaves, econ.lambda_), "dp")


def deviation_check(scenario, path):
    """Single-phase deviation certificate.

    For every free phase and every alternative intensity, reports the CPL
    change from switching just that phase. A path is certified optimal in the
    single-deviation sense when every delta_cpl is non-negative.
    """
    scenario.validate()
    schedule = scenario.schedule()
    path = epidemic.validate_path(path, schedule.n_phases, scenario.effects.n_levels)
    lambda_ = scenario.econ.lambda_
    pinned = scenario.pinned_intensities or (None,) * schedule.n_phases

    def cpl_of(p):
        return losses.economic_loss(scenario, p) + lambda_ * losses._deaths(scenario, p)

    base = cpl_of(path)
    out = []
    for p in range(schedule.n_phases):
        if pinned[p] is not None:
            continue
        for alt in range(scenario.effects.n_levels):
            if alt == path[p]:
                continue
            trial = path[:p] + (alt,) + path[p + 1 :]
            out.append(
                {"phase": p + 1, "intensity": alt, "delta_cpl": cpl_of(trial) - base}
            )
    return out


def lambda_sweep(scenario, lambdas):
    """Argmin path per lambda; path evaluations are shared across the grid."""
    grid = tuple(float(v) for v in lambdas)
    if not grid:
        raise ValidationError("lambda grid must be non-empty")
    if any(v < 0 for v in grid):
        raise ValidationError("lambda values must be non-negative (got %r)" % (min(grid),))
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValidationError("lambda grid must be strictly ascending")

    triples = _evaluate_all(scenario)
    entries = []
    for lam in grid:
        best = min(triples, key=lambda t: (t[1] + lam * t[2], t[0]))
        path, el, tsl = best
        entries.append(
            {"lambda": lam, "path": path, "el": el, "tsl": tsl, "cpl": el + lam * tsl}
        )
    return LambdaSweep(lambda_grid=grid, entries=tuple(entries))
