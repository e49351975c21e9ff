"""Loss accounting on top of the epidemic engine.

Three quantities drive everything:

  MSL  maximum social loss: deaths under the all-zero path;
  SG   saved grief per phase: the drop in total deaths from switching that
       phase on, holding earlier phases at their chosen levels and later
       phases at zero (a sequential prefix decomposition, so the phase values
       sum exactly to MSL - TSL);
  TSL  total social loss: realized deaths under the full path.

The economic side turns intensities into daily incomes: intensity 0 earns
y_peace, intensity 1 earns y_moral, intensity 2 earns y_min plus an escalation
credit that grows with consecutive lockdown days but never exceeds y_moral.
EL is the summed shortfall against y_peace; the combined loss is
CPL = EL + lambda * TSL.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import epidemic
from .errors import ValidationError

_LEVEL_LABELS = ("peacetime", "moral_imperative", "lockdown")


@dataclass(frozen=True)
class EconomicParams:
    """Daily incomes per intervention level plus the death-weight lambda."""

    y_peace: float
    y_moral: float
    y_min: float
    lambda_: float
    escalation_rate: float = 0.0

    def validate(self):
        if not self.y_peace > 0:
            raise ValidationError("y_peace must be positive (got %r)" % (self.y_peace,))
        if not self.y_peace >= self.y_moral >= self.y_min >= 0:
            raise ValidationError(
                "incomes must satisfy y_peace >= y_moral >= y_min >= 0 "
                "(got %r, %r, %r)" % (self.y_peace, self.y_moral, self.y_min)
            )
        if self.lambda_ < 0:
            raise ValidationError("lambda must be non-negative (got %r)" % (self.lambda_,))
        if self.escalation_rate < 0:
            raise ValidationError(
                "escalation_rate must be non-negative (got %r)" % (self.escalation_rate,)
            )


@dataclass(frozen=True)
class LossBreakdown:
    """Full loss decomposition of one path. sl equals tsl by construction."""

    msl: float
    sl: float
    tsl: float
    sg_per_phase: tuple
    el: float
    cpl: float

    def to_dict(self):
        return {
            "msl": self.msl,
            "sl": self.sl,
            "tsl": self.tsl,
            "sg_per_phase": list(self.sg_per_phase),
            "el": self.el,
            "cpl": self.cpl,
        }


@dataclass(frozen=True)
class FrontierPoint:
    intensity: float
    health_capital: float
    income: float
    label: str = ""


def day_counts(schedule, horizon_days):
    """Number of whole days owned by each phase (day d sits at [d, d+1))."""
    owners = epidemic.phase_of(schedule.boundaries, np.arange(horizon_days))
    return np.bincount(owners, minlength=schedule.n_phases).tolist()


def _phase_el(econ, intensity, n_days, streak_in):
    """Closed-form economic loss of one phase.

    Returns (loss, streak_out) where streak_out is the consecutive-lockdown-day
    count carried into the next phase. Used by both optimizers so their EL
    arithmetic matches bitwise; income_by_day is the day-loop reference.
    """
    if intensity == 0:
        return 0.0, 0
    if intensity == 1:
        return n_days * (econ.y_peace - econ.y_moral), 0
    if intensity != 2:
        raise ValidationError(
            "economic loss is defined for intensities 0..2 (got %r)" % (intensity,)
        )
    esc = econ.escalation_rate
    if esc == 0.0:
        return n_days * (econ.y_peace - econ.y_min), streak_in + n_days
    # Days with y_min + esc*(streak_in + d) < y_moral earn the escalating rate;
    # the rest are capped at y_moral.
    m = math.ceil((econ.y_moral - econ.y_min) / esc - streak_in)
    m = min(max(m, 0), n_days)
    uncapped = m * (econ.y_peace - econ.y_min) - esc * (m * streak_in + m * (m - 1) / 2.0)
    capped = (n_days - m) * (econ.y_peace - econ.y_moral)
    return uncapped + capped, streak_in + n_days


def economic_loss(scenario, path):
    """Cumulative income shortfall against y_peace over the horizon."""
    schedule = scenario.schedule()
    path = epidemic.validate_path(path, schedule.n_phases, scenario.effects.n_levels)
    counts = day_counts(schedule, scenario.epidemic.horizon_days)
    total = 0.0
    streak = 0
    for intensity, days in zip(path, counts):
        el_p, streak = _phase_el(scenario.econ, intensity, days, streak)
        total += el_p
    return total


def income_by_day(scenario, path):
    """Daily income series (length horizon_days); day-loop reference for EL."""
    schedule = scenario.schedule()
    path = epidemic.validate_path(path, schedule.n_phases, scenario.effects.n_levels)
    econ = scenario.econ
    horizon = scenario.epidemic.horizon_days
    owners = epidemic.phase_of(schedule.boundaries, np.arange(horizon))
    income = np.empty(horizon)
    streak = 0
    for d in range(horizon):
        intensity = path[owners[d]]
        if intensity == 0:
            income[d] = econ.y_peace
            streak = 0
        elif intensity == 1:
            income[d] = econ.y_moral
            streak = 0
        else:
            income[d] = min(econ.y_moral, econ.y_min + econ.escalation_rate * streak)
            streak += 1
    return income


def _deaths(scenario, path):
    traj = epidemic.simulate(scenario.epidemic, scenario.effects, scenario.schedule(), path)
    return traj.total_deaths


def social_losses(scenario, path):
    """MSL, TSL and the per-phase SG decomposition for one path.

    SG is computed on the prefix chain: sg[p] = deaths(prefix through p-1) -
    deaths(prefix through p), prefixes padded with zeros. Identical prefixes
    share one simulation, so a zero-intensity phase scores exactly 0.
    """
    schedule = scenario.schedule()
    path = epidemic.validate_path(path, schedule.n_phases, scenario.effects.n_levels)
    n = schedule.n_phases

    cache = {}

    def deaths_of(prefix):
        if prefix not in cache:
            cache[prefix] = _deaths(scenario, prefix)
        return cache[prefix]

    msl = deaths_of((0,) * n)
    sg = []
    for p in range(1, n + 1):
        before = path[: p - 1] + (0,) * (n - p + 1)
        after = path[:p] + (0,) * (n - p)
        sg.append(deaths_of(before) - deaths_of(after))
    tsl = deaths_of(path)
    return {"msl": msl, "tsl": tsl, "sg_per_phase": tuple(sg)}


def combined_loss(scenario, path):
    """Full LossBreakdown for one path under the scenario's lambda."""
    social = social_losses(scenario, path)
    el = economic_loss(scenario, path)
    cpl = el + scenario.econ.lambda_ * social["tsl"]
    return LossBreakdown(
        msl=social["msl"],
        sl=social["tsl"],
        tsl=social["tsl"],
        sg_per_phase=social["sg_per_phase"],
        el=el,
        cpl=cpl,
    )


def frontier_point(econ, effects, gamma_exp, intensity):
    """One point on the health-capital / income trade-off curve.

    Health capital H interpolates contact_cut piecewise-linearly between the
    integer levels and is normalized so the top level maps to 1. Income then
    follows y_peace - (y_peace - y_min) * H**gamma_exp; gamma_exp > 1 makes the
    first unit of protection nearly free and the last one expensive.
    """
    top = effects.contact_cut[-1]
    if top <= 0:
        raise ValidationError(
            "contact_cut at the top intensity must be positive to normalize health capital"
        )
    levels = np.arange(effects.n_levels)
    h = float(np.interp(intensity, levels, np.asarray(effects.contact_cut)) / top)
    income = econ.y_peace - (econ.y_peace - econ.y_min) * h**gamma_exp
    if float(intensity).is_integer():
        k = int(intensity)
        label = _LEVEL_LABELS[k] if k < len(_LEVEL_LABELS) else "level%d" % k
    else:
        label = ""
    return FrontierPoint(intensity=float(intensity), health_capital=h, income=income, label=label)


def frontier(econ, effects, gamma_exp=2.0, samples=50):
    """Sampled trade-off curve from intensity 0 to the top level."""
    econ.validate()
    effects.validate()
    if not gamma_exp > 1:
        raise ValidationError("gamma_exp must exceed 1 (got %r)" % (gamma_exp,))
    if samples < 2:
        raise ValidationError("samples must be at least 2 (got %r)" % (samples,))
    top = effects.n_levels - 1
    grid = np.union1d(np.linspace(0.0, top, samples), np.arange(top + 1))
    return [frontier_point(econ, effects, gamma_exp, i) for i in grid]
