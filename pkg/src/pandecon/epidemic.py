"""Epidemic engine: an SIR system with importation under phased interventions.

The model splits the horizon into phases separated by fixed boundary times.
Each phase runs one intervention intensity from a small ordered alphabet
(0 = none, 1 = moderate, 2 = lockdown by default). Intensity i rescales the
transmission rate by (1 - contact_cut[i]) and the importation inflow by
(1 - import_cut[i]). Integration is fixed-step RK4, so trajectories are
deterministic and bit-reproducible.

Conventions:
  * a phase boundary belongs to the later phase (left-edge rule);
  * cumulative infections C count both domestic transmission and imports,
    with C(0) = initial_infected;
  * deaths are ifr * C, applied with no reporting lag.
"""

from dataclasses import dataclass

import numpy as np

from . import backends
from .errors import ScheduleDerivationError, ValidationError

_GRID_RTOL = 1e-9


def _check(cond, message):
    if not cond:
        raise ValidationError(message)


def _float_tuple(values):
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class EpidemicParams:
    """Biological and numerical constants for one population."""

    population: float
    initial_infected: float
    beta0: float
    gamma: float
    ifr: float
    import_rate: float
    horizon_days: int
    step_days: float = 0.25

    def validate(self):
        _check(self.population > 0, "population must be positive (got %r)" % (self.population,))
        _check(
            0 <= self.initial_infected <= self.population,
            "initial_infected must lie in [0, population] (got %r)" % (self.initial_infected,),
        )
        _check(self.beta0 >= 0, "beta0 must be non-negative (got %r)" % (self.beta0,))
        _check(self.gamma >= 0, "gamma must be non-negative (got %r)" % (self.gamma,))
        _check(0 <= self.ifr <= 1, "ifr must lie in [0, 1] (got %r)" % (self.ifr,))
        _check(self.import_rate >= 0, "import_rate must be non-negative (got %r)" % (self.import_rate,))
        _check(
            isinstance(self.horizon_days, int) and self.horizon_days > 0,
            "horizon_days must be a positive integer (got %r)" % (self.horizon_days,),
        )
        _check(0 < self.step_days <= 1, "step_days must lie in (0, 1] (got %r)" % (self.step_days,))
        n = self.horizon_days / self.step_days
        _check(
            abs(n - round(n)) <= _GRID_RTOL * max(n, 1.0),
            "step_days %r must divide horizon_days %r exactly" % (self.step_days, self.horizon_days),
        )

    @property
    def n_steps(self):
        return int(round(self.horizon_days / self.step_days))


@dataclass(frozen=True)
class InterventionEffect:
    """Per-intensity transmission and importation cuts.

    Index k gives the fractional reduction applied at intensity k. Intensity 0
    must leave the system untouched, and stronger levels can only cut more.
    """

    contact_cut: tuple
    import_cut: tuple

    def __post_init__(self):
        object.__setattr__(self, "contact_cut", _float_tuple(self.contact_cut))
        object.__setattr__(self, "import_cut", _float_tuple(self.import_cut))

    def validate(self):
        cc, ic = self.contact_cut, self.import_cut
        _check(len(cc) == len(ic), "contact_cut and import_cut must have equal length")
        _check(len(cc) >= 1, "at least one intervention level is required")
        _check(cc[0] == 0.0, "contact_cut[0] must be 0 (got %r)" % (cc[0],))
        _check(ic[0] == 0.0, "import_cut[0] must be 0 (got %r)" % (ic[0],))
        for name, cuts in (("contact_cut", cc), ("import_cut", ic)):
            for k, v in enumerate(cuts):
                _check(0 <= v <= 1, "%s[%d] must lie in [0, 1] (got %r)" % (name, k, v))
            _check(
                all(a <= b for a, b in zip(cuts, cuts[1:])),
                "%s must be non-decreasing in intensity" % name,
            )

    @property
    def n_levels(self):
        return len(self.contact_cut)


@dataclass(frozen=True)
class PhaseSchedule:
    """Strictly ascending interior boundary times; n boundaries mean n+1 phases."""

    boundaries: tuple

    def __post_init__(self):
        object.__setattr__(self, "boundaries", _float_tuple(self.boundaries))

    def validate(self, horizon_days):
        b = self.boundaries
        _check(
            all(x < y for x, y in zip(b, b[1:])),
            "schedule boundaries must be strictly ascending (got %r)" % (b,),
        )
        _check(
            all(0 < x < horizon_days for x in b),
            "schedule boundaries must lie strictly inside (0, %r) (got %r)" % (horizon_days, b),
        )

    @property
    def n_phases(self):
        return len(self.boundaries) + 1


@dataclass(frozen=True)
class Milestones:
    """Thresholds for deriving a schedule from the uncontrolled baseline."""

    spread_threshold: float = 1e-4
    tail_threshold: float = 0.1

    def validate(self):
        _check(
            0 < self.spread_threshold < 1,
            "spread_threshold must lie in (0, 1) (got %r)" % (self.spread_threshold,),
        )
        _check(
            0 < self.tail_threshold < 1,
            "tail_threshold must lie in (0, 1) (got %r)" % (self.tail_threshold,),
        )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution on the step grid (arrays of length n_steps + 1)."""

    times: np.ndarray
    susceptible: np.ndarray
    infected: np.ndarray
    recovered: np.ndarray
    new_infections: np.ndarray
    cumulative_infections: np.ndarray
    cumulative_deaths: np.ndarray
    intensity_at: np.ndarray
    population: float
    step_days: float

    @property
    def total_deaths(self):
        return float(self.cumulative_deaths[-1])

    @property
    def attack_rate(self):
        return float(self.cumulative_infections[-1] / self.population)


@dataclass(frozen=True)
class PeakStats:
    peak_time: float
    peak_height: float
    second_peak_height: float
    attack_rate: float
    total_deaths: float


def validate_path(path, n_phases, n_levels):
    """Coerce an intensity path to a tuple of ints and check its invariants."""
    try:
        out = tuple(int(p) for p in path)
    except (TypeError, ValueError):
        raise ValidationError("path must be a sequence of integers (got %r)" % (path,)) from None
    _check(
        len(out) == n_phases,
        "path has %d entries, expected length %d (one per phase)" % (len(out), n_phases),
    )
    for k, p in enumerate(out):
        _check(
            0 <= p < n_levels,
            "path[%d] = %d is outside the intensity alphabet [0, %d]" % (k, p, n_levels - 1),
        )
    return out


def phase_of(boundaries, times):
    """Phase index for each time, boundaries belonging to the later phase."""
    return np.searchsorted(np.asarray(boundaries), np.asarray(times), side="right")


def _assemble(params, times, intensity_at, beta_samples, import_samples, raw):
    s, i, r, c = raw
    new_inf = beta_samples * s * i / params.population + import_samples
    return Trajectory(
        times=times,
        susceptible=s,
        infected=i,
        recovered=r,
        new_infections=new_inf,
        cumulative_infections=c,
        cumulative_deaths=params.ifr * c,
        intensity_at=intensity_at,
        population=params.population,
        step_days=params.step_days,
    )


def simulate(params, effects, schedule, path):
    """Integrate one intervention path and return the sampled trajectory."""
    params.validate()
    effects.validate()
    schedule.validate(params.horizon_days)
    path = validate_path(path, schedule.n_phases, effects.n_levels)

    n = params.n_steps
    h = params.step_days
    times = np.arange(n + 1) * h
    path_arr = np.asarray(path, dtype=np.intp)
    intensity_at = path_arr[phase_of(schedule.boundaries, times)]

    cc = np.asarray(effects.contact_cut)
    ic = np.asarray(effects.import_cut)
    beta_samples = params.beta0 * (1.0 - cc[intensity_at])
    import_samples = params.import_rate * (1.0 - ic[intensity_at])

    raw = backends.integrate(
        params.population - params.initial_infected,
        float(params.initial_infected),
        0.0,
        float(params.initial_infected),
        params.population,
        params.gamma,
        h,
        beta_samples[:-1],
        import_samples[:-1],
    )
    return _assemble(params, times, intensity_at, beta_samples, import_samples, raw)


def baseline(params, effects, schedule):
    """Trajectory under the all-zero path (no intervention anywhere)."""
    return simulate(params, effects, schedule, (0,) * schedule.n_phases)


def _uncontrolled(params):
    """Constant-parameter run used for milestone derivation (no schedule needed)."""
    params.validate()
    n = params.n_steps
    times = np.arange(n + 1) * params.step_days
    beta_samples = np.full(n + 1, float(params.beta0))
    import_samples = np.full(n + 1, float(params.import_rate))
    raw = backends.integrate(
        params.population - params.initial_infected,
        float(params.initial_infected),
        0.0,
        float(params.initial_infected),
        params.population,
        params.gamma,
        params.step_days,
        beta_samples[:-1],
        import_samples[:-1],
    )
    intensity_at = np.zeros(n + 1, dtype=np.intp)
    return _assemble(params, times, intensity_at, beta_samples, import_samples, raw)


def derive_schedule(params, milestones=Milestones()):
    """Place the three default boundaries at epidemic milestones.

    Milestones are read off the uncontrolled baseline: t1 when prevalence I/N
    first exceeds spread_threshold, t2 at the first peak of the new-infection
    rate, t3 when that rate first falls below tail_threshold * peak after the
    peak. Raises ScheduleDerivationError when the ordering 0 < t1 < t2 < t3 <
    horizon cannot be established; explicit boundaries are the fallback.
    """
    milestones.validate()
    traj = _uncontrolled(params)

    prevalence = traj.infected / params.population
    above = np.nonzero(prevalence > milestones.spread_threshold)[0]
    if len(above) == 0:
        raise ScheduleDerivationError(
            "prevalence never exceeds spread_threshold %r; "
            "supply explicit boundaries instead" % (milestones.spread_threshold,)
        )
    k1 = int(above[0])

    nf = traj.new_infections
    k2 = int(np.argmax(nf))
    peak = float(nf[k2])

    tail = np.nonzero(nf[k2 + 1 :] < milestones.tail_threshold * peak)[0]
    if len(tail) == 0:
        raise ScheduleDerivationError(
            "new-infection rate never falls below tail_threshold %r of its peak "
            "within the horizon; supply explicit boundaries instead" % (milestones.tail_threshold,)
        )
    k3 = k2 + 1 + int(tail[0])

    t1, t2, t3 = (float(traj.times[k]) for k in (k1, k2, k3))
    if not (0 < t1 < t2 < t3 < params.horizon_days):
        raise ScheduleDerivationError(
            "derived milestones are not strictly ordered inside the horizon "
            "(t1=%g, t2=%g, t3=%g, horizon=%g); supply explicit boundaries instead"
            % (t1, t2, t3, params.horizon_days)
        )
    return PhaseSchedule((t1, t2, t3))


def peak_stats(traj, window=3):
    """Summary statistics of a trajectory's new-infection curve.

    The second peak is the highest strict local maximum after the global one:
    a sample that the rate climbed into for `window` consecutive steps and fell
    away from for another `window`. Degenerate flat curves report zero peaks.
    """
    nf = traj.new_infections
    kg = int(np.argmax(nf))
    peak_height = float(nf[kg])

    diffs = np.diff(nf)
    rising = diffs > 0.0
    falling = diffs < 0.0
    second = 0.0
    for k in range(max(kg + 1, window), len(nf) - window):
        if rising[k - window : k].all() and falling[k : k + window].all():
            second = max(second, float(nf[k]))
    return PeakStats(
        peak_time=float(traj.times[kg]),
        peak_height=peak_height,
        second_peak_height=second,
        attack_rate=traj.attack_rate,
        total_deaths=traj.total_deaths,
    )
