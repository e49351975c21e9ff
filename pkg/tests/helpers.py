"""Shared test utilities: an independent Euler oracle and seeded generators.

The oracle integrates the same ODE system as the engine with plain forward
Euler at a much finer step. It deliberately shares no code with the package
kernels (straight-line Python, its own phase lookup) so agreement is evidence,
not tautology.
"""

import numpy as np

from pandecon.epidemic import EpidemicParams, InterventionEffect
from pandecon.losses import EconomicParams
from pandecon.scenario import Scenario


def euler_oracle(params, effects, boundaries, path, h=1e-3):
    """Forward-Euler reference run; returns peak and attack-rate summaries."""
    n = int(round(params.horizon_days / h))
    s = params.population - params.initial_infected
    i = float(params.initial_infected)
    r = 0.0
    c = float(params.initial_infected)
    edges = list(boundaries) + [float("inf")]

    peak_rate = -1.0
    peak_time = 0.0
    phase = 0
    for k in range(n):
        t = k * h
        while t >= edges[phase]:
            phase += 1
        level = path[phase]
        beta = params.beta0 * (1.0 - effects.contact_cut[level])
        m = params.import_rate * (1.0 - effects.import_cut[level])
        f = beta * s * i / params.population
        rate = f + m
        if rate > peak_rate:
            peak_rate = rate
            peak_time = t
        s -= h * f
        r += h * params.gamma * i
        i += h * (f + m - params.gamma * i)
        c += h * rate
    return {
        "peak_rate": peak_rate,
        "peak_time": peak_time,
        "attack_rate": c / params.population,
        "total_deaths": params.ifr * c,
        "final_infected": i,
    }


def build_scenario(
    name="unit",
    population=1e6,
    initial_infected=10.0,
    beta0=0.25,
    gamma=0.1,
    ifr=0.01,
    import_rate=2.0,
    horizon_days=60,
    step_days=0.25,
    contact_cut=(0.0, 0.4, 0.8),
    import_cut=(0.0, 0.6, 0.95),
    boundaries=(15.0, 30.0, 45.0),
    y_peace=100.0,
    y_moral=95.0,
    y_min=70.0,
    lambda_=0.5,
    escalation_rate=0.0,
    pinned=None,
):
    """Small concrete scenario for unit tests; overrides keep call sites short."""
    return Scenario(
        name=name,
        version="1",
        epidemic=EpidemicParams(
            population=population,
            initial_infected=initial_infected,
            beta0=beta0,
            gamma=gamma,
            ifr=ifr,
            import_rate=import_rate,
            horizon_days=horizon_days,
            step_days=step_days,
        ),
        effects=InterventionEffect(contact_cut=contact_cut, import_cut=import_cut),
        boundaries=tuple(boundaries) if boundaries is not None else None,
        milestones=None,
        econ=EconomicParams(
            y_peace=y_peace,
            y_moral=y_moral,
            y_min=y_min,
            lambda_=lambda_,
            escalation_rate=escalation_rate,
        ),
        pinned_intensities=pinned,
    )


def random_scenario(rng, n_phases=4):
    """Seeded draw over a wide parameter box; always a valid scenario."""
    horizon = int(rng.integers(100, 201))
    while True:
        bounds = np.sort(rng.uniform(5.0, horizon - 5.0, size=n_phases - 1))
        if n_phases == 1 or np.all(np.diff(bounds) >= 2.0):
            break
    c1 = rng.uniform(0.2, 0.6)
    c2 = rng.uniform(c1 + 0.05, 0.97)
    i1 = rng.uniform(0.2, 0.7)
    i2 = rng.uniform(i1 + 0.05, 0.99)
    y_moral = rng.uniform(90.0, 99.0)
    y_min = rng.uniform(50.0, y_moral)
    return build_scenario(
        name="draw",
        initial_infected=float(rng.uniform(1.0, 100.0)),
        beta0=float(rng.uniform(0.12, 0.5)),
        gamma=float(rng.uniform(0.08, 0.2)),
        ifr=float(rng.uniform(0.002, 0.05)),
        import_rate=float(rng.uniform(0.0, 5.0)),
        horizon_days=horizon,
        contact_cut=(0.0, float(c1), float(c2)),
        import_cut=(0.0, float(i1), float(i2)),
        boundaries=tuple(float(b) for b in bounds),
        y_moral=float(y_moral),
        y_min=float(y_min),
        lambda_=float(rng.uniform(0.0, 2.0)),
        escalation_rate=float(rng.choice([0.0, rng.uniform(0.0, 0.3)])),
    )


def random_path(rng, n_phases, n_levels=3):
    return tuple(int(v) for v in rng.integers(0, n_levels, size=n_phases))
