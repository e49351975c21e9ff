"""pandecon: deterministic epidemic-economic simulation and policy search.

The package couples a phased SIR model with an income-loss ledger, searches
intervention paths for the combined-loss argmin, and carries a small
generational accounting model for how emergency spending is financed.
"""

__version__ = "0.1.0"

from .debt import (  # noqa: F401
    FinancingComparison,
    GenerationalLedger,
    LedgerConfig,
    compare_financing,
    run_ledger,
    wartime_no_capital_demo,
)
from .epidemic import (  # noqa: F401
    EpidemicParams,
    InterventionEffect,
    Milestones,
    PeakStats,
    PhaseSchedule,
    Trajectory,
    baseline,
    derive_schedule,
    peak_stats,
    simulate,
)
from .errors import (  # noqa: F401
    CapacityError,
    InfeasibleLedgerError,
    IntegrationError,
    PandeconError,
    ScenarioError,
    ScheduleDerivationError,
    ValidationError,
)
from .losses import (  # noqa: F401
    EconomicParams,
    FrontierPoint,
    LossBreakdown,
    combined_loss,
    economic_loss,
    frontier,
    social_losses,
)
from .optimizer import (  # noqa: F401
    LambdaSweep,
    OptimizationResult,
    deviation_check,
    lambda_sweep,
    optimize_dp,
    optimize_enumerate,
)
from .scenario import (  # noqa: F401
    Scenario,
    load_fixture,
    load_scenario,
    save_scenario,
    scenario_hash,
)
