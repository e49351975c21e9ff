"""Exception hierarchy.

ValidationError and its subclasses mean the inputs were unacceptable (CLI exit
code 1). IntegrationError means a run blew up at runtime (exit code 2).
"""


class PandeconError(Exception):
    """Base class for everything raised deliberately by this package."""


class ValidationError(PandeconError):
    """A parameter, path, or configuration value violates its contract."""


class ScenarioError(ValidationError):
    """A scenario or ledger document failed to parse or carried unknown fields."""


class ScheduleDerivationError(ValidationError):
    """Milestone thresholds were never crossed, or came out of order."""


class CapacityError(ValidationError):
    """The requested path space is too large to search exhaustively."""


class InfeasibleLedgerError(ValidationError):
    """Government spending exceeds what the first period can finance."""


class IntegrationError(PandeconError):
    """The ODE state became non-finite during integration."""
