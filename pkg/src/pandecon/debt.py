"""Generational accounting of war-style emergency spending.

A cohort earns cohort_income per period for `periods` periods. The government
spends gov_spending in period 1 and finances it by taxation, internal debt, or
external debt. Debt carries simple interest and is repaid in one bullet in the
final period: service = G * (1 + r * (periods - 1)).

All ledger columns are deviations from the no-spending baseline, so two
identities close every period:

  household   consumption = output - taxes + transfers - payments_abroad - investment
  resource    output + foreign_borrowing = consumption + gov_purchases
                                           + investment + payments_abroad

Internal debt can crowd out capital: a crowding_out_share of the issue displaces
investment in period 1 and lowers output by marginal_product times the displaced
capital from period 2 on. Ricardian households undo this by saving the issue
themselves, which also restores the tax-finance consumption profile. The
distribution split assigns bond purchases, redemptions and the investment swing
to a bondholder class holding bondholder_share of income.
"""

from dataclasses import dataclass, replace

from .errors import InfeasibleLedgerError, ValidationError

FINANCING_MODES = ("tax", "internal_debt", "external_debt")


@dataclass(frozen=True)
class LedgerConfig:
    periods: int
    cohort_income: float
    gov_spending: float
    financing: str
    interest_rate: float = 0.0
    crowding_out_share: float = 0.0
    marginal_product: float = 0.0
    ricardian: bool = False
    bondholder_share: float = 0.5

    def validate(self):
        if not (isinstance(self.periods, int) and self.periods >= 2):
            raise ValidationError("periods must be an integer >= 2 (got %r)" % (self.periods,))
        if self.cohort_income <= 0:
            raise ValidationError("cohort_income must be positive (got %r)" % (self.cohort_income,))
        if self.gov_spending < 0:
            raise ValidationError("gov_spending must be non-negative (got %r)" % (self.gov_spending,))
        if self.financing not in FINANCING_MODES:
            raise ValidationError(
                "financing must be one of %s (got %r)" % (", ".join(FINANCING_MODES), self.financing)
            )
        if self.interest_rate < 0:
            raise ValidationError("interest_rate must be non-negative (got %r)" % (self.interest_rate,))
        if not 0 <= self.crowding_out_share <= 1:
            raise ValidationError(
                "crowding_out_share must lie in [0, 1] (got %r)" % (self.crowding_out_share,)
            )
        if self.marginal_product < 0:
            raise ValidationError(
                "marginal_product must be non-negative (got %r)" % (self.marginal_product,)
            )
        if not 0 < self.bondholder_share <= 1:
            raise ValidationError(
                "bondholder_share must lie in (0, 1] (got %r)" % (self.bondholder_share,)
            )


@dataclass(frozen=True)
class GenerationalLedger:
    """Per-period flow columns (tuples of length config.periods)."""

    config: LedgerConfig
    output: tuple
    taxes: tuple
    debt_service: tuple
    transfers_to_domestic_bondholders: tuple
    payments_abroad: tuple
    investment: tuple
    gov_purchases: tuple
    foreign_borrowing: tuple
    aggregate_consumption: tuple
    bondholder_consumption: tuple
    nonholder_consumption: tuple

    COLUMNS = (
        "output",
        "taxes",
        "debt_service",
        "transfers_to_domestic_bondholders",
        "payments_abroad",
        "investment",
        "gov_purchases",
        "foreign_borrowing",
        "aggregate_consumption",
        "bondholder_consumption",
        "nonholder_consumption",
    )


def debt_service_due(config):
    """Bullet repayment with simple interest, due in the final period."""
    return config.gov_spending * (1.0 + config.interest_rate * (config.periods - 1))


def run_ledger(config):
    """Populate the ledger for one financing mode."""
    config.validate()
    if config.gov_spending > config.cohort_income:
        raise InfeasibleLedgerError(
            "gov_spending %r exceeds first-period output %r"
            % (config.gov_spending, config.cohort_income)
        )

    k = config.periods
    y = config.cohort_income
    g = config.gov_spending
    mode = config.financing
    service = debt_service_due(config) if mode != "tax" else 0.0

    # Crowding out needs an actual domestic bond issue absorbed by savers.
    kappa = (
        config.crowding_out_share
        if (mode == "internal_debt" and not config.ricardian)
        else 0.0
    )
    displaced = kappa * g

    output = [y] + [y - config.marginal_product * displaced] * (k - 1)
    taxes = [0.0] * k
    debt_service = [0.0] * k
    transfers = [0.0] * k
    abroad = [0.0] * k
    investment = [0.0] * k
    gov_purchases = [0.0] * k
    borrowing = [0.0] * k

    gov_purchases[0] = g
    if mode == "tax":
        taxes[0] = g
    elif mode == "internal_debt":
        transfers[0] = -g
        investment[0] = -displaced
        taxes[-1] = service
        transfers[-1] = service
        debt_service[-1] = service
    else:
        borrowing[0] = g
        abroad[-1] = service
        debt_service[-1] = service

    consumption = [
        output[t] - taxes[t] + transfers[t] - abroad[t] - investment[t] for t in range(k)
    ]

    share = config.bondholder_share
    bond = [
        share * output[t] - share * taxes[t] + transfers[t] - share * abroad[t] - investment[t]
        for t in range(k)
    ]
    non = [(1.0 - share) * (output[t] - taxes[t] - abroad[t]) for t in range(k)]

    return GenerationalLedger(
        config=config,
        output=tuple(output),
        taxes=tuple(taxes),
        debt_service=tuple(debt_service),
        transfers_to_domestic_bondholders=tuple(transfers),
        payments_abroad=tuple(abroad),
        investment=tuple(investment),
        gov_purchases=tuple(gov_purchases),
        foreign_borrowing=tuple(borrowing),
        aggregate_consumption=tuple(consumption),
        bondholder_consumption=tuple(bond),
        nonholder_consumption=tuple(non),
    )


def identity_residuals(ledger):
    """Worst absolute violation of the closing identities (should be ~0)."""
    cfg = ledger.config
    household = max(
        abs(
            ledger.aggregate_consumption[t]
            - (
                ledger.output[t]
                - ledger.taxes[t]
                + ledger.transfers_to_domestic_bondholders[t]
                - ledger.payments_abroad[t]
                - ledger.investment[t]
            )
        )
        for t in range(cfg.periods)
    )
    resource = max(
        abs(
            ledger.output[t]
            + ledger.foreign_borrowing[t]
            - (
                ledger.aggregate_consumption[t]
                + ledger.gov_purchases[t]
                + ledger.investment[t]
                + ledger.payments_abroad[t]
            )
        )
        for t in range(cfg.periods)
    )
    split = max(
        abs(
            ledger.bondholder_consumption[t]
            + ledger.nonholder_consumption[t]
            - ledger.aggregate_consumption[t]
        )
        for t in range(cfg.periods)
    )
    return {"household": household, "resource": resource, "split": split}


@dataclass(frozen=True)
class FinancingComparison:
    """The same shock run under all three financing modes."""

    tax: GenerationalLedger
    internal_debt: GenerationalLedger
    external_debt: GenerationalLedger

    def rows(self):
        """Per-period table: aggregate consumption and the class split per mode."""
        out = []
        for t in range(self.tax.config.periods):
            row = {"period": t + 1}
            for mode in FINANCING_MODES:
                ledger = getattr(self, mode)
                row[mode + "_consumption"] = ledger.aggregate_consumption[t]
                row[mode + "_bondholder"] = ledger.bondholder_consumption[t]
                row[mode + "_nonholder"] = ledger.nonholder_consumption[t]
            out.append(row)
        return out


def compare_financing(config):
    """Run the same configuration under each financing mode."""
    return FinancingComparison(
        tax=run_ledger(replace(config, financing="tax")),
        internal_debt=run_ledger(replace(config, financing="internal_debt")),
        external_debt=run_ledger(replace(config, financing="external_debt")),
    )


def wartime_no_capital_demo(cohort_income, gov_spending, financing="internal_debt"):
    """Two-period, no-capital economy: the cost lands when the money is spent.

    With nothing to invest in, no interest and no foreign sector, period-1
    consumption falls by exactly gov_spending whether the government taxes or
    borrows at home; debt only reshuffles the final-period flows. External
    financing is rejected because the demonstration assumes a closed economy.
    """
    if financing == "external_debt":
        raise ValidationError(
            "external financing is unavailable in the closed-economy demonstration"
        )
    config = LedgerConfig(
        periods=2,
        cohort_income=cohort_income,
        gov_spending=gov_spending,
        financing=financing,
        interest_rate=0.0,
        crowding_out_share=0.0,
        marginal_product=0.0,
    )
    ledger = run_ledger(config)
    drop = cohort_income - ledger.aggregate_consumption[0]
    return {
        "financing": financing,
        "gov_spending": gov_spending,
        "period1_consumption_drop": drop,
        "final_period_consumption": ledger.aggregate_consumption[-1],
    }
