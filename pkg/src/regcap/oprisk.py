"""Operational-risk capital: basic-indicator and standardized approaches.

The indicator is average gross income over three consecutive years, after
the standard exclusions (provisions, realized banking-book results,
extraordinary items, insurance income). The firm-wide charge is alpha times
that average; the standardized charge applies a per-business-line beta to
per-line averages. Advanced measurement is an extension hook only.

Negative-income years have no sourced treatment, so a policy object decides:
the default drops negative years from both numerator and denominator (all
negative means zero income), the alternative averages all three as-is.

Rounding: the firm-wide average is itself a money amount (rounded once at
minor-unit scale), and each charge rounds once after its full product. The
standardized total rounds the exact rational sum of the eight line charges,
so it may differ from the sum of the individually rounded line figures by a
minor unit; the total is authoritative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import (
    DowngradeWithoutOverride,
    IncompleteHistory,
    MissingLine,
    UnregisteredAdvancedHook,
    ValidationFailure,
)
from .money import Money, round_half_even

# Firm-wide gross-income multiplier for the basic-indicator approach.
ALPHA = Fraction(15, 100)


class BusinessLine(enum.Enum):
    CORPORATE_FINANCE = "corporate_finance"
    TRADING_AND_SALES = "trading_and_sales"
    RETAIL_BANKING = "retail_banking"
    COMMERCIAL_BANKING = "commercial_banking"
    PAYMENT_AND_SETTLEMENT = "payment_and_settlement"
    AGENCY_SERVICES = "agency_services"
    ASSET_MANAGEMENT = "asset_management"
    RETAIL_BROKERAGE = "retail_brokerage"

    @property
    def key(self) -> str:
        return self.value

    @classmethod
    def from_key(cls, key: str) -> BusinessLine:
        try:
            return cls(key.strip().lower())
        except ValueError:
            raise ValueError(f"unknown business line {key!r}") from None


@dataclass(frozen=True)
class BetaTable:
    """Per-line multipliers; a table must price all eight lines."""

    betas: Mapping[BusinessLine, Fraction]
    source: str = field(default="builtin", compare=False)

    def __post_init__(self) -> None:
        absent = [line.key for line in BusinessLine if line not in self.betas]
        if absent:
            raise MissingLine(absent)
        for line, beta in self.betas.items():
            if not 0 <= beta <= 1:
                raise ValueError(f"beta for {line.key} outside [0, 1]")

    def beta(self, line: BusinessLine) -> Fraction:
        return self.betas[line]


DEFAULT_BETAS = BetaTable(
    betas={
        BusinessLine.CORPORATE_FINANCE: Fraction(18, 100),
        BusinessLine.TRADING_AND_SALES: Fraction(18, 100),
        BusinessLine.RETAIL_BANKING: Fraction(12, 100),
        BusinessLine.COMMERCIAL_BANKING: Fraction(15, 100),
        BusinessLine.PAYMENT_AND_SETTLEMENT: Fraction(18, 100),
        BusinessLine.AGENCY_SERVICES: Fraction(15, 100),
        BusinessLine.ASSET_MANAGEMENT: Fraction(12, 100),
        BusinessLine.RETAIL_BROKERAGE: Fraction(12, 100),
    },
)


class NegativeGiPolicy(enum.Enum):
    EXCLUDE_NEGATIVE_YEARS = "exclude_negative_years"
    INCLUDE_ALL = "include_all"

    @property
    def key(self) -> str:
        return self.value


@dataclass(frozen=True)
class GrossIncomeRecord:
    """A raw income figure with its excluded items retained for audit.

    ``effective`` is what enters the capital formulas: the raw amount less
    provisions, realized banking-book results, extraordinary items, and
    insurance income. Raw and effective may both be negative.
    """

    amount: Money
    provisions: Money | None = None
    banking_book_results: Money | None = None
    extraordinary_items: Money | None = None
    insurance_income: Money | None = None

    @property
    def effective(self) -> Money:
        value = self.amount
        for excluded in (
            self.provisions,
            self.banking_book_results,
            self.extraordinary_items,
            self.insurance_income,
        ):
            if excluded is not None:
                value = value - excluded
        return value


@dataclass(frozen=True)
class AnnualIncome:
    """One year's gross income: firm-wide total and/or per-line figures."""

    year: int
    total: GrossIncomeRecord | None = None
    per_line: Mapping[BusinessLine, GrossIncomeRecord] = field(default_factory=dict)

    def effective_total(self) -> Money:
        if self.total is not None:
            return self.total.effective
        if self.per_line:
            values = [record.effective for record in self.per_line.values()]
            total = values[0]
            for value in values[1:]:
                total = total + value
            return total
        raise IncompleteHistory(f"year {self.year} has no gross-income data")


@dataclass(frozen=True)
class IncomeHistory:
    """Exactly three consecutive annual records, oldest first."""

    years: tuple[AnnualIncome, AnnualIncome, AnnualIncome]

    def __post_init__(self) -> None:
        if len(self.years) != 3:
            raise IncompleteHistory(
                f"need exactly three annual records, got {len(self.years)}"
            )
        labels = [annual.year for annual in self.years]
        if labels != [labels[0], labels[0] + 1, labels[0] + 2]:
            raise IncompleteHistory(
                f"years must be consecutive and ascending, got {labels}"
            )
        violations = []
        for annual in self.years:
            if annual.total is not None and annual.per_line:
                per_line_sum = sum(
                    record.effective.units for record in annual.per_line.values()
                )
                if per_line_sum != annual.total.effective.units:
                    violations.append(
                        f"year {annual.year}: per-line income sums to "
                        f"{per_line_sum}, total says {annual.total.effective.units}"
                        " (minor units)"
                    )
        if violations:
            raise ValidationFailure(violations)

    @classmethod
    def from_totals(cls, first_year: int, totals: Iterable[Money]) -> IncomeHistory:
        """Convenience: build a totals-only history from three amounts."""
        annuals = tuple(
            AnnualIncome(year=first_year + i, total=GrossIncomeRecord(amount=amount))
            for i, amount in enumerate(totals)
        )
        if len(annuals) != 3:
            raise IncompleteHistory(
                f"need exactly three annual records, got {len(annuals)}"
            )
        return cls(years=annuals)

    @property
    def currency(self) -> str:
        return self.years[0].effective_total().currency

    @property
    def scale(self) -> int:
        return self.years[0].effective_total().scale

    def span(self) -> str:
        return f"{self.years[0].year}-{self.years[-1].year}"


def _policy_mean_units(
    unit_values: list[int], policy: NegativeGiPolicy
) -> Fraction:
    """Mean of annual figures in minor units, exact, per negative-year policy."""
    if policy is NegativeGiPolicy.EXCLUDE_NEGATIVE_YEARS:
        kept = [units for units in unit_values if units >= 0]
        if not kept:
            return Fraction(0)
        return Fraction(sum(kept), len(kept))
    return Fraction(sum(unit_values), len(unit_values))


def average_gross_income(
    history: IncomeHistory,
    policy: NegativeGiPolicy = NegativeGiPolicy.EXCLUDE_NEGATIVE_YEARS,
) -> Money:
    """Three-year average of effective gross income under the policy."""
    totals = [annual.effective_total() for annual in history.years]
    mean = _policy_mean_units([t.units for t in totals], policy)
    return Money(round_half_even(mean), totals[0].currency, totals[0].scale)


def bia_capital(gi: Money) -> Money:
    """Basic-indicator charge: alpha times average income, floored at zero."""
    if gi.units <= 0:
        return Money.zero(gi.currency, gi.scale)
    return gi.scaled(ALPHA)


@dataclass(frozen=True)
class TsaResult:
    """Standardized-approach outcome; total is the authoritative figure."""

    per_line: Mapping[BusinessLine, Money]
    total: Money


def tsa_capital(
    history: IncomeHistory,
    betas: BetaTable = DEFAULT_BETAS,
    policy: NegativeGiPolicy = NegativeGiPolicy.EXCLUDE_NEGATIVE_YEARS,
) -> TsaResult:
    """Standardized charge: per-line average income times the line's beta.

    Income is measured per line, never firm-wide. Every line must appear in
    every year (explicit zeros allowed). The total rounds the exact rational
    sum of line charges once; a negative aggregate (possible only when
    negative years are included) offsets to zero, never to a capital credit.
    """
    absent = sorted(
        {
            line.key
            for annual in history.years
            for line in BusinessLine
            if line not in annual.per_line
        }
    )
    if absent:
        raise MissingLine(absent)
    currency, scale = history.currency, history.scale
    per_line: dict[BusinessLine, Money] = {}
    total_exact = Fraction(0)
    for line in BusinessLine:
        units = [annual.per_line[line].effective.units for annual in history.years]
        charge_exact = betas.beta(line) * _policy_mean_units(units, policy)
        per_line[line] = Money(round_half_even(charge_exact), currency, scale)
        total_exact += charge_exact
    total_units = max(round_half_even(total_exact), 0)
    return TsaResult(per_line=per_line, total=Money(total_units, currency, scale))


class ApproachKind(enum.Enum):
    BASIC_INDICATOR = "basic_indicator"
    STANDARDIZED = "standardized"
    ADVANCED = "advanced"


# Complexity order for the downgrade rule: reverting to a simpler approach
# needs an explicit supervisory override.
_COMPLEXITY = {
    ApproachKind.BASIC_INDICATOR: 0,
    ApproachKind.STANDARDIZED: 1,
    ApproachKind.ADVANCED: 2,
}


@dataclass(frozen=True)
class OpRiskApproach:
    """One of the three approaches; advanced carries its hook name."""

    kind: ApproachKind
    hook: str | None = None

    def __post_init__(self) -> None:
        if (self.kind is ApproachKind.ADVANCED) != (self.hook is not None):
            raise ValueError("hook name is required exactly for the advanced approach")

    @classmethod
    def basic_indicator(cls) -> OpRiskApproach:
        return cls(ApproachKind.BASIC_INDICATOR)

    @classmethod
    def standardized(cls) -> OpRiskApproach:
        return cls(ApproachKind.STANDARDIZED)

    @classmethod
    def advanced_hook(cls, name: str) -> OpRiskApproach:
        return cls(ApproachKind.ADVANCED, hook=name)

    @property
    def complexity(self) -> int:
        return _COMPLEXITY[self.kind]

    @property
    def key(self) -> str:
        if self.kind is ApproachKind.ADVANCED:
            return f"advanced:{self.hook}"
        return self.kind.value


@dataclass(frozen=True)
class ApproachAssignment:
    """Per-scope approach choices, allowing mixed use across activities."""

    approaches: Mapping[str, OpRiskApproach]
    previous: Mapping[str, OpRiskApproach] | None = None
    downgrade_override: bool = False

    def __post_init__(self) -> None:
        if not self.approaches:
            raise ValueError("at least one scope must be assigned an approach")

    @classmethod
    def single(cls, approach: OpRiskApproach, scope: str = "firm") -> ApproachAssignment:
        return cls(approaches={scope: approach})

    def check_downgrades(self) -> None:
        if self.previous is None or self.downgrade_override:
            return
        downgraded = sorted(
            scope
            for scope, current in self.approaches.items()
            if scope in self.previous
            and current.complexity < self.previous[scope].complexity
        )
        if downgraded:
            raise DowngradeWithoutOverride(
                "supervisory override required to revert to a simpler approach "
                f"for scope(s): {', '.join(downgraded)}"
            )


AdvancedEstimator = Callable[[IncomeHistory], Money]

_ADVANCED_HOOKS: dict[str, AdvancedEstimator] = {}


def register_advanced_hook(name: str, estimator: AdvancedEstimator) -> None:
    """Register an external advanced-measurement estimator by name."""
    _ADVANCED_HOOKS[name] = estimator


def advanced_hook(name: str) -> AdvancedEstimator:
    try:
        return _ADVANCED_HOOKS[name]
    except KeyError:
        raise UnregisteredAdvancedHook(
            f"no advanced estimator registered as {name!r}"
        ) from None


def registered_advanced_hooks() -> tuple[str, ...]:
    return tuple(sorted(_ADVANCED_HOOKS))


def oprisk_capital(
    assignment: ApproachAssignment | OpRiskApproach,
    histories: Mapping[str, IncomeHistory] | IncomeHistory,
    betas: BetaTable = DEFAULT_BETAS,
    policy: NegativeGiPolicy = NegativeGiPolicy.EXCLUDE_NEGATIVE_YEARS,
) -> Money:
    """Total operational charge across scopes, per each scope's approach.

    Scopes are processed in sorted order so the total is deterministic.
    """
    if isinstance(assignment, OpRiskApproach):
        assignment = ApproachAssignment.single(assignment)
    if isinstance(histories, IncomeHistory):
        histories = {scope: histories for scope in assignment.approaches}
    assignment.check_downgrades()
    total: Money | None = None
    for scope in sorted(assignment.approaches):
        approach = assignment.approaches[scope]
        try:
            history = histories[scope]
        except KeyError:
            raise IncompleteHistory(f"no income history for scope {scope!r}") from None
        if approach.kind is ApproachKind.BASIC_INDICATOR:
            charge = bia_capital(average_gross_income(history, policy))
        elif approach.kind is ApproachKind.STANDARDIZED:
            charge = tsa_capital(history, betas, policy).total
        else:
            charge = advanced_hook(approach.hook)(history)
            if charge.is_negative:
                raise ValueError(
                    f"advanced estimator {approach.hook!r} returned a negative charge"
                )
        total = charge if total is None else total + charge
    return total
