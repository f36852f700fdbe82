"""Standardized credit-risk weighting.

Risk-weighted assets from external ratings: each exposure is looked up in a
(counterparty class x rating bucket) weight table, off-balance items are first
converted to credit equivalents via a conversion-factor table, and the
portfolio total is the exact sum of per-line amounts.

The built-in weight table carries two range cells on the bank row; a
BankOptionPolicy picks the low or high end for both at once. Per-line amounts
round half-to-even at minor-unit scale once, after the full product.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import MissingCell, UnknownCategory
from .model import (
    MINIMUM_CAPITAL_RATIO,
    CounterpartyClass,
    Exposure,
    Portfolio,
    RatingBucket,
)
from .money import Money, sum_money


class BankOptionPolicy(enum.Enum):
    """Resolution rule for the bank row's two range cells.

    One policy applies to both range cells; they are never mixed.
    """

    LOW_END = "low_end"
    HIGH_END = "high_end"

    @property
    def key(self) -> str:
        return self.value


@dataclass(frozen=True)
class WeightCell:
    """A single table cell: a fixed weight, or an inclusive range."""

    low: Fraction
    high: Fraction

    def __post_init__(self) -> None:
        if not 0 <= self.low <= self.high <= 2:
            raise ValueError(f"weight cell [{self.low}, {self.high}] outside [0, 2]")

    @classmethod
    def fixed(cls, weight: Fraction) -> WeightCell:
        return cls(weight, weight)

    @property
    def is_range(self) -> bool:
        return self.low != self.high

    def resolve(self, policy: BankOptionPolicy) -> Fraction:
        return self.low if policy is BankOptionPolicy.LOW_END else self.high


def _pct(number: int) -> Fraction:
    return Fraction(number, 100)


def _row(counterparty: CounterpartyClass, cells) -> dict:
    out = {}
    for bucket, cell in zip(RatingBucket, cells):
        if not isinstance(cell, WeightCell):
            cell = WeightCell.fixed(_pct(cell))
        out[(counterparty, bucket)] = cell
    return out


@dataclass(frozen=True)
class RiskWeightTable:
    """Mapping (class, bucket) -> weight cell, with a provenance label.

    The provenance label is report metadata and not part of table equality,
    so a dumped-then-reloaded table compares equal to the original.
    """

    cells: Mapping[tuple[CounterpartyClass, RatingBucket], WeightCell]
    source: str = field(default="builtin", compare=False)

    def cell(self, counterparty: CounterpartyClass, rating: RatingBucket) -> WeightCell:
        try:
            return self.cells[(counterparty, rating)]
        except KeyError:
            raise MissingCell(
                f"no weight for ({counterparty.key}, {rating.key})"
            ) from None

    def weight(
        self,
        counterparty: CounterpartyClass,
        rating: RatingBucket,
        policy: BankOptionPolicy,
    ) -> Fraction:
        return self.cell(counterparty, rating).resolve(policy)


# Built-in weight table, row per counterparty class, one cell per bucket in
# declaration order (AAA..AA- through <B-, then unrated). Values in percent.
DEFAULT_RISK_WEIGHTS = RiskWeightTable(
    cells={
        **_row(CounterpartyClass.SOVEREIGN, (0, 20, 50, 100, 100, 150, 100)),
        **_row(
            CounterpartyClass.BANK,
            (20, 50, WeightCell(_pct(50), _pct(100)), 100, 100, 150,
             WeightCell(_pct(50), _pct(100))),
        ),
        **_row(CounterpartyClass.BANK_SHORT_TERM, (20, 20, 20, 50, 50, 150, 20)),
        **_row(CounterpartyClass.CORPORATE, (20, 50, 100, 100, 150, 150, 100)),
    },
)


@dataclass(frozen=True)
class CcfTable:
    """Conversion factors for off-balance categories, each in [0, 1]."""

    factors: Mapping[str, Fraction]
    source: str = field(default="builtin", compare=False)

    def __post_init__(self) -> None:
        for category, factor in self.factors.items():
            if not 0 <= factor <= 1:
                raise ValueError(f"conversion factor for {category!r} outside [0, 1]")

    def factor(self, category: str) -> Fraction:
        try:
            return self.factors[category]
        except KeyError:
            raise UnknownCategory(f"unknown off-balance category {category!r}") from None


# Only the medium-term confirmed facility has a sourced factor (50%); the
# remaining named categories stay at 100% until configured otherwise.
DEFAULT_CCF = CcfTable(
    factors={
        "medium_term_confirmed_facility": Fraction(1, 2),
        "documentary_credit": Fraction(1),
        "guarantee": Fraction(1),
        "bonded_obligation": Fraction(1),
    },
)


@dataclass(frozen=True)
class RwaLine:
    """Per-exposure weighting record: both factors applied, plus the amount."""

    exposure_id: str
    ccf: Fraction
    weight: Fraction
    amount: Money


def lookup_weight(
    counterparty: CounterpartyClass,
    rating: RatingBucket,
    policy: BankOptionPolicy,
    table: RiskWeightTable = DEFAULT_RISK_WEIGHTS,
) -> Fraction:
    """Resolve the risk weight for a (class, bucket) pair under a policy."""
    return table.weight(counterparty, rating, policy)


def convert_off_balance(
    nominal: Money, category: str, ccf: CcfTable = DEFAULT_CCF
) -> Money:
    """Convert an off-balance commitment to its credit-equivalent amount."""
    return nominal.scaled(ccf.factor(category))


def rwa_exposure(
    exposure: Exposure,
    table: RiskWeightTable = DEFAULT_RISK_WEIGHTS,
    ccf: CcfTable = DEFAULT_CCF,
    policy: BankOptionPolicy = BankOptionPolicy.LOW_END,
) -> RwaLine:
    """Weight one exposure: nominal x CCF x weight, rounded once at the end."""
    factor = (
        ccf.factor(exposure.off_balance_category)
        if exposure.off_balance_category is not None
        else Fraction(1)
    )
    weight = table.weight(exposure.counterparty, exposure.rating, policy)
    amount = exposure.nominal.scaled(factor * weight)
    return RwaLine(exposure_id=exposure.id, ccf=factor, weight=weight, amount=amount)


def rwa_portfolio(
    portfolio: Portfolio | Iterable[Exposure],
    table: RiskWeightTable = DEFAULT_RISK_WEIGHTS,
    ccf: CcfTable = DEFAULT_CCF,
    policy: BankOptionPolicy = BankOptionPolicy.LOW_END,
) -> tuple[list[RwaLine], Money]:
    """Weight a whole portfolio; lines keep input order, total is exact."""
    if isinstance(portfolio, Portfolio):
        exposures: Iterable[Exposure] = portfolio.exposures
        currency = portfolio.currency
    else:
        exposures = tuple(portfolio)
        currency = exposures[0].nominal.currency if exposures else Money.zero().currency
    lines: list[RwaLine] = []
    for exposure in exposures:
        try:
            lines.append(rwa_exposure(exposure, table, ccf, policy))
        except (MissingCell, UnknownCategory) as err:
            raise type(err)(f"exposure {exposure.id!r}: {err}") from err
    total = sum_money((line.amount for line in lines), currency=currency)
    return lines, total


def required_capital_credit(
    total_rwa: Money, ratio: Fraction = MINIMUM_CAPITAL_RATIO
) -> Money:
    """Own funds required against credit risk: RWA x ratio."""
    if total_rwa.is_negative:
        raise ValueError("risk-weighted assets must be non-negative")
    return total_rwa.scaled(ratio)
