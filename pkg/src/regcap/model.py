"""Core domain types: counterparty classes, rating buckets, exposures.

Everything here is immutable after validation and safe to share across
threads; computation lives in the sibling modules.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownRating, ValidationFailure
from .money import Money

# Regulatory minimum ratio of own funds to the risk denominator (8%).
MINIMUM_CAPITAL_RATIO = Fraction(8, 100)


class CounterpartyClass(enum.Enum):
    SOVEREIGN = "sovereign"
    BANK = "bank"
    BANK_SHORT_TERM = "bank_short_term"
    CORPORATE = "corporate"

    @property
    def key(self) -> str:
        return self.value


class RatingBucket(enum.IntEnum):
    """Rating buckets, ordered strongest to weakest.

    UNRATED sits outside the quality order; it exists as its own bucket
    because table columns price it explicitly, and a missing rating is an
    error rather than a silent default.
    """

    AAA_TO_AA_MINUS = 0
    A_PLUS_TO_A_MINUS = 1
    BBB_PLUS_TO_BBB_MINUS = 2
    BB_PLUS_TO_BB_MINUS = 3
    B_PLUS_TO_B_MINUS = 4
    BELOW_B_MINUS = 5
    UNRATED = 6

    @property
    def key(self) -> str:
        return self.name.lower()


RATED_BUCKETS = tuple(b for b in RatingBucket if b is not RatingBucket.UNRATED)

# Published token grammar. "<B-" is the literal token for anything strictly
# below B-; individual sub-B- grades are not named and are rejected.
RATING_TOKENS: dict[str, RatingBucket] = {
    "AAA": RatingBucket.AAA_TO_AA_MINUS,
    "AA+": RatingBucket.AAA_TO_AA_MINUS,
    "AA": RatingBucket.AAA_TO_AA_MINUS,
    "AA-": RatingBucket.AAA_TO_AA_MINUS,
    "A+": RatingBucket.A_PLUS_TO_A_MINUS,
    "A": RatingBucket.A_PLUS_TO_A_MINUS,
    "A-": RatingBucket.A_PLUS_TO_A_MINUS,
    "BBB+": RatingBucket.BBB_PLUS_TO_BBB_MINUS,
    "BBB": RatingBucket.BBB_PLUS_TO_BBB_MINUS,
    "BBB-": RatingBucket.BBB_PLUS_TO_BBB_MINUS,
    "BB+": RatingBucket.BB_PLUS_TO_BB_MINUS,
    "BB": RatingBucket.BB_PLUS_TO_BB_MINUS,
    "BB-": RatingBucket.BB_PLUS_TO_BB_MINUS,
    "B+": RatingBucket.B_PLUS_TO_B_MINUS,
    "B": RatingBucket.B_PLUS_TO_B_MINUS,
    "B-": RatingBucket.B_PLUS_TO_B_MINUS,
    "<B-": RatingBucket.BELOW_B_MINUS,
    "UNRATED": RatingBucket.UNRATED,
}


def parse_rating(text: str) -> RatingBucket:
    """Map an external rating token to its bucket.

    Total over the published token set plus the literal unrated marker;
    anything else raises UnknownRating (never coerced to UNRATED).
    """
    token = text.strip().upper()
    try:
        return RATING_TOKENS[token]
    except KeyError:
        raise UnknownRating(f"unknown rating token {text.strip()!r}") from None


@dataclass(frozen=True)
class Exposure:
    """One on- or off-balance-sheet engagement.

    ``off_balance_category`` is None for on-balance positions. The optional
    internal-ratings fields are populated from portfolio file columns when
    an internal-ratings approach is configured.
    """

    id: str
    counterparty: CounterpartyClass
    rating: RatingBucket
    nominal: Money
    off_balance_category: str | None = None
    short_term: bool = False
    pd: Fraction | None = None
    lgd: Fraction | None = None
    ead: Money | None = None
    maturity_years: Fraction | None = None

    @property
    def is_off_balance(self) -> bool:
        return self.off_balance_category is not None


@dataclass(frozen=True)
class Portfolio:
    """A validated collection of exposures; build via validate_portfolio."""

    exposures: tuple[Exposure, ...]
    currency: str

    def __len__(self) -> int:
        return len(self.exposures)

    def __iter__(self):
        return iter(self.exposures)


def validate_portfolio(exposures) -> Portfolio:
    """Check portfolio-level invariants, reporting every violation at once.

    Idempotent: validating a Portfolio returns the same object.
    """
    if isinstance(exposures, Portfolio):
        _raise_on_violations(exposures.exposures)
        return exposures
    items = tuple(exposures)
    _raise_on_violations(items)
    currency = items[0].nominal.currency if items else Money.zero().currency
    return Portfolio(exposures=items, currency=currency)


def _raise_on_violations(items: tuple[Exposure, ...]) -> None:
    violations = _collect_violations(items)
    if violations:
        raise ValidationFailure(violations)


def _collect_violations(items: tuple[Exposure, ...]) -> list[str]:
    violations: list[str] = []
    seen: set[str] = set()
    currencies: set[str] = set()
    for e in items:
        if e.id in seen:
            violations.append(f"duplicate id {e.id!r}")
        seen.add(e.id)
        currencies.add(e.nominal.currency)
        if e.ead is not None:
            currencies.add(e.ead.currency)
        if e.nominal.is_negative:
            violations.append(f"exposure {e.id!r}: negative amount {e.nominal}")
        if e.ead is not None and e.ead.is_negative:
            violations.append(f"exposure {e.id!r}: negative exposure-at-default {e.ead}")
        if e.counterparty is CounterpartyClass.BANK_SHORT_TERM and not e.short_term:
            violations.append(
                f"exposure {e.id!r}: bank_short_term requires the short-term flag"
            )
        if e.pd is not None and not 0 <= e.pd <= 1:
            violations.append(f"exposure {e.id!r}: pd {e.pd} outside [0, 1]")
        if e.lgd is not None and not 0 <= e.lgd <= 1:
            violations.append(f"exposure {e.id!r}: lgd {e.lgd} outside [0, 1]")
        if e.maturity_years is not None and e.maturity_years <= 0:
            violations.append(f"exposure {e.id!r}: maturity must be positive")
    if len(currencies) > 1:
        violations.append("mixed currencies: " + ", ".join(sorted(currencies)))
    return violations


@dataclass(frozen=True)
class CapitalBase:
    """Regulatory own funds; the tier split is report metadata only."""

    total_own_funds: Money
    tier1: Money | None = None
    tier2: Money | None = None

    def __post_init__(self) -> None:
        violations = []
        if self.total_own_funds.is_negative:
            violations.append("total own funds must be non-negative")
        if (self.tier1 is None) != (self.tier2 is None):
            violations.append("tier1 and tier2 must be supplied together or not at all")
        if self.tier1 is not None and self.tier2 is not None:
            if self.tier1.is_negative or self.tier2.is_negative:
                violations.append("tier amounts must be non-negative")
            elif self.tier1 + self.tier2 != self.total_own_funds:
                violations.append("tier1 + tier2 must equal total own funds")
        if violations:
            raise ValidationFailure(violations)
