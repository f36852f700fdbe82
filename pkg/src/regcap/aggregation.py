"""Denominator assembly, solvency ratios, and supervisory compliance.

The denominator is credit RWA plus 12.5 times each capital-style charge
(market, operational); 12.5 is carried as the exact rational 25/2, the
inverse of the 8% floor, so converting a charge into the denominator and
taking 8% of it again returns the charge exactly.

A zero denominator is a typed "undefined ratio" state: the standalone ratio
functions raise, while compliance() produces a report with the ratios marked
undefined rather than failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import EmptyDenominator, InvalidOverride
from .model import MINIMUM_CAPITAL_RATIO, CapitalBase
from .money import Money, round_half_even

# Inverse of the 8% floor, exact.
RWA_MULTIPLIER = Fraction(25, 2)

# Published reference affectation of own funds per risk; reported alongside
# the data-driven shares, never enforced.
REFERENCE_ALLOCATION: Mapping[str, Fraction] = {
    "credit": Fraction(75, 100),
    "oprisk": Fraction(20, 100),
    "market": Fraction(5, 100),
}


@dataclass(frozen=True)
class PillarOneInputs:
    """The three denominator blocks; market is an input figure, not computed."""

    credit_rwa: Money
    market_capital_charge: Money
    oprisk_capital_charge: Money

    def __post_init__(self) -> None:
        for label, amount in (
            ("credit rwa", self.credit_rwa),
            ("market capital charge", self.market_capital_charge),
            ("oprisk capital charge", self.oprisk_capital_charge),
        ):
            if amount.is_negative:
                raise ValueError(f"{label} must be non-negative, got {amount}")
        self.credit_rwa._check_compatible(self.market_capital_charge)
        self.credit_rwa._check_compatible(self.oprisk_capital_charge)

    def exact_denominator_units(self) -> Fraction:
        """The denominator before its single rounding, in minor units."""
        charges = self.market_capital_charge.units + self.oprisk_capital_charge.units
        return self.credit_rwa.units + RWA_MULTIPLIER * charges


def denominator(inputs: PillarOneInputs) -> Money:
    """credit RWA + 12.5 x market charge + 12.5 x oprisk charge, rounded once."""
    units = round_half_even(inputs.exact_denominator_units())
    return Money(units, inputs.credit_rwa.currency, inputs.credit_rwa.scale)


def mcdonough_ratio(capital: CapitalBase, inputs: PillarOneInputs) -> Fraction:
    """Own funds over the full three-risk denominator, exact."""
    base = denominator(inputs)
    if base.units == 0:
        raise EmptyDenominator("no risk-bearing assets: ratio undefined")
    return capital.total_own_funds.ratio_to(base)


def cooke_ratio(capital: CapitalBase, credit_rwa: Money) -> Fraction:
    """Own funds over credit RWA alone (the pre-reform assiette), exact."""
    if credit_rwa.is_negative:
        raise ValueError(f"credit rwa must be non-negative, got {credit_rwa}")
    if credit_rwa.units == 0:
        raise EmptyDenominator("no risk-bearing assets: ratio undefined")
    return capital.total_own_funds.ratio_to(credit_rwa)


@dataclass(frozen=True)
class SupervisoryAdjustment:
    """Pillar 2 action: a ratio floor at or above 8%, an optional add-on."""

    minimum_ratio: Fraction = MINIMUM_CAPITAL_RATIO
    addon: Money | None = None
    justification: str = ""

    def __post_init__(self) -> None:
        if self.minimum_ratio < MINIMUM_CAPITAL_RATIO:
            raise InvalidOverride(
                f"supervisory minimum {self.minimum_ratio} is below the 8% floor"
            )
        if self.addon is not None and self.addon.is_negative:
            raise InvalidOverride(f"capital add-on must be non-negative, got {self.addon}")


@dataclass(frozen=True)
class CapitalReport:
    """Assembled solvency outcome; ratios are None when undefined."""

    capital: CapitalBase
    inputs: PillarOneInputs
    denominator: Money
    mcdonough: Fraction | None
    cooke: Fraction | None
    minimum_ratio: Fraction
    addon: Money
    min_required_capital: Money
    surplus: Money
    compliant: bool
    shares: Mapping[str, Fraction] | None

    @property
    def ratio_defined(self) -> bool:
        return self.mcdonough is not None


def denominator_shares(inputs: PillarOneInputs) -> Mapping[str, Fraction] | None:
    """Each block's share of the exact denominator; None when it is zero.

    Computed before rounding so the three shares sum to exactly 1.
    """
    total = inputs.exact_denominator_units()
    if total == 0:
        return None
    return {
        "credit": Fraction(inputs.credit_rwa.units) / total,
        "market": RWA_MULTIPLIER * inputs.market_capital_charge.units / total,
        "oprisk": RWA_MULTIPLIER * inputs.oprisk_capital_charge.units / total,
    }


def compliance(
    capital: CapitalBase,
    inputs: PillarOneInputs,
    adjustment: SupervisoryAdjustment | None = None,
) -> CapitalReport:
    """Judge own funds against max(8%, override) x denominator + add-on."""
    if adjustment is None:
        adjustment = SupervisoryAdjustment()
    if adjustment.minimum_ratio < MINIMUM_CAPITAL_RATIO:
        raise InvalidOverride(
            f"supervisory minimum {adjustment.minimum_ratio} is below the 8% floor"
        )
    own_funds = capital.total_own_funds
    base = denominator(inputs)
    addon = (
        adjustment.addon
        if adjustment.addon is not None
        else Money.zero(own_funds.currency, own_funds.scale)
    )
    required_units = round_half_even(
        max(MINIMUM_CAPITAL_RATIO, adjustment.minimum_ratio) * base.units
    )
    min_required = Money(required_units, base.currency, base.scale) + addon
    surplus = own_funds - min_required
    mcdonough = own_funds.ratio_to(base) if base.units != 0 else None
    cooke = (
        own_funds.ratio_to(inputs.credit_rwa)
        if inputs.credit_rwa.units != 0
        else None
    )
    return CapitalReport(
        capital=capital,
        inputs=inputs,
        denominator=base,
        mcdonough=mcdonough,
        cooke=cooke,
        minimum_ratio=adjustment.minimum_ratio,
        addon=addon,
        min_required_capital=min_required,
        surplus=surplus,
        compliant=not surplus.is_negative,
        shares=denominator_shares(inputs),
    )
