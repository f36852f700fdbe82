"""Fixed-point money arithmetic and exact rational helpers.

Amounts are integer counts of minor units (cents at the default scale of 2),
so addition and subtraction are exact. Multiplication by a rational factor
goes through ``fractions.Fraction`` and rounds half-to-even back to minor
units in a single step, which keeps regulatory figures reproducible
bit-for-bit. Ratios between amounts are returned as exact ``Fraction``
values and only formatted (2-decimal percentages) at render time.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import CurrencyMismatch

DEFAULT_CURRENCY = "EUR"
DEFAULT_SCALE = 2


def round_half_even(value: Fraction | int) -> int:
    """Round an exact rational to the nearest integer, ties to even."""
    return round(Fraction(value))


@functools.total_ordering
@dataclass(frozen=True)
class Money:
    """An exact amount of one currency, stored in minor units.

    ``units`` is signed: exposures are validated non-negative elsewhere,
    but derived figures such as a capital shortfall may be negative.
    """

    units: int
    currency: str = DEFAULT_CURRENCY
    scale: int = DEFAULT_SCALE

    def __post_init__(self) -> None:
        if not isinstance(self.units, int):
            raise TypeError(f"units must be int, got {type(self.units).__name__}")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")

    @classmethod
    def zero(cls, currency: str = DEFAULT_CURRENCY, scale: int = DEFAULT_SCALE) -> "Money":
        return cls(0, currency, scale)

    @classmethod
    def from_decimal(
        cls,
        value: Decimal | str | int,
        currency: str = DEFAULT_CURRENCY,
        scale: int = DEFAULT_SCALE,
    ) -> "Money":
        """Build from a decimal literal; rejects sub-minor-unit amounts."""
        try:
            dec = Decimal(value)
        except InvalidOperation as exc:
            raise ValueError(f"not a decimal amount: {value!r}") from exc
        if not dec.is_finite():
            raise ValueError(f"not a finite amount: {value!r}")
        scaled = dec.scaleb(scale)
        units = int(scaled)
        if scaled != units:
            raise ValueError(f"amount {value!r} has more than {scale} decimal places")
        return cls(units, currency, scale)

    @property
    def amount(self) -> Decimal:
        return Decimal(self.units).scaleb(-self.scale)

    def _check_compatible(self, other: "Money") -> None:
        if self.currency != other.currency:
            raise CurrencyMismatch(f"{self.currency} vs {other.currency}")
        if self.scale != other.scale:
            raise CurrencyMismatch(f"minor-unit scale {self.scale} vs {other.scale}")

    def __add__(self, other: "Money") -> "Money":
        self._check_compatible(other)
        return Money(self.units + other.units, self.currency, self.scale)

    def __sub__(self, other: "Money") -> "Money":
        self._check_compatible(other)
        return Money(self.units - other.units, self.currency, self.scale)

    def __neg__(self) -> "Money":
        return Money(-self.units, self.currency, self.scale)

    def __lt__(self, other: "Money") -> bool:
        self._check_compatible(other)
        return self.units < other.units

    def scaled(self, factor: Fraction | int) -> "Money":
        """Exact product with a rational factor, then one half-even rounding."""
        return Money(round_half_even(Fraction(self.units) * factor), self.currency, self.scale)

    def ratio_to(self, other: "Money") -> Fraction:
        """Exact ratio of two amounts of the same currency."""
        self._check_compatible(other)
        if other.units == 0:
            raise ZeroDivisionError("ratio over a zero amount")
        return Fraction(self.units, other.units)

    @property
    def is_negative(self) -> bool:
        return self.units < 0

    def text(self) -> str:
        """Plain decimal string, no separators (machine documents)."""
        return f"{self.amount:.{self.scale}f}"

    def formatted(self) -> str:
        """Thousands-separated decimal string (human reports)."""
        return f"{self.amount:,.{self.scale}f}"

    def __str__(self) -> str:
        return f"{self.text()} {self.currency}"


def sum_money(items, currency: str = DEFAULT_CURRENCY, scale: int = DEFAULT_SCALE) -> Money:
    """Exact ordered sum; returns a zero of the given currency when empty."""
    total = None
    for item in items:
        total = item if total is None else total + item
    return total if total is not None else Money.zero(currency, scale)


def parse_fraction(text: str) -> Fraction:
    """Parse a decimal fraction, accepting an optional trailing '%'."""
    token = text.strip()
    percent = token.endswith("%")
    if percent:
        token = token[:-1].strip()
    try:
        value = Fraction(Decimal(token))
    except (InvalidOperation, ValueError) as exc:
        raise ValueError(f"not a decimal fraction: {text!r}") from exc
    return value / 100 if percent else value


def to_fraction(value) -> Fraction:
    """Coerce a number or decimal string to an exact Fraction.

    Floats go through their decimal repr, so 0.1 means one tenth.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(Decimal(repr(value)))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a fraction")


def fraction_to_decimal_text(value: Fraction) -> str:
    """Exact decimal rendering of a terminating rational.

    Raises ValueError for non-terminating fractions; table files only carry
    decimal fractions, so everything loadable round-trips.
    """
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{value} has no terminating decimal form")
    places = max(twos, fives)
    scaled = value.numerator * 10**places // value.denominator
    if places == 0:
        return str(scaled)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    text = f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def format_percent(value: Fraction, places: int = 2) -> str:
    """Half-even percentage rendering, fixed number of decimal places."""
    quantum = 10**places
    scaled = round_half_even(value * 100 * quantum)
    sign = "-" if scaled < 0 else ""
    digits = abs(scaled)
    return f"{sign}{digits // quantum}.{digits % quantum:0{places}d}%"
