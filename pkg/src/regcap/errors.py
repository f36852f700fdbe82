"""Exception types shared across the engine."""

from __future__ import annotations


class RegcapError(Exception):
    """Base class for every error raised by this package."""


class CurrencyMismatch(RegcapError):
    """Arithmetic or comparison attempted across different currencies."""


class UnknownRating(RegcapError):
    """Rating token outside the published bucket grammar."""


class ValidationFailure(RegcapError):
    """Carries every violation found, never just the first."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class MissingCell(RegcapError):
    """Risk-weight table has no entry for a (class, bucket) pair."""


class UnknownCategory(RegcapError):
    """Off-balance category does not resolve in the active CCF table."""


class OutOfRange(RegcapError):
    """Probability or fraction outside its legal interval."""


class UnknownFunction(RegcapError):
    """No risk-weight function registered under the requested name."""


class NonFiniteWeight(RegcapError):
    """A risk-weight function returned a non-finite or negative weight."""


class IncompleteHistory(RegcapError):
    """Gross-income history does not cover exactly three consecutive years."""


class MissingLine(RegcapError):
    """Business lines absent from a per-line income statement."""

    def __init__(self, lines: list[str]):
        self.lines = sorted(lines)
        super().__init__("missing business lines: " + ", ".join(self.lines))


class DowngradeWithoutOverride(RegcapError):
    """Approach assignment moved to a simpler approach without the override flag."""


class UnregisteredAdvancedHook(RegcapError):
    """Advanced operational-risk approach selected but no estimator registered."""


class EmptyDenominator(RegcapError):
    """Solvency ratio requested over a zero denominator."""


class InvalidOverride(RegcapError):
    """Supervisory minimum-ratio override below the 8% floor."""


class ParseError(RegcapError):
    """Input file violates its schema; cites the offending location."""

    def __init__(self, reason: str, line: int | None = None, column: str | None = None):
        self.reason = reason
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {reason}" if prefix else reason)


class MissingPeriod(RegcapError):
    """Disclosure requested without a reporting period."""


class ConfigError(RegcapError):
    """Engine configuration is internally inconsistent."""
