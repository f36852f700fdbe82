"""File ingestion and table round-tripping.

Three plain-text surfaces, all UTF-8 with '.' decimal separators:

* table files: whitespace-separated ``key [key] value`` lines, ``#``
  comments; weights either a single decimal fraction or ``low..high``;
* portfolio files: CSV with a mandatory header (id, class, rating, nominal,
  position, plus optional columns); unknown columns are rejected;
* income files: CSV of (year, line, amount) rows with optional excluded-item
  columns, where line is a business-line key or TOTAL.

Loaded tables carry a ``path#sha256-prefix`` provenance label so reports can
cite exactly which file produced a number. Dump then load is the identity.
"""

from __future__ import annotations

import csv
import hashlib
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, RegcapError
from .model import (
    CounterpartyClass,
    Exposure,
    Portfolio,
    RatingBucket,
    parse_rating,
    validate_portfolio,
)
from .money import (
    DEFAULT_CURRENCY,
    Money,
    fraction_to_decimal_text,
    parse_fraction,
)
from .oprisk import (
    AnnualIncome,
    BetaTable,
    BusinessLine,
    GrossIncomeRecord,
    IncomeHistory,
)
from .standardized import CcfTable, RiskWeightTable, WeightCell

_CLASS_BY_KEY = {member.key: member for member in CounterpartyClass}
_BUCKET_BY_KEY = {member.key: member for member in RatingBucket}


def table_source(path: str | Path, text: str) -> str:
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]
    return f"{path}#{digest}"


def _table_rows(text: str, origin: str, fields: int):
    """Yield (line_number, tokens) for data lines, checking token counts."""
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != fields:
            raise ParseError(
                f"expected {fields} whitespace-separated fields, got {len(tokens)}"
                f" in {origin}",
                line=number,
            )
        yield number, tokens


def _parse_cell(token: str, origin: str, number: int) -> WeightCell:
    try:
        if ".." in token:
            low_text, _, high_text = token.partition("..")
            return WeightCell(parse_fraction(low_text), parse_fraction(high_text))
        return WeightCell.fixed(parse_fraction(token))
    except ValueError as exc:
        raise ParseError(f"{exc} in {origin}", line=number, column="weight") from exc


def load_risk_weights(path: str | Path) -> RiskWeightTable:
    """Read a risk-weight table file (class, bucket, weight per line)."""
    path = Path(path)
    text = _read_text(path)
    cells: dict[tuple[CounterpartyClass, RatingBucket], WeightCell] = {}
    for number, (class_key, bucket_key, weight_token) in _tokens3(text, str(path)):
        try:
            counterparty = _CLASS_BY_KEY[class_key.lower()]
        except KeyError:
            raise ParseError(
                f"unknown counterparty class {class_key!r} in {path}",
                line=number,
                column="class",
            ) from None
        try:
            bucket = _BUCKET_BY_KEY[bucket_key.lower()]
        except KeyError:
            raise ParseError(
                f"unknown rating bucket {bucket_key!r} in {path}",
                line=number,
                column="bucket",
            ) from None
        key = (counterparty, bucket)
        if key in cells:
            raise ParseError(
                f"duplicate cell ({class_key}, {bucket_key}) in {path}", line=number
            )
        cells[key] = _parse_cell(weight_token, str(path), number)
    return RiskWeightTable(cells=cells, source=table_source(path, text))


def _tokens3(text: str, origin: str):
    for number, tokens in _table_rows(text, origin, 3):
        yield number, tokens


def dump_risk_weights(table: RiskWeightTable, path: str | Path) -> None:
    """Write a table in the loadable schema, rows in declaration order."""
    lines = [
        "# risk-weight table: class  bucket  weight",
        "# weight is a decimal fraction; range cells use low..high",
    ]
    ordered = sorted(
        table.cells.items(),
        key=lambda item: (
            list(CounterpartyClass).index(item[0][0]),
            int(item[0][1]),
        ),
    )
    for (counterparty, bucket), cell in ordered:
        if cell.is_range:
            value = (
                f"{fraction_to_decimal_text(cell.low)}"
                f"..{fraction_to_decimal_text(cell.high)}"
            )
        else:
            value = fraction_to_decimal_text(cell.low)
        lines.append(f"{counterparty.key}  {bucket.key}  {value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_ccf(path: str | Path) -> CcfTable:
    """Read a conversion-factor table file (category, factor per line)."""
    path = Path(path)
    text = _read_text(path)
    factors: dict[str, Fraction] = {}
    for number, (category, factor_token) in _table_rows(text, str(path), 2):
        if category in factors:
            raise ParseError(f"duplicate category {category!r} in {path}", line=number)
        try:
            factor = parse_fraction(factor_token)
        except ValueError as exc:
            raise ParseError(
                f"{exc} in {path}", line=number, column="factor"
            ) from exc
        if not 0 <= factor <= 1:
            raise ParseError(
                f"conversion factor {factor_token} outside [0, 1] in {path}",
                line=number,
                column="factor",
            )
        factors[category] = factor
    return CcfTable(factors=factors, source=table_source(path, text))


def dump_ccf(table: CcfTable, path: str | Path) -> None:
    lines = ["# conversion-factor table: category  factor"]
    for category in sorted(table.factors):
        lines.append(f"{category}  {fraction_to_decimal_text(table.factors[category])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_betas(path: str | Path) -> BetaTable:
    """Read a business-line multiplier file (line, beta per line)."""
    path = Path(path)
    text = _read_text(path)
    betas: dict[BusinessLine, Fraction] = {}
    for number, (line_key, beta_token) in _table_rows(text, str(path), 2):
        try:
            line = BusinessLine.from_key(line_key)
        except ValueError as exc:
            raise ParseError(f"{exc} in {path}", line=number, column="line") from exc
        if line in betas:
            raise ParseError(f"duplicate line {line_key!r} in {path}", line=number)
        try:
            betas[line] = parse_fraction(beta_token)
        except ValueError as exc:
            raise ParseError(f"{exc} in {path}", line=number, column="beta") from exc
    return BetaTable(betas=betas, source=table_source(path, text))


def dump_betas(table: BetaTable, path: str | Path) -> None:
    lines = ["# business-line multiplier table: line  beta"]
    for line in BusinessLine:
        lines.append(f"{line.key}  {fraction_to_decimal_text(table.betas[line])}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not valid UTF-8: {exc}") from exc


# ---------------------------------------------------------------------------
# Portfolio files

PORTFOLIO_REQUIRED = ("id", "class", "rating", "nominal", "position")
PORTFOLIO_OPTIONAL = (
    "off_balance_category",
    "short_term_flag",
    "pd",
    "lgd",
    "ead",
    "maturity",
)

_TRUTHY = {"true", "yes", "1"}
_FALSY = {"false", "no", "0", ""}


def _read_header(row: list[str], path: Path) -> list[str]:
    names = [name.strip() for name in row]
    known = set(PORTFOLIO_REQUIRED) | set(PORTFOLIO_OPTIONAL)
    unknown = [name for name in names if name not in known]
    if unknown:
        raise ParseError(
            f"unknown column(s) {', '.join(repr(n) for n in unknown)} in {path}",
            line=1,
        )
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ParseError(
            f"duplicate column(s) {', '.join(repr(n) for n in duplicates)} in {path}",
            line=1,
        )
    missing = [name for name in PORTFOLIO_REQUIRED if name not in names]
    if missing:
        raise ParseError(
            f"missing required column(s) {', '.join(repr(n) for n in missing)}"
            f" in {path}",
            line=1,
        )
    return names


def _cell_error(path: Path, line: int, column: str, reason) -> ParseError:
    return ParseError(f"{reason} in {path}", line=line, column=column)


def _parse_money_cell(
    token: str, currency: str, path: Path, line: int, column: str
) -> Money:
    try:
        return Money.from_decimal(Decimal(token), currency)
    except (InvalidOperation, ValueError) as exc:
        raise _cell_error(path, line, column, exc) from exc


def _parse_fraction_cell(token: str, path: Path, line: int, column: str) -> Fraction:
    try:
        return parse_fraction(token)
    except ValueError as exc:
        raise _cell_error(path, line, column, exc) from exc


def _parse_exposure(
    record: dict[str, str], path: Path, line: int, currency: str
) -> Exposure:
    exposure_id = record.get("id", "").strip()
    if not exposure_id:
        raise ParseError(f"empty id in {path}", line=line, column="id")

    class_key = record.get("class", "").strip().lower()
    counterparty = _CLASS_BY_KEY.get(class_key)
    if counterparty is None:
        raise _cell_error(path, line, "class", f"unknown counterparty class {class_key!r}")

    try:
        rating = parse_rating(record.get("rating", ""))
    except RegcapError as exc:
        raise _cell_error(path, line, "rating", exc) from exc

    nominal = _parse_money_cell(
        record.get("nominal", "").strip(), currency, path, line, "nominal"
    )

    position = record.get("position", "").strip().lower()
    if position not in ("on", "off"):
        raise _cell_error(
            path, line, "position", f"position must be 'on' or 'off', got {position!r}"
        )
    category = record.get("off_balance_category", "").strip() or None
    if position == "off" and category is None:
        raise _cell_error(
            path, line, "off_balance_category",
            "off-balance position needs a category",
        )
    if position == "on" and category is not None:
        raise _cell_error(
            path, line, "off_balance_category",
            "on-balance position must leave the category empty",
        )

    flag_token = record.get("short_term_flag", "").strip().lower()
    if flag_token in _TRUTHY:
        short_term = True
    elif flag_token in _FALSY:
        short_term = False
    else:
        raise _cell_error(
            path, line, "short_term_flag", f"not a boolean: {flag_token!r}"
        )

    def optional_fraction(column: str) -> Fraction | None:
        token = record.get(column, "").strip()
        return _parse_fraction_cell(token, path, line, column) if token else None

    ead_token = record.get("ead", "").strip()
    return Exposure(
        id=exposure_id,
        counterparty=counterparty,
        rating=rating,
        nominal=nominal,
        off_balance_category=category,
        short_term=short_term,
        pd=optional_fraction("pd"),
        lgd=optional_fraction("lgd"),
        ead=_parse_money_cell(ead_token, currency, path, line, "ead")
        if ead_token
        else None,
        maturity_years=optional_fraction("maturity"),
    )


def load_portfolio(path: str | Path, currency: str = DEFAULT_CURRENCY) -> Portfolio:
    """Read and validate a portfolio file; errors cite line and column."""
    path = Path(path)
    text = _read_text(path)
    reader = csv.reader(text.splitlines())
    try:
        header_row = next(reader)
    except StopIteration:
        raise ParseError(f"{path} is empty; a header row is mandatory", line=1) from None
    names = _read_header(header_row, path)
    exposures: list[Exposure] = []
    for number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(names):
            raise ParseError(
                f"expected {len(names)} fields, got {len(row)} in {path}", line=number
            )
        record = dict(zip(names, row))
        exposures.append(_parse_exposure(record, path, number, currency))
    return validate_portfolio(exposures)


def dump_portfolio_template(path: str | Path) -> None:
    """Write a header-only portfolio file showing every accepted column."""
    header = ",".join(PORTFOLIO_REQUIRED + PORTFOLIO_OPTIONAL)
    Path(path).write_text(header + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Income files

INCOME_REQUIRED = ("year", "line", "amount")
INCOME_OPTIONAL = (
    "provisions",
    "banking_book_results",
    "extraordinary_items",
    "insurance_income",
)

TOTAL_LINE = "TOTAL"


def _parse_income_record(
    record: dict[str, str], currency: str, path: Path, line: int
) -> GrossIncomeRecord:
    amount = _parse_money_cell(
        record.get("amount", "").strip(), currency, path, line, "amount"
    )

    def optional_money(column: str) -> Money | None:
        token = record.get(column, "").strip()
        return (
            _parse_money_cell(token, currency, path, line, column) if token else None
        )

    return GrossIncomeRecord(
        amount=amount,
        provisions=optional_money("provisions"),
        banking_book_results=optional_money("banking_book_results"),
        extraordinary_items=optional_money("extraordinary_items"),
        insurance_income=optional_money("insurance_income"),
    )


def load_income(path: str | Path, currency: str = DEFAULT_CURRENCY) -> IncomeHistory:
    """Read a three-year income statement file into an IncomeHistory."""
    path = Path(path)
    text = _read_text(path)
    reader = csv.reader(text.splitlines())
    try:
        header_row = next(reader)
    except StopIteration:
        raise ParseError(f"{path} is empty; a header row is mandatory", line=1) from None
    names = [name.strip() for name in header_row]
    known = set(INCOME_REQUIRED) | set(INCOME_OPTIONAL)
    unknown = [name for name in names if name not in known]
    if unknown:
        raise ParseError(
            f"unknown column(s) {', '.join(repr(n) for n in unknown)} in {path}",
            line=1,
        )
    missing = [name for name in INCOME_REQUIRED if name not in names]
    if missing:
        raise ParseError(
            f"missing required column(s) {', '.join(repr(n) for n in missing)}"
            f" in {path}",
            line=1,
        )

    totals: dict[int, GrossIncomeRecord] = {}
    per_line: dict[int, dict[BusinessLine, GrossIncomeRecord]] = {}
    for number, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(names):
            raise ParseError(
                f"expected {len(names)} fields, got {len(row)} in {path}", line=number
            )
        record = dict(zip(names, row))
        year_token = record.get("year", "").strip()
        try:
            year = int(year_token)
        except ValueError:
            raise _cell_error(
                path, number, "year", f"not a year: {year_token!r}"
            ) from None
        income = _parse_income_record(record, currency, path, number)
        line_token = record.get("line", "").strip()
        if line_token.upper() == TOTAL_LINE:
            if year in totals:
                raise ParseError(
                    f"duplicate TOTAL row for year {year} in {path}", line=number
                )
            totals[year] = income
            continue
        try:
            business_line = BusinessLine.from_key(line_token)
        except ValueError as exc:
            raise _cell_error(path, number, "line", exc) from exc
        year_lines = per_line.setdefault(year, {})
        if business_line in year_lines:
            raise ParseError(
                f"duplicate {business_line.key} row for year {year} in {path}",
                line=number,
            )
        year_lines[business_line] = income

    years = sorted(set(totals) | set(per_line))
    annuals = tuple(
        AnnualIncome(
            year=year, total=totals.get(year), per_line=per_line.get(year, {})
        )
        for year in years
    )
    return IncomeHistory(years=annuals)
