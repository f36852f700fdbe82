"""Command-line surface.

Subcommands: compute, compare, disclose, dump-tables, validate. Flags mirror
config-file keys and override them one by one. Exit status: 0 when every
computed compliance flag holds, 1 on non-compliance, 2 on input or config
errors.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .config import EngineConfig, load_config
from .engine import (
    ComputeResult,
    resolve_tables,
    run_compare,
    run_compute,
    run_disclose,
)
from .errors import RegcapError
from .fileio import (
    dump_betas,
    dump_ccf,
    dump_risk_weights,
    load_income,
    load_portfolio,
)
from .model import CapitalBase
from .money import Money
from .reporting import (
    compare_document,
    compute_document,
    disclosure_document,
    error_provenance,
    render_compare_text,
    render_compute_text,
    render_disclosure_text,
    render_json,
)

# (flag dest, config key) pairs: a given flag overrides the file value.
_CONFIG_FLAG_KEYS = (
    ("regime", "regime"),
    ("credit_approach", "credit.approach"),
    ("bank_policy", "credit.bank_policy"),
    ("irb_function", "irb.function"),
    ("oprisk_approach", "oprisk.approach"),
    ("previous_oprisk_approach", "oprisk.previous_approach"),
    ("downgrade_override", "oprisk.downgrade_override"),
    ("negative_gi_policy", "oprisk.negative_gi_policy"),
    ("risk_weights", "tables.risk_weights"),
    ("ccf", "tables.ccf"),
    ("betas", "tables.betas"),
    ("min_ratio_override", "supervisor.min_ratio"),
    ("capital_addon", "supervisor.addon"),
    ("justification", "supervisor.justification"),
    ("period", "disclosure.period"),
    ("currency", "currency"),
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("configuration overrides")
    group.add_argument("--config", help="config file path (else $REGCAP_CONFIG)")
    group.add_argument("--regime", choices=["basel1", "basel2"])
    group.add_argument(
        "--credit-approach",
        choices=["standardized", "irb_foundation", "irb_advanced"],
    )
    group.add_argument("--bank-policy", choices=["low_end", "high_end"])
    group.add_argument("--irb-function", help="registered risk-weight function name")
    group.add_argument(
        "--oprisk-approach",
        help="basic_indicator, standardized, or advanced:<hook>",
    )
    group.add_argument(
        "--previous-oprisk-approach",
        help="previously approved approach, for the downgrade rule",
    )
    group.add_argument(
        "--downgrade-override",
        action="store_const",
        const="true",
        help="supervisory override allowing a simpler approach than before",
    )
    group.add_argument(
        "--negative-gi-policy",
        choices=["exclude_negative_years", "include_all"],
    )
    group.add_argument("--risk-weights", help="risk-weight table file")
    group.add_argument("--ccf", help="conversion-factor table file")
    group.add_argument("--betas", help="business-line multiplier table file")
    group.add_argument("--min-ratio-override", help="supervisory floor, e.g. 10%%")
    group.add_argument("--capital-addon", help="supervisory capital add-on amount")
    group.add_argument("--justification", help="supervisory adjustment rationale")
    group.add_argument("--period", help="disclosure period, e.g. 2006-H2")
    group.add_argument("--currency", help="ISO currency code (default EUR)")


def _add_run_inputs(parser: argparse.ArgumentParser, need_capital: bool) -> None:
    group = parser.add_argument_group("run inputs")
    group.add_argument("--portfolio", required=True, help="portfolio file (CSV)")
    group.add_argument("--income", help="three-year income statement file (CSV)")
    if need_capital:
        group.add_argument(
            "--capital", required=True, help="total own funds, decimal amount"
        )
        group.add_argument("--tier1", help="core own funds (with --tier2)")
        group.add_argument("--tier2", help="supplementary own funds (with --tier1)")
        group.add_argument("--market-charge", help="market capital charge, decimal")
        group.add_argument("--json-out", help="also write the machine document here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regcap",
        description=(
            "Regulatory-capital engine: credit and operational risk charges,"
            " solvency ratios, supervisory adjustments, and disclosure reports."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    compute = subparsers.add_parser(
        "compute", help="full capital computation and compliance verdict"
    )
    _add_config_flags(compute)
    _add_run_inputs(compute, need_capital=True)

    compare = subparsers.add_parser(
        "compare", help="credit-only vs full regime, side by side"
    )
    _add_config_flags(compare)
    _add_run_inputs(compare, need_capital=True)

    disclose = subparsers.add_parser(
        "disclose", help="semiannual capital-adequacy disclosure document"
    )
    _add_config_flags(disclose)
    _add_run_inputs(disclose, need_capital=True)

    dump = subparsers.add_parser(
        "dump-tables", help="write the active tables in the loadable schema"
    )
    _add_config_flags(dump)
    dump.add_argument("--out-dir", default=".", help="target directory")

    validate = subparsers.add_parser(
        "validate", help="parse and validate input files without computing"
    )
    _add_config_flags(validate)
    _add_run_inputs(validate, need_capital=False)

    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for dest, key in _CONFIG_FLAG_KEYS:
        value = getattr(args, dest, None)
        if value is not None:
            overrides[key] = value
    return overrides


def _money_arg(text: str, currency: str, flag: str) -> Money:
    try:
        return Money.from_decimal(Decimal(text), currency)
    except (InvalidOperation, ValueError) as exc:
        detail = str(exc) if isinstance(exc, ValueError) and str(exc) else (
            f"not a decimal amount: {text!r}"
        )
        raise RegcapError(f"{flag}: {detail}") from exc


def _capital_base(args: argparse.Namespace, currency: str) -> CapitalBase:
    total = _money_arg(args.capital, currency, "--capital")
    tier1 = _money_arg(args.tier1, currency, "--tier1") if args.tier1 else None
    tier2 = _money_arg(args.tier2, currency, "--tier2") if args.tier2 else None
    return CapitalBase(total_own_funds=total, tier1=tier1, tier2=tier2)


def _config_from_args(args: argparse.Namespace) -> EngineConfig:
    return load_config(args.config, _overrides(args))


def _compute_from_args(args: argparse.Namespace) -> ComputeResult:
    config = _config_from_args(args)
    portfolio = load_portfolio(args.portfolio, config.currency)
    income = load_income(args.income, config.currency) if args.income else None
    capital = _capital_base(args, config.currency)
    market = (
        _money_arg(args.market_charge, config.currency, "--market-charge")
        if args.market_charge
        else None
    )
    return run_compute(config, portfolio, capital, income, market)


def _write_json(path: str, document: dict) -> None:
    Path(path).write_text(render_json(document), encoding="utf-8")


def _cmd_compute(args: argparse.Namespace) -> int:
    result = _compute_from_args(args)
    sys.stdout.write(render_compute_text(result))
    if args.json_out:
        _write_json(args.json_out, compute_document(result))
    return result.exit_status


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    portfolio = load_portfolio(args.portfolio, config.currency)
    income = load_income(args.income, config.currency) if args.income else None
    capital = _capital_base(args, config.currency)
    market = (
        _money_arg(args.market_charge, config.currency, "--market-charge")
        if args.market_charge
        else None
    )
    comparison = run_compare(config, portfolio, capital, income, market)
    sys.stdout.write(render_compare_text(comparison))
    if args.json_out:
        _write_json(args.json_out, compare_document(comparison))
    return comparison.exit_status


def _cmd_disclose(args: argparse.Namespace) -> int:
    result = _compute_from_args(args)
    disclosure = run_disclose(result.config, result)
    sys.stdout.write(render_disclosure_text(disclosure))
    if args.json_out:
        _write_json(args.json_out, disclosure_document(disclosure))
    return result.exit_status


def _cmd_dump_tables(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    tables = resolve_tables(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = (
        (tables.risk_weights, dump_risk_weights, out_dir / "risk_weights.tbl"),
        (tables.ccf, dump_ccf, out_dir / "ccf.tbl"),
        (tables.betas, dump_betas, out_dir / "betas.tbl"),
    )
    for table, writer, path in targets:
        writer(table, path)
        sys.stdout.write(f"wrote {path}\n")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    resolve_tables(config)
    portfolio = load_portfolio(args.portfolio, config.currency)
    sys.stdout.write(f"portfolio OK: {len(portfolio)} exposure(s)\n")
    if args.income:
        income = load_income(args.income, config.currency)
        sys.stdout.write(f"income OK: years {income.span()}\n")
    sys.stdout.write("config OK\n")
    return 0


_COMMANDS = {
    "compute": _cmd_compute,
    "compare": _cmd_compare,
    "disclose": _cmd_disclose,
    "dump-tables": _cmd_dump_tables,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        return handler(args)
    except RegcapError as exc:
        sys.stderr.write(f"error [{error_provenance(exc)}]: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error [input/config]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
