"""Report rendering: fixed-width text for humans, key-value JSON for machines.

Every report carries a config echo (regime, approaches, policies, table
provenance) so any number in it can be reproduced. Output is deterministic
byte-for-byte for identical inputs: no timestamps, fixed section order,
fixed key order in the machine document. Percentages render with two decimal
places and amounts at minor-unit precision; rounding happens only at render
time, on top of already-exact values.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import errors
from .aggregation import REFERENCE_ALLOCATION, CapitalReport
from .config import CreditApproach, EngineConfig, Regime
from .engine import (
    CompareResult,
    ComputeResult,
    CreditResult,
    DisclosureReport,
    OpRiskResult,
    TableSet,
)
from .model import CapitalBase
from .money import Money, format_percent, fraction_to_decimal_text
from .oprisk import ApproachKind, BusinessLine

RULE = "=" * 72
LIGHT_RULE = "-" * 72

UNDEFINED_RATIO = "undefined (no risk-bearing assets)"

_CREDIT_LABELS = {
    CreditApproach.STANDARDIZED: "standardized (external ratings)",
    CreditApproach.IRB_FOUNDATION: "internal ratings, foundation",
    CreditApproach.IRB_ADVANCED: "internal ratings, advanced",
}

_BANK_POLICY_NOTES = {
    "low_end": "bank-row range cells resolved to the low end (50%), both cells together",
    "high_end": "bank-row range cells resolved to the high end (100%), both cells together",
}

TSA_FOOTNOTE = (
    "note: income is measured per business line by gross income for every line;"
    " the published per-line activity measures (average assets, volumes) are"
    " not used by the charge formula."
)


def error_provenance(exc: BaseException) -> str:
    """Name the engine area an error came from, for CLI error rendering."""
    mapping = (
        ((errors.ParseError, errors.ConfigError, errors.MissingPeriod), "input/config"),
        ((errors.UnknownRating, errors.ValidationFailure, errors.CurrencyMismatch),
         "core model"),
        ((errors.MissingCell, errors.UnknownCategory), "standardized credit"),
        ((errors.OutOfRange, errors.UnknownFunction, errors.NonFiniteWeight),
         "internal ratings"),
        ((errors.IncompleteHistory, errors.MissingLine,
          errors.DowngradeWithoutOverride, errors.UnregisteredAdvancedHook),
         "operational risk"),
        ((errors.EmptyDenominator, errors.InvalidOverride), "aggregation"),
    )
    for types, label in mapping:
        if isinstance(exc, types):
            return label
    return "engine"


def _ratio_text(ratio: Fraction | None) -> str:
    return format_percent(ratio) if ratio is not None else UNDEFINED_RATIO


def _oprisk_label(result: OpRiskResult) -> str:
    kind = result.approach.kind
    if kind is ApproachKind.BASIC_INDICATOR:
        return "basic indicator (alpha = 15% of average gross income)"
    if kind is ApproachKind.STANDARDIZED:
        return "standardized (per-business-line beta)"
    return f"advanced measurement via registered hook {result.approach.hook!r}"


def _config_echo_lines(config: EngineConfig, tables: TableSet) -> list[str]:
    lines = [
        f"regime:            {config.regime.key}",
        f"credit approach:   {_CREDIT_LABELS[config.credit_approach]}",
        f"bank option:       {_BANK_POLICY_NOTES[config.bank_policy.key]}",
    ]
    if config.credit_approach.uses_irb:
        lines.append(f"risk-weight fn:    {config.irb_function}")
    if config.regime is Regime.BASEL2 and config.oprisk_approach is not None:
        lines.append(f"oprisk approach:   {config.oprisk_approach.key}")
        lines.append(f"negative-GI rule:  {config.negative_gi_policy.key}")
    lines.append(f"weights table:     {tables.risk_weights.source}")
    lines.append(f"ccf table:         {tables.ccf.source}")
    if config.regime is Regime.BASEL2:
        lines.append(f"beta table:        {tables.betas.source}")
    lines.append(f"currency:          {config.currency}")
    return lines


def _capital_lines(capital: CapitalBase) -> list[str]:
    lines = [f"total own funds:   {capital.total_own_funds.formatted()}"]
    if capital.tier1 is not None and capital.tier2 is not None:
        lines.append(f"  core (tier 1):   {capital.tier1.formatted()}")
        lines.append(f"  suppl. (tier 2): {capital.tier2.formatted()}")
    return lines


def _credit_section(credit: CreditResult) -> list[str]:
    lines = ["CREDIT RISK", LIGHT_RULE]
    if credit.approach is CreditApproach.STANDARDIZED:
        header = f"{'id':<12} {'ccf':>8} {'weight':>8} {'risk-weighted':>18}"
        lines.append(header)
        for line in credit.lines:
            lines.append(
                f"{line.exposure_id:<12} {format_percent(line.ccf):>8}"
                f" {format_percent(line.weight):>8} {line.amount.formatted():>18}"
            )
    else:
        header = (
            f"{'id':<12} {'pd':>8} {'lgd':>8} {'maturity':>9}"
            f" {'weight':>8} {'risk-weighted':>18}"
        )
        lines.append(header)
        for irb_line in credit.irb_lines:
            params = irb_line.params
            flag = " (off-balance)" if irb_line.off_balance else ""
            lines.append(
                f"{irb_line.exposure_id:<12} {format_percent(params.pd):>8}"
                f" {format_percent(params.lgd):>8}"
                f" {fraction_to_decimal_text(params.maturity_years):>9}"
                f" {format_percent(irb_line.weight):>8}"
                f" {irb_line.amount.formatted():>18}{flag}"
            )
    lines.append(f"total risk-weighted assets: {credit.total_rwa.formatted()}")
    return lines


def _oprisk_section(result: OpRiskResult) -> list[str]:
    lines = ["OPERATIONAL RISK", LIGHT_RULE]
    lines.append(f"approach:          {_oprisk_label(result)}")
    if result.income_span:
        lines.append(f"income years:      {result.income_span}")
    if result.note:
        lines.append(f"note:              {result.note}")
    if result.average_income is not None:
        lines.append(f"average income:    {result.average_income.formatted()}")
    if result.tsa is not None:
        for line in BusinessLine:
            charge = result.tsa.per_line[line]
            lines.append(f"  {line.key:<24} {charge.formatted():>18}")
        lines.append(f"  {TSA_FOOTNOTE}")
    lines.append(f"operational charge: {result.charge.formatted()}")
    return lines


def _shares_lines(report: CapitalReport) -> list[str]:
    lines = ["denominator shares (data-driven vs published 75/20/5 reference):"]
    if report.shares is None:
        lines.append("  undefined: the denominator is zero")
        return lines
    for key, label in (("credit", "credit"), ("oprisk", "operational"),
                       ("market", "market")):
        share = report.shares[key]
        reference = REFERENCE_ALLOCATION[key]
        lines.append(
            f"  {label:<12} {format_percent(share):>8}"
            f"   (reference {format_percent(reference)})"
        )
    return lines


def _solvency_section(result: ComputeResult) -> list[str]:
    report = result.report
    config = result.config
    lines = ["SOLVENCY", LIGHT_RULE]
    lines.extend(_capital_lines(result.capital))
    if config.regime is Regime.BASEL2:
        market = result.market_charge
        lines.append(f"market charge (input): {market.formatted()}")
        lines.append(
            "denominator = credit RWA + 12.5 x market charge"
            " + 12.5 x operational charge"
        )
    else:
        lines.append("denominator = credit RWA (credit-only regime)")
    lines.append(f"denominator:       {report.denominator.formatted()}")
    if config.regime is Regime.BASEL2:
        lines.append(f"solvency ratio (full denominator): {_ratio_text(report.mcdonough)}")
        lines.append(f"credit-only reference ratio:       {_ratio_text(report.cooke)}")
        lines.extend(_shares_lines(report))
    else:
        lines.append(f"solvency ratio (credit-only):      {_ratio_text(report.cooke)}")
    lines.append(f"minimum ratio:     {format_percent(report.minimum_ratio)}")
    if report.addon.units:
        lines.append(f"capital add-on:    {report.addon.formatted()}")
    lines.append(f"minimum required:  {report.min_required_capital.formatted()}")
    surplus_label = "surplus" if not report.surplus.is_negative else "shortfall"
    surplus_amount = (
        report.surplus if not report.surplus.is_negative else -report.surplus
    )
    lines.append(f"{surplus_label}:           {surplus_amount.formatted()}")
    lines.append(f"status:            "
                 f"{'COMPLIANT' if report.compliant else 'NON-COMPLIANT'}")
    return lines


def render_compute_text(result: ComputeResult) -> str:
    """The human-readable run report."""
    parts = [RULE, "REGULATORY CAPITAL REPORT", RULE]
    parts.extend(_config_echo_lines(result.config, result.tables))
    parts.append("")
    parts.extend(_credit_section(result.credit))
    parts.append("")
    if result.oprisk is not None:
        parts.extend(_oprisk_section(result.oprisk))
        parts.append("")
    parts.extend(_solvency_section(result))
    parts.append(RULE)
    return "\n".join(parts) + "\n"


def _money_doc(amount: Money) -> str:
    return amount.text()


def _ratio_doc(ratio: Fraction | None) -> str | None:
    return format_percent(ratio) if ratio is not None else None


def _config_doc(config: EngineConfig, tables: TableSet) -> dict:
    doc = {
        "regime": config.regime.key,
        "credit_approach": config.credit_approach.key,
        "bank_option_policy": config.bank_policy.key,
        "currency": config.currency,
        "tables": {
            "risk_weights": tables.risk_weights.source,
            "ccf": tables.ccf.source,
            "betas": tables.betas.source,
        },
    }
    if config.credit_approach.uses_irb:
        doc["irb_function"] = config.irb_function
    if config.oprisk_approach is not None:
        doc["oprisk_approach"] = config.oprisk_approach.key
        doc["negative_gi_policy"] = config.negative_gi_policy.key
    if config.min_ratio_override is not None:
        doc["min_ratio_override"] = format_percent(config.min_ratio_override)
    if config.capital_addon is not None:
        doc["capital_addon"] = _money_doc(config.capital_addon)
    if config.adjustment_justification:
        doc["adjustment_justification"] = config.adjustment_justification
    if config.disclosure_period:
        doc["disclosure_period"] = config.disclosure_period
    return doc


def compute_document(result: ComputeResult) -> dict:
    """The machine-readable run document (plain JSON-able types)."""
    report = result.report
    credit = result.credit
    doc: dict = {
        "config": _config_doc(result.config, result.tables),
        "credit": {
            "approach": credit.approach.key,
            "total_rwa": _money_doc(credit.total_rwa),
            "lines": [
                {
                    "id": line.exposure_id,
                    "ccf": format_percent(line.ccf),
                    "weight": format_percent(line.weight),
                    "amount": _money_doc(line.amount),
                }
                for line in credit.lines
            ]
            + [
                {
                    "id": irb_line.exposure_id,
                    "pd": format_percent(irb_line.params.pd),
                    "lgd": format_percent(irb_line.params.lgd),
                    "maturity_years": fraction_to_decimal_text(
                        irb_line.params.maturity_years
                    ),
                    "ead": _money_doc(irb_line.params.ead),
                    "weight": format_percent(irb_line.weight),
                    "amount": _money_doc(irb_line.amount),
                    "off_balance": irb_line.off_balance,
                }
                for irb_line in credit.irb_lines
            ],
        },
        "capital": {
            "total_own_funds": _money_doc(result.capital.total_own_funds),
            "tier1": (
                _money_doc(result.capital.tier1)
                if result.capital.tier1 is not None
                else None
            ),
            "tier2": (
                _money_doc(result.capital.tier2)
                if result.capital.tier2 is not None
                else None
            ),
        },
        "solvency": {
            "denominator": _money_doc(report.denominator),
            "full_ratio": _ratio_doc(report.mcdonough),
            "credit_only_ratio": _ratio_doc(report.cooke),
            "minimum_ratio": format_percent(report.minimum_ratio),
            "capital_addon": _money_doc(report.addon),
            "min_required_capital": _money_doc(report.min_required_capital),
            "surplus": _money_doc(report.surplus),
            "compliant": report.compliant,
            "shares": (
                {
                    key: format_percent(share)
                    for key, share in sorted(report.shares.items())
                }
                if report.shares is not None
                else None
            ),
        },
    }
    if result.oprisk is not None:
        oprisk_doc: dict = {
            "approach": result.oprisk.approach.key,
            "negative_gi_policy": result.oprisk.policy.key,
            "charge": _money_doc(result.oprisk.charge),
        }
        if result.oprisk.average_income is not None:
            oprisk_doc["average_income"] = _money_doc(result.oprisk.average_income)
        if result.oprisk.tsa is not None:
            oprisk_doc["per_line"] = {
                line.key: _money_doc(result.oprisk.tsa.per_line[line])
                for line in BusinessLine
            }
        if result.oprisk.income_span:
            oprisk_doc["income_years"] = result.oprisk.income_span
        if result.oprisk.note:
            oprisk_doc["note"] = result.oprisk.note
        doc["oprisk"] = oprisk_doc
    if result.market_charge is not None:
        doc["market"] = {"capital_charge": _money_doc(result.market_charge)}
    return doc


def render_json(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render_compare_text(comparison: CompareResult) -> str:
    """Side-by-side regime report with the reform markers."""
    credit_only = comparison.credit_only.report
    full = comparison.full.report
    parts = [RULE, "REGIME COMPARISON", RULE]
    parts.extend(
        _config_echo_lines(comparison.full.config, comparison.full.tables)
    )
    parts.append("")
    parts.append(f"{'':<28}{'credit-only':>18}{'full':>18}")
    parts.append(
        f"{'credit RWA':<28}"
        f"{comparison.credit_only.credit.total_rwa.formatted():>18}"
        f"{comparison.full.credit.total_rwa.formatted():>18}"
    )
    parts.append(
        f"{'denominator':<28}{credit_only.denominator.formatted():>18}"
        f"{full.denominator.formatted():>18}"
    )
    parts.append(
        f"{'solvency ratio':<28}{_ratio_text(credit_only.cooke):>18}"
        f"{_ratio_text(full.mcdonough):>18}"
    )
    parts.append(
        f"{'minimum required':<28}{credit_only.min_required_capital.formatted():>18}"
        f"{full.min_required_capital.formatted():>18}"
    )
    parts.append(
        f"{'status':<28}"
        f"{'COMPLIANT' if credit_only.compliant else 'NON-COMPLIANT':>18}"
        f"{'COMPLIANT' if full.compliant else 'NON-COMPLIANT':>18}"
    )
    parts.append("")
    delta = comparison.required_delta
    sign = "-" if delta.is_negative else "+"
    magnitude = -delta if delta.is_negative else delta
    parts.append(
        f"additional capital required by the full regime: {sign}{magnitude.formatted()}"
    )
    parts.append("")
    parts.append("reform markers applied in this run:")
    for novelty in comparison.novelties:
        box = "[x]" if novelty.applied else "[ ]"
        parts.append(f"  {box} {novelty.name}: {novelty.note}")
    parts.append(RULE)
    return "\n".join(parts) + "\n"


def compare_document(comparison: CompareResult) -> dict:
    return {
        "credit_only": compute_document(comparison.credit_only),
        "full": compute_document(comparison.full),
        "required_delta": _money_doc(comparison.required_delta),
        "novelties": [
            {"name": n.name, "applied": n.applied, "note": n.note}
            for n in comparison.novelties
        ],
    }


def render_disclosure_text(disclosure: DisclosureReport) -> str:
    """The semiannual public document; field set is extensible."""
    result = disclosure.result
    report = result.report
    config = result.config
    parts = [RULE, "SEMIANNUAL CAPITAL ADEQUACY DISCLOSURE", RULE]
    parts.append(f"period:            {disclosure.period}")
    parts.append(f"scope:             {disclosure.scope}")
    parts.append("")
    parts.append("OWN FUNDS: LEVEL AND STRUCTURE")
    parts.append(LIGHT_RULE)
    parts.extend(_capital_lines(result.capital))
    parts.append("")
    parts.append("RISK EXPOSURE AND CAPITAL PER RISK")
    parts.append(LIGHT_RULE)
    parts.append(
        f"credit:            rwa {result.credit.total_rwa.formatted()}"
        f"  (method: {_CREDIT_LABELS[result.credit.approach]})"
    )
    if config.regime is Regime.BASEL2:
        market = result.market_charge
        parts.append(
            f"market:            charge {market.formatted()}  (method: input figure)"
        )
        oprisk = result.oprisk
        parts.append(
            f"operational:       charge {oprisk.charge.formatted()}"
            f"  (method: {_oprisk_label(oprisk)})"
        )
    parts.append("")
    parts.append("CAPITAL ADEQUACY")
    parts.append(LIGHT_RULE)
    parts.append(f"denominator:       {report.denominator.formatted()}")
    if config.regime is Regime.BASEL2:
        parts.append(f"solvency ratio:    {_ratio_text(report.mcdonough)}")
    else:
        parts.append(f"solvency ratio:    {_ratio_text(report.cooke)}")
    parts.append(f"minimum ratio:     {format_percent(report.minimum_ratio)}")
    parts.append(f"minimum required:  {report.min_required_capital.formatted()}")
    parts.append(f"status:            "
                 f"{'COMPLIANT' if report.compliant else 'NON-COMPLIANT'}")
    parts.append("")
    parts.append("CONFIGURATION ECHO")
    parts.append(LIGHT_RULE)
    parts.extend(_config_echo_lines(config, result.tables))
    parts.append(RULE)
    return "\n".join(parts) + "\n"


def disclosure_document(disclosure: DisclosureReport) -> dict:
    doc = compute_document(disclosure.result)
    return {
        "period": disclosure.period,
        "scope": disclosure.scope,
        "report": doc,
    }
