"""Rendering of normalized error-distribution tables.

Layout mirrors the usual presentation: one row per error category plus a
Total row; one column for the baseline system, then for every other
system its percentage column followed by a delta-to-baseline column.
Cells show two decimals (the baseline Total is exactly "100"); deltas
carry an explicit sign.  The TSV, Markdown and JSON renderings contain
identical display values; JSON additionally carries full-precision raws.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .taxonomy import (
    CATEGORY_LABELS,
    DeltaReport,
    ErrorCategory,
    ErrorProfile,
    NormalizedProfile,
    deltas,
    normalize,
)

__all__ = ["ReportTable", "build_table", "render", "FORMATS"]

TOTAL_LABEL = "Total"


def _fmt_pct(value: float) -> str:
    return f"{value:.2f}"


def _fmt_delta(value: float) -> str:
    rounded = round(value, 2)
    if rounded == 0:
        return "0.00"
    return f"{rounded:+.2f}"


@dataclass(frozen=True)
class ReportTable:
    baseline: str
    systems: tuple[str, ...]  # baseline first
    categories: tuple[str, ...]  # display labels, Total last
    display: dict[tuple[str, str], str]  # (system, label) -> cell
    delta_display: dict[tuple[str, str], str]  # non-baseline systems only
    raw: dict[tuple[str, str], float]
    delta_raw: dict[tuple[str, str], float]


def build_table(profiles: list[ErrorProfile], baseline: str) -> ReportTable:
    normalized = normalize(profiles, baseline)
    delta_list = deltas(normalized, baseline)
    order = [baseline] + [p.system for p in profiles if p.system != baseline]
    norm_by = {p.system: p for p in normalized}
    delta_by = {d.system: d for d in delta_list}
    labels = tuple(CATEGORY_LABELS[cat] for cat in ErrorCategory) + (TOTAL_LABEL,)

    display: dict[tuple[str, str], str] = {}
    delta_display: dict[tuple[str, str], str] = {}
    raw: dict[tuple[str, str], float] = {}
    delta_raw: dict[tuple[str, str], float] = {}
    for system in order:
        norm: NormalizedProfile = norm_by[system]
        cells = {CATEGORY_LABELS[cat]: norm.percentages[cat] for cat in ErrorCategory}
        cells[TOTAL_LABEL] = norm.total_pct
        for label, value in cells.items():
            raw[(system, label)] = value
            display[(system, label)] = _fmt_pct(value)
        if system == baseline:
            display[(system, TOTAL_LABEL)] = "100"
        else:
            rep: DeltaReport = delta_by[system]
            dcells = {CATEGORY_LABELS[cat]: rep.deltas[cat] for cat in ErrorCategory}
            dcells[TOTAL_LABEL] = rep.total_delta
            for label, value in dcells.items():
                delta_raw[(system, label)] = value
                delta_display[(system, label)] = _fmt_delta(value)
    return ReportTable(baseline, tuple(order), labels, display, delta_display, raw, delta_raw)


def _header_cells(table: ReportTable) -> list[str]:
    cells = ["category", table.baseline]
    for system in table.systems[1:]:
        cells.extend([system, f"Δ_{table.baseline}"])
    return cells


def _row_cells(table: ReportTable, label: str) -> list[str]:
    cells = [label, table.display[(table.baseline, label)]]
    for system in table.systems[1:]:
        cells.append(table.display[(system, label)])
        cells.append(table.delta_display[(system, label)])
    return cells


def render_tsv(table: ReportTable) -> str:
    lines = ["\t".join(_header_cells(table))]
    lines.extend("\t".join(_row_cells(table, label)) for label in table.categories)
    return "\n".join(lines) + "\n"


def render_markdown(table: ReportTable) -> str:
    header = _header_cells(table)
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join(" --- " for _ in header) + "|",
    ]
    lines.extend(
        "| " + " | ".join(_row_cells(table, label)) + " |" for label in table.categories
    )
    return "\n".join(lines) + "\n"


def render_json(table: ReportTable) -> str:
    systems = []
    for system in table.systems:
        entry: dict = {
            "system": system,
            "display": {label: table.display[(system, label)] for label in table.categories},
            "raw": {label: table.raw[(system, label)] for label in table.categories},
        }
        if system != table.baseline:
            entry["delta_display"] = {
                label: table.delta_display[(system, label)] for label in table.categories
            }
            entry["delta_raw"] = {
                label: table.delta_raw[(system, label)] for label in table.categories
            }
        systems.append(entry)
    doc = {
        "baseline": table.baseline,
        "categories": list(table.categories),
        "systems": systems,
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


FORMATS = {"tsv": render_tsv, "md": render_markdown, "json": render_json}


def render(table: ReportTable, fmt: str) -> str:
    try:
        return FORMATS[fmt](table)
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}") from None
