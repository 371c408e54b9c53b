"""Stable text renderings of reports: markdown, CSV, JSON.

Output never contains timestamps or other run-dependent data, so the same
input always renders to the same bytes.
"""

from __future__ import annotations

import json

from .errors import DomainError
from .simplicial import PseudomanifoldReport
from .verify import DeRhamTable, DualityReport, StokesReport

__all__ = [
    "FORMATS",
    "render_table",
    "render_duality",
    "render_stokes",
    "render_validation",
    "render_betti",
]

FORMATS = ("md", "csv", "json")


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise DomainError(f"unknown output format {fmt!r}; choose one of {FORMATS}")


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _md_table(header: list[str], rows: list[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |"]
    lines.append("| " + " | ".join("---" for _ in header) + " |")
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return lines


def _csv_lines(header: list[str], rows: list[list[str]]) -> list[str]:
    return [",".join(header)] + [",".join(r) for r in rows]


# -- de Rham table --------------------------------------------------------


def render_table(table: DeRhamTable, fmt: str = "md") -> str:
    _check_format(fmt)
    degrees = [str(j) for j in range(table.dimension + 1)]
    if fmt == "json":
        return _json_dumps(
            {
                "kind": "de-rham-table",
                "dimension": table.dimension,
                "singular_source": table.singular_source,
                "rows": [
                    {
                        "label": r.label,
                        "betti": list(r.betti),
                        "basis_sizes": list(r.basis_sizes),
                    }
                    for r in table.rows
                ],
            }
        )
    if fmt == "csv":
        lines = _csv_lines(
            ["row", "kind"] + [f"j={j}" for j in degrees],
            [[r.label, "betti"] + [str(b) for b in r.betti] for r in table.rows]
            + [
                [r.label, "basis_size"] + [str(n) for n in r.basis_sizes]
                for r in table.rows
            ],
        )
        lines.append(f"singular source,{table.singular_source}")
        return "\n".join(lines) + "\n"
    lines = _md_table(
        ["cohomology groups (j=)"] + degrees,
        [[r.label] + [str(b) for b in r.betti] for r in table.rows],
    )
    lines.append("")
    lines.extend(
        _md_table(
            ["chain space sizes (i=)"] + degrees,
            [[r.label] + [str(n) for n in r.basis_sizes] for r in table.rows],
        )
    )
    lines.append("")
    lines.append(f"singular source: {table.singular_source}")
    return "\n".join(lines) + "\n"


# -- duality-style reports -------------------------------------------------


def render_duality(report: DualityReport, fmt: str = "md") -> str:
    _check_format(fmt)
    if fmt == "json":
        return _json_dumps(
            {
                "kind": "duality-report",
                "title": report.title,
                "overall": report.overall,
                "comparisons": [
                    {
                        "left_label": c.label_left,
                        "right_label": c.label_right,
                        "left": list(c.left),
                        "right": list(c.right),
                        "verdicts": list(c.verdicts),
                    }
                    for c in report.comparisons
                ],
                "notes": list(report.notes),
            }
        )
    if fmt == "csv":
        rows = []
        for c in report.comparisons:
            for j, (a, b, ok) in enumerate(zip(c.left, c.right, c.verdicts)):
                rows.append(
                    [c.label_left, c.label_right, str(j), str(a), str(b),
                     "pass" if ok else "FAIL"]
                )
        lines = _csv_lines(["left", "right", "degree", "left_value", "right_value", "verdict"], rows)
        lines.append(f"overall,{'pass' if report.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"
    lines = [f"### {report.title}", ""]
    for c in report.comparisons:
        degrees = [str(j) for j in range(len(c.left))]
        lines.extend(
            _md_table(
                ["", *degrees],
                [
                    [c.label_left, *[str(v) for v in c.left]],
                    [c.label_right, *[str(v) for v in c.right]],
                    ["verdict", *["pass" if ok else "FAIL" for ok in c.verdicts]],
                ],
            )
        )
        lines.append("")
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"overall: {'pass' if report.overall else 'FAIL'}")
    return "\n".join(lines) + "\n"


# -- Stokes criterion -------------------------------------------------------


def render_stokes(report: StokesReport, fmt: str = "md") -> str:
    _check_format(fmt)
    holds = report.holds
    if fmt == "json":
        return _json_dumps(
            {
                "kind": "stokes-report",
                "dimension": report.dimension,
                "singular_dimension": report.singular_dimension,
                "holds": list(holds),
            }
        )
    if fmt == "csv":
        rows = [[str(j), "holds" if h else "fails"] for j, h in enumerate(holds)]
        lines = _csv_lines(["degree", "verdict"], rows)
        lines.append(f"singular_dimension,{report.singular_dimension}")
        return "\n".join(lines) + "\n"
    lines = [
        f"### L¹ Stokes criterion (m={report.dimension}, "
        f"dim δM={report.singular_dimension})",
        "",
    ]
    lines.extend(
        _md_table(
            ["j"] + [str(j) for j in range(len(holds))],
            [["holds"] + ["yes" if h else "no" for h in holds]],
        )
    )
    return "\n".join(lines) + "\n"


# -- validation --------------------------------------------------------------


def render_validation(report: PseudomanifoldReport, fmt: str = "md") -> str:
    _check_format(fmt)
    candidate = [list(s) for s in report.singular_candidate.maximal_simplices]
    if fmt == "json":
        return _json_dumps(
            {
                "kind": "pseudomanifold-report",
                "dimension": report.dimension,
                "pure": report.is_pure,
                "ridge_degrees_ok": report.ridge_degrees_ok,
                "verdict": report.verdict,
                "singular_candidate": candidate,
                "singular_candidate_note": "heuristic: homology-sphere link test",
            }
        )
    if fmt == "csv":
        lines = _csv_lines(
            ["field", "value"],
            [
                ["dimension", str(report.dimension)],
                ["pure", str(report.is_pure)],
                ["ridge_degrees_ok", str(report.ridge_degrees_ok)],
                ["verdict", str(report.verdict)],
                ["singular_candidate", ";".join(str(s) for s in candidate)],
            ],
        )
        return "\n".join(lines) + "\n"
    lines = [
        f"### pseudomanifold check (m={report.dimension})",
        "",
        f"- pure: {'yes' if report.is_pure else 'no'}",
        f"- every ridge in exactly two top simplices: "
        f"{'yes' if report.ridge_degrees_ok else 'no'}",
        f"- verdict: {'pseudomanifold' if report.verdict else 'NOT a pseudomanifold'}",
        f"- singular candidate (heuristic link test): {candidate if candidate else 'empty'}",
    ]
    return "\n".join(lines) + "\n"


# -- plain Betti listings -----------------------------------------------------


def render_betti(
    label: str, betti: list[int], sizes: list[int], fmt: str = "md"
) -> str:
    _check_format(fmt)
    if fmt == "json":
        return _json_dumps(
            {"kind": "betti", "label": label, "betti": betti, "basis_sizes": sizes}
        )
    degrees = [str(j) for j in range(len(betti))]
    if fmt == "csv":
        lines = _csv_lines(
            ["label", "kind"] + [f"j={d}" for d in degrees],
            [
                [label, "betti"] + [str(b) for b in betti],
                [label, "basis_size"] + [str(n) for n in sizes],
            ],
        )
        return "\n".join(lines) + "\n"
    lines = _md_table(
        [label] + degrees,
        [
            ["betti"] + [str(b) for b in betti],
            ["basis size"] + [str(n) for n in sizes],
        ],
    )
    return "\n".join(lines) + "\n"
