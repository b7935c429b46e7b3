"""
Text rendering for command output.
Every renderer returns deterministic text; machine-readable lines start with RESULT and a tab.
"""

from collections.abc import Iterable

from bracelit.atlas import CatalogEntry, ScanLine
from bracelit.constants import RESULT_PREFIX
from bracelit.grp import ElementSet
from bracelit.huq import CentraliserReport
from bracelit.nalg import TERMS, IdentitySolution
from bracelit.verdict import Verdict


def result(*fields: object) -> str:
    """A machine-readable line: RESULT followed by tab-separated fields."""
    return RESULT_PREFIX + "\t".join(str(f) for f in fields)


def _labelled(entry: CatalogEntry | None, s: ElementSet | None) -> str:
    if s is None:
        return "ABSENT"
    if entry is None or entry.labels is None:
        return "{" + str(s) + "}"
    return "{" + ", ".join(entry.label(i) for i in s) + "}"


def _witness(v: Verdict) -> str:
    failed = [item for item in v.items if not item.holds] or [v]
    return "; ".join(f"{item.name} {item.witness}" for item in failed if item.witness is not None)


def render_centraliser(report: CentraliserReport, entry: CatalogEntry | None = None) -> str:
    """
    Render a centraliser report.

    Args:
        report: The report.
        entry: Optional catalog entry whose labels are used for readability.

    Returns:
        Report text.
    """
    lines = [f"# Huq centraliser of I = {_labelled(entry, report.ideal)}", ""]

    lines.append(f"C(B,I) ({len(report.c_set)} elements): {_labelled(entry, report.c_set)}")
    if report.c_set_is_subbrace:
        lines.append("C(B,I) is a sub-skew brace")
    else:
        lines.append(f"C(B,I) is not a sub-skew brace: {_witness(report.c_set_is_subbrace)}")

    lines.append(f"Cooperating sub-braces: {len(report.cooperating_subbraces)}")
    for s in report.cooperating_subbraces:
        lines.append(f"  {_labelled(entry, s)}")
    largest_ideal = report.largest_cooperating_ideal
    lines.append(f"Largest cooperating ideal: {_labelled(entry, largest_ideal)}")

    if report.centraliser is None:
        lines.append("No Huq centraliser: the cooperating sub-braces have no maximum")
        status = "ABSENT"
    else:
        lines.append(f"Z_B(I) ({len(report.centraliser)} elements): {_labelled(entry, report.centraliser)}")
        assert report.centraliser_is_ideal is not None
        if report.normal:
            status = "NORMAL"
        else:
            lines.append(f"Z_B(I) is not an ideal: {_witness(report.centraliser_is_ideal)}")
            status = "NOT_NORMAL"

    lines.append("")
    lines.append(result("ideal", report.ideal))
    lines.append(result("c_set", report.c_set))
    lines.append(result("centraliser", report.centraliser if report.centraliser is not None else "ABSENT"))
    lines.append(result("status", status))
    return "\n".join(lines)


def render_solution(solution: IdentitySolution) -> str:
    lines = [f"# {solution.side} identity, {solution.equations} scalar equations"]
    if solution.consistent:
        assert solution.sample is not None
        terms = ", ".join(f"{label}: {c}" for (label, _), c in zip(TERMS, solution.sample, strict=True))
        lines.append(f"Sample solution (free unknowns = 0): {terms}")
        lines.append(f"Nullity: {solution.nullity}")
        lines.append(result(solution.side, "FEASIBLE", " ".join(str(c) for c in solution.sample)))
    else:
        assert solution.witness is not None
        x, y, z = solution.witness
        lines.append(f"No solution; witness (x, y, z) = (e{x}, e{y}, e{z}) (0-based)")
        lines.append(result(solution.side, "INFEASIBLE", f"{x},{y},{z}"))
    return "\n".join(lines)


def render_verdict(v: Verdict, indent: str = "") -> list[str]:
    mark = "ok" if v.holds else "FAILED"
    line = f"{indent}{v.name}: {mark}"
    if not v.holds and v.witness is not None:
        line += f" (witness {v.witness})"
    lines = [line]
    for item in v.items:
        lines += render_verdict(item, indent + "  ")
    return lines


def render_scan(lines: Iterable[ScanLine]) -> str:
    return "\n".join(line.render() for line in lines)
