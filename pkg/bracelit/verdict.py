"""
Structured check results.
"""

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """
    Result of a mathematical check.

    Attributes:
        name: Short name of the check, e.g. "two_sided" or "lambda_invariant".
        holds: Whether the checked property holds.
        witness: The lexicographically first failure, if any.
        failures: Every failure, in lexicographic order, for checks that enumerate them.
        items: Sub-verdicts for checks composed of independent clauses.
        note: Free-form detail for reports.
    """

    name: str
    holds: bool
    witness: tuple[Any, ...] | None = None
    failures: tuple[tuple[Any, ...], ...] = ()
    items: tuple["Verdict", ...] = field(default=())
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def item(self, name: str) -> "Verdict":
        """
        Look up a sub-verdict by name.

        Raises:
            KeyError: If no sub-verdict has that name.
        """
        for sub in self.items:
            if sub.name == name:
                return sub
        raise KeyError(name)

    @classmethod
    def combine(cls, name: str, items: "list[Verdict] | tuple[Verdict, ...]", note: str = "") -> "Verdict":
        """Build a verdict that holds iff every item holds; the witness is the first failing item's."""
        items = tuple(items)
        failed = [v for v in items if not v.holds]
        return cls(
            name=name,
            holds=not failed,
            witness=failed[0].witness if failed else None,
            items=items,
            note=note,
        )
