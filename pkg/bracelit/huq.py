"""
Huq cooperation and centralisers of ideals in skew braces.

Two sub-braces I and J cooperate when (x, y) -> x + y is a brace homomorphism I x J -> B.
The centraliser Z_B(I) is the largest sub-brace cooperating with I; every such sub-brace
lies in C(B,I), so the search is confined there.
"""

import logging
from dataclasses import dataclass

import numpy as np

from bracelit.errors import NotAnIdeal, NotASubBrace
from bracelit.grp import ElementSet, closed_subsets
from bracelit.skb import (
    SkewBrace,
    additive_centraliser,
    is_ideal,
    is_sub_brace,
    ker_lambda_on,
    multiplicative_centraliser,
)
from bracelit.verdict import Verdict

logger = logging.getLogger(__name__)


def _require_ideal(b: SkewBrace, ideal: ElementSet) -> None:
    if not is_sub_brace(b, ideal) or not is_ideal(b, ideal):
        raise NotAnIdeal(ideal.elements)


def c_set(b: SkewBrace, ideal: ElementSet) -> ElementSet:
    """
    C(B,I): the additive centraliser, the multiplicative centraliser and ker lambda^I, intersected.

    Raises:
        NotAnIdeal: If ``ideal`` is not an ideal of ``b``.
    """
    _require_ideal(b, ideal)
    return (
        additive_centraliser(b, ideal)
        .intersection(multiplicative_centraliser(b, ideal))
        .intersection(ker_lambda_on(b, ideal))
    )


def cooperates(b: SkewBrace, i: ElementSet, j: ElementSet) -> Verdict:
    """
    Check that psi(x, y) = x + y is a homomorphism from I x J to B.

    For all x, x' in I and y, y' in J:
    (x+y) + (x'+y') = (x+x') + (y+y') and (x+y) * (x'+y') = (x*x') + (y*y').

    Returns:
        Verdict with items "additive" and "multiplicative"; witnesses are (x, y, x', y').

    Raises:
        NotASubBrace: If I or J is not a sub-brace.
    """
    for which, s in (("I", i), ("J", j)):
        if not is_sub_brace(b, s):
            raise NotASubBrace(which, s.elements)
    add, mul = b.add.table, b.mul.table
    x = i.array[:, None, None, None]
    y = j.array[None, :, None, None]
    x2 = i.array[None, None, :, None]
    y2 = j.array[None, None, None, :]
    left = add[x, y]
    right = add[x2, y2]
    items = []
    for name, lhs, rhs in (
        ("additive", add[left, right], add[add[x, x2], add[y, y2]]),
        ("multiplicative", mul[left, right], add[mul[x, x2], mul[y, y2]]),
    ):
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            xi, yi, xj, yj = (int(v) for v in bad[0])
            witness = (i.elements[xi], j.elements[yi], i.elements[xj], j.elements[yj])
            items.append(Verdict(name, False, witness=witness))
        else:
            items.append(Verdict(name, True))
    return Verdict.combine("cooperates", items)


def _sub_braces_within(b: SkewBrace, region: ElementSet) -> list[ElementSet]:
    return closed_subsets([b.add.rows, b.mul.rows], b.zero, b.order, within=region)


def _maximum(sets: list[ElementSet]) -> ElementSet | None:
    if not sets:
        return None
    largest = max(sets, key=ElementSet.sort_key)
    if all(s.issubset(largest) for s in sets):
        return largest
    return None


def _cooperating(b: SkewBrace, ideal: ElementSet, region: ElementSet) -> list[ElementSet]:
    return [s for s in _sub_braces_within(b, region) if cooperates(b, ideal, s)]


def huq_centraliser(b: SkewBrace, ideal: ElementSet) -> ElementSet | None:
    """
    The largest sub-brace cooperating with ``ideal``, or None when no maximum exists.

    Cooperation is tested directly for every sub-brace inside C(B,I).

    Raises:
        NotAnIdeal: If ``ideal`` is not an ideal of ``b``.
    """
    return _maximum(_cooperating(b, ideal, c_set(b, ideal)))


def _closure_witness(table: np.ndarray, s: ElementSet, name: str) -> Verdict:
    products = table[s.array[:, None], s.array[None, :]]
    bad = np.argwhere(~np.isin(products, s.array))
    if bad.size:
        xi, yi = (int(v) for v in bad[0])
        return Verdict(name, False, witness=(s.elements[xi], s.elements[yi], int(products[xi, yi])))
    return Verdict(name, True)


@dataclass(frozen=True)
class CentraliserReport:
    """
    Everything needed to decide whether an ideal has a normal Huq centraliser.

    Attributes:
        ideal: The ideal I.
        c_set: C(B,I).
        c_set_is_subbrace: Items "additive_closure" and "multiplicative_closure", witnesses (x, y, result).
        cooperating_subbraces: Sub-braces inside C(B,I) that cooperate with I.
        cooperating_ideals: Those of them that are ideals of B.
        centraliser: Z_B(I), or None when no largest cooperating sub-brace exists.
        centraliser_is_ideal: is_ideal verdict on Z_B(I), or None when it is absent.
    """

    ideal: ElementSet
    c_set: ElementSet
    c_set_is_subbrace: Verdict
    cooperating_subbraces: tuple[ElementSet, ...]
    cooperating_ideals: tuple[ElementSet, ...]
    centraliser: ElementSet | None
    centraliser_is_ideal: Verdict | None

    @property
    def normal(self) -> bool:
        """True iff the centraliser exists and is an ideal."""
        return self.centraliser_is_ideal is not None and self.centraliser_is_ideal.holds

    @property
    def largest_cooperating_ideal(self) -> ElementSet | None:
        return _maximum(list(self.cooperating_ideals))


def centraliser_report(b: SkewBrace, ideal: ElementSet) -> CentraliserReport:
    """
    Assemble C(B,I), its closure status, the cooperating sub-braces and Z_B(I) with its ideal verdict.

    Raises:
        NotAnIdeal: If ``ideal`` is not an ideal of ``b``.
    """
    region = c_set(b, ideal)
    closure = Verdict.combine(
        "c_set_is_subbrace",
        [
            _closure_witness(b.add.table, region, "additive_closure"),
            _closure_witness(b.mul.table, region, "multiplicative_closure"),
        ],
    )
    cooperating = _cooperating(b, ideal, region)
    centraliser = _maximum(cooperating)
    verdict = is_ideal(b, centraliser) if centraliser is not None else None
    logger.debug(
        "ideal %s: |C(B,I)| = %d, %d cooperating sub-braces, centraliser %s",
        ideal,
        len(region),
        len(cooperating),
        centraliser if centraliser is not None else "absent",
    )
    return CentraliserReport(
        ideal=ideal,
        c_set=region,
        c_set_is_subbrace=closure,
        cooperating_subbraces=tuple(cooperating),
        cooperating_ideals=tuple(s for s in cooperating if is_ideal(b, s)),
        centraliser=centraliser,
        centraliser_is_ideal=verdict,
    )
