"""
Named skew braces, small-order enumeration, centraliser scans and file persistence.
"""

import logging
from collections.abc import Iterable, Sequence
from contextlib import nullcontext
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from bracelit.constants import AUTOMORPHISM_BOUND, ENUMERATION_BOUND, FILE_HEADER, SUB_BRACE_BOUND
from bracelit.errors import BoundExceeded, InternalFault, ParseError, ValidationError
from bracelit.grp import (
    ElementSet,
    FiniteGroup,
    automorphisms,
    cyclic_group,
    holomorph,
    make_group,
    regular_subgroups,
    small_groups,
)
from bracelit.huq import centraliser_report
from bracelit.skb import SkewBrace, enumerate_ideals, make_skew_brace, semidirect_product

logger = logging.getLogger(__name__)

# (Q,*) subgroup of index 2 acting trivially in the order-24 construction
Q8_KERNEL = (0, 1, 5, 6)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """
    A named, validated skew brace.

    Attributes:
        name: Catalog name.
        brace: The brace.
        labels: Optional tuple label per index, e.g. (a, m) for the pair (a, m).
        metadata: Free-form strings such as external classification labels.
    """

    name: str
    brace: SkewBrace
    labels: tuple[tuple[int, ...], ...] | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.labels is not None and (
            len(self.labels) != self.brace.order or len(set(self.labels)) != self.brace.order
        ):
            raise ValueError(f"Labels of {self.name} are not a bijection onto the carrier")

    def index(self, label: tuple[int, ...]) -> int:
        """Carrier index of a labelled element."""
        if self.labels is None:
            raise KeyError(label)
        return self.labels.index(tuple(label))

    def label(self, index: int) -> str:
        if self.labels is None:
            return str(index)
        return "(" + ",".join(str(v) for v in self.labels[index]) + ")"


def _validated(name: str, add: np.ndarray, mul: np.ndarray) -> SkewBrace:
    try:
        return make_skew_brace(add, mul, name=name)
    except ValidationError as e:
        raise InternalFault(f"catalog construction {name} failed validation: {e}") from e


def _pairs(p: int, q: int) -> list[tuple[int, int]]:
    """Pairs (x, y) in Z_p x Z_q at index ``q * x + y``."""
    return [(x, y) for x in range(p) for y in range(q)]


def build_q8() -> CatalogEntry:
    """
    The skew brace of order 8 with additive group Z2 x Z4 and trivial socle.

    (a, x+2y) * (b, u+2v) = (a + b + u(a + x + y + ax), x + 2y + 2xb + 2(a + xy)u + u + 2v),
    with the pair (a, m) at index 4a + m.
    """
    pairs = _pairs(2, 4)
    add = np.empty((8, 8), dtype=np.int64)
    mul = np.empty((8, 8), dtype=np.int64)
    for i, (a, m) in enumerate(pairs):
        x, y = m % 2, m // 2
        for j, (b, n) in enumerate(pairs):
            u, v = n % 2, n // 2
            add[i, j] = 4 * ((a + b) % 2) + (m + n) % 4
            first = (a + b + u * (a + x + y + a * x)) % 2
            second = (x + 2 * y + 2 * x * b + 2 * (a + x * y) * u + u + 2 * v) % 4
            mul[i, j] = 4 * first + second
    return CatalogEntry("q8", _validated("q8", add, mul), labels=tuple(pairs))


def build_acbon12() -> CatalogEntry:
    """
    An order-12 skew brace on Z3 x Z4 where the ideal {(n, 0)} is its own Huq centraliser.

    (n, m) * (x, y) = (n + (-1)^(m(m-1)/2) x, m + (-1)^m y), with (n, m) at index 4n + m.
    """
    pairs = _pairs(3, 4)
    add = np.empty((12, 12), dtype=np.int64)
    mul = np.empty((12, 12), dtype=np.int64)
    for i, (n, m) in enumerate(pairs):
        for j, (x, y) in enumerate(pairs):
            add[i, j] = 4 * ((n + x) % 3) + (m + y) % 4
            mul[i, j] = 4 * ((n + (-1) ** (m * (m - 1) // 2) * x) % 3) + (m + (-1) ** m * y) % 4
    return CatalogEntry("acbon12", _validated("acbon12", add, mul), labels=tuple(pairs))


def build_trivial(g: FiniteGroup, name: str = "") -> CatalogEntry:
    """The trivial skew brace (G, +, +)."""
    name = name or f"trivial:{g.name}"
    return CatalogEntry(name, make_skew_brace(g.table, g.table, name=name))


def build_almost_trivial(g: FiniteGroup, name: str = "") -> CatalogEntry:
    """The almost trivial skew brace (G, +, +op), a * b = b + a."""
    name = name or f"almost-trivial:{g.name}"
    return CatalogEntry(name, make_skew_brace(g.table, g.table.T, name=name))


def build_b24() -> CatalogEntry:
    """
    The order-24 skew brace J x|_sigma Q with J the trivial brace on Z3.

    sigma_u is negation on J for u outside the index-2 subgroup Q8_KERNEL of (Q,*)
    and the identity inside it. The element (h, (a, m)) sits at index 8h + 4a + m.
    """
    j = build_trivial(cyclic_group(3), name="J").brace
    q = build_q8()
    negation = [0, 2, 1]
    identity = [0, 1, 2]
    sigma = [identity if u in Q8_KERNEL else negation for u in range(8)]
    brace = semidirect_product(j, q.brace, sigma, name="b24")
    assert q.labels is not None
    labels = tuple((h, *pair) for h in range(3) for pair in q.labels)
    return CatalogEntry("b24", brace, labels=labels, metadata={"yangbaxter_type": "625"})


def build_radical_ring(p: int, k: int) -> CatalogEntry:
    """
    The two-sided brace of the nilpotent ring pZ/p^kZ with adjoint a * b = a + b + ab.

    The element i*p sits at index i.
    """
    if p < 2 or k < 1:
        raise ValueError(f"radical ring needs p >= 2 and k >= 1, got p={p}, k={k}")
    n = p ** (k - 1)
    ar = np.arange(n)
    add = (ar[:, None] + ar[None, :]) % n
    # (ip) + (jp) + (ip)(jp) = (i + j + ijp) p
    mul = (ar[:, None] + ar[None, :] + ar[:, None] * ar[None, :] * p) % n
    name = f"radical-ring:{p}:{k}"
    return CatalogEntry(name, _validated(name, add, mul), labels=tuple((int(i) * p,) for i in ar))


CATALOG = {
    "q8": build_q8,
    "acbon12": build_acbon12,
    "b24": build_b24,
}


def catalog() -> list[CatalogEntry]:
    """The named braces plus a few two-sided examples, for suites that sweep everything."""
    entries = [builder() for builder in CATALOG.values()]
    entries.append(build_almost_trivial(small_groups(6)[1]))
    entries.append(build_radical_ring(2, 4))
    entries.append(build_radical_ring(3, 3))
    return entries


def _conjugate(perm: tuple[int, ...], phi: Sequence[int], phi_inv: Sequence[int]) -> tuple[int, ...]:
    return tuple(phi[perm[phi_inv[x]]] for x in range(len(perm)))


def _from_regular(g: FiniteGroup, perms: Sequence[tuple[int, ...]], name: str) -> SkewBrace:
    by_image = {p[g.identity]: p for p in perms}
    mul = np.array([by_image[x] for x in range(g.order)], dtype=np.int64)
    return _validated(name, g.table, mul)


def regular_subgroup_braces(
    g: FiniteGroup,
    bound: int = ENUMERATION_BOUND,
    automorphism_bound: int = AUTOMORPHISM_BOUND,
) -> list[SkewBrace]:
    """
    One skew brace per regular subgroup of Hol(G), with no merging of isomorphic ones.

    Brace k is named ``<group>/<k>``.

    Raises:
        BoundExceeded: If |G| exceeds ``bound`` or ``automorphism_bound``.
    """
    if g.order > bound:
        raise BoundExceeded(g.order, bound, "regular_subgroup_braces")
    hol = holomorph(g, automorphism_bound)
    return [
        _from_regular(g, [hol.elements[i] for i in reg], f"{g.name}/{k}")
        for k, reg in enumerate(regular_subgroups(hol, base=g.identity))
    ]


def enumerate_skew_braces(
    g: FiniteGroup,
    bound: int = ENUMERATION_BOUND,
    automorphism_bound: int = AUTOMORPHISM_BOUND,
) -> list[SkewBrace]:
    """
    One skew brace per isomorphism class with additive group ``g``.

    Regular subgroups of Hol(G) give the braces: N_x is the element sending the identity
    to x and x * y = N_x(y). Two regular subgroups give isomorphic braces exactly when
    an automorphism of G conjugates one to the other.

    Raises:
        BoundExceeded: If |G| exceeds ``bound`` or ``automorphism_bound``.
    """
    if g.order > bound:
        raise BoundExceeded(g.order, bound, "enumerate_skew_braces")
    hol = holomorph(g, automorphism_bound)
    auts = [(aut.images, aut.inverse().images) for aut in automorphisms(g, automorphism_bound)]

    seen: set[tuple[tuple[int, ...], ...]] = set()
    braces: list[SkewBrace] = []
    for reg in regular_subgroups(hol, base=g.identity):
        perms = [hol.elements[i] for i in reg]
        key = min(tuple(sorted(_conjugate(p, phi, phi_inv) for p in perms)) for phi, phi_inv in auts)
        if key in seen:
            continue
        seen.add(key)
        braces.append(_from_regular(g, perms, f"{g.name}:{len(braces)}"))
    logger.info("%s: %d skew brace classes", g.name, len(braces))
    return braces


def enumerate_all(
    max_order: int,
    bound: int = ENUMERATION_BOUND,
    automorphism_bound: int = AUTOMORPHISM_BOUND,
) -> list[SkewBrace]:
    """Every skew brace class of order 1..max_order, grouped by additive group."""
    if max_order > bound:
        raise BoundExceeded(max_order, bound, "enumerate_all")
    return [
        brace
        for n in range(1, max_order + 1)
        for g in small_groups(n)
        for brace in enumerate_skew_braces(g, bound, automorphism_bound)
    ]


@dataclass(frozen=True)
class ScanLine:
    order: int
    brace_id: str
    ideal: ElementSet
    centraliser: ElementSet | None
    normal: bool

    def render(self) -> str:
        centraliser = "ABSENT" if self.centraliser is None else str(self.centraliser)
        return "\t".join(
            [str(self.order), self.brace_id, str(self.ideal), centraliser, "NORMAL" if self.normal else "NOT_NORMAL"]
        )


def scan_brace(brace: SkewBrace, brace_id: str, sub_brace_bound: int = SUB_BRACE_BOUND) -> list[ScanLine]:
    lines = []
    for ideal in enumerate_ideals(brace, sub_brace_bound):
        report = centraliser_report(brace, ideal)
        lines.append(ScanLine(brace.order, brace_id, ideal, report.centraliser, report.normal))
    return lines


def scan_centralisers(
    max_order: int,
    ingest: Iterable[CatalogEntry] = (),
    out: str | Path | None = None,
    bound: int = ENUMERATION_BOUND,
    sub_brace_bound: int = SUB_BRACE_BOUND,
    automorphism_bound: int = AUTOMORPHISM_BOUND,
) -> list[ScanLine]:
    """
    Report the Huq centraliser of every ideal of every brace up to ``max_order``.

    Enumerated braces cover orders up to min(max_order, bound); ingested entries of
    order at most ``max_order`` follow them. Lines are ordered by brace order, and by
    ideal within a brace.

    Args:
        max_order: Largest brace order to scan.
        ingest: Extra braces, typically loaded from files.
        out: Optional path. It is truncated, then each brace's lines are appended as soon
            as that brace is scanned.
        bound: Enumeration bound.
        sub_brace_bound: Largest brace order whose ideals are enumerated.
        automorphism_bound: Largest group order whose automorphisms are searched.

    Returns:
        One line per (brace, ideal).
    """
    braces = [(b.order, b.name, b) for b in enumerate_all(min(max_order, bound), bound, automorphism_bound)]
    braces += [(e.brace.order, e.name, e.brace) for e in ingest if e.brace.order <= max_order]
    braces.sort(key=lambda item: item[0])
    lines: list[ScanLine] = []
    with nullcontext() if out is None else Path(out).open("w", encoding="utf-8") as handle:
        for _, name, brace in braces:
            found = scan_brace(brace, name, sub_brace_bound)
            lines += found
            if handle is not None:
                handle.writelines(line.render() + "\n" for line in found)
                handle.flush()
    failing = sum(not line.normal for line in lines)
    logger.info("scanned %d braces, %d ideals, %d without a normal centraliser", len(braces), len(lines), failing)
    return lines


def _render_table(table: np.ndarray) -> list[str]:
    return [" ".join(str(int(v)) for v in row) for row in table]


class _Lines:
    """Cursor over meaningful lines, skipping blanks and '#' comments."""

    def __init__(self, path: Path):
        self.path = path
        raw_lines = path.read_text(encoding="utf-8").splitlines()
        self.items: list[tuple[int, str]] = []
        for number, raw in enumerate(raw_lines, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                self.items.append((number, text))
        self.pos = 0
        self.last = len(raw_lines) + 1

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise ParseError(str(self.path), self.last, f"unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def keyword(self, word: str) -> None:
        number, text = self.next(f"'{word}'")
        if text != word:
            raise ParseError(str(self.path), number, f"expected '{word}', got '{text}'")

    def header_int(self, word: str) -> int:
        number, text = self.next(f"'{word} <int>'")
        parts = text.split()
        if len(parts) != 2 or parts[0] != word or not parts[1].isdigit() or int(parts[1]) < 1:
            raise ParseError(str(self.path), number, f"expected '{word} <positive int>', got '{text}'")
        return int(parts[1])

    def table(self, n: int) -> np.ndarray:
        rows = []
        for _ in range(n):
            number, text = self.next(f"a table row of {n} integers")
            try:
                row = [int(v) for v in text.split()]
            except ValueError:
                raise ParseError(str(self.path), number, f"non-integer entry in '{text}'") from None
            if len(row) != n:
                raise ParseError(str(self.path), number, f"expected {n} entries, got {len(row)}")
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def finish(self) -> None:
        if not self.done():
            number, text = self.items[self.pos]
            raise ParseError(str(self.path), number, f"unexpected trailing content '{text}'")


def save_brace(entry: CatalogEntry | SkewBrace, path: str | Path) -> None:
    """Write a brace in the line-oriented table format."""
    brace = entry.brace if isinstance(entry, CatalogEntry) else entry
    lines = [f"{FILE_HEADER} skew brace", f"order {brace.order}", "add"]
    lines += _render_table(brace.add.table)
    lines.append("mul")
    lines += _render_table(brace.mul.table)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_brace(path: str | Path) -> CatalogEntry:
    """
    Read a brace file; the entry is named after the file stem.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ParseError: With the offending line number.
        ValidationError: If the tables do not form a skew brace.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Brace file not found: {path}")
    cursor = _Lines(path)
    n = cursor.header_int("order")
    cursor.keyword("add")
    add = cursor.table(n)
    cursor.keyword("mul")
    mul = cursor.table(n)
    cursor.finish()
    return CatalogEntry(path.stem, make_skew_brace(add, mul, name=path.stem))


def save_group(group: FiniteGroup, path: str | Path) -> None:
    lines = [f"{FILE_HEADER} group", f"order {group.order}", "table", *_render_table(group.table)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_group(path: str | Path) -> FiniteGroup:
    """
    Read a group file with a single ``table`` section.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ParseError: With the offending line number.
        ValidationError: If the table is not a group.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Group file not found: {path}")
    cursor = _Lines(path)
    n = cursor.header_int("order")
    cursor.keyword("table")
    table = cursor.table(n)
    cursor.finish()
    return make_group(table, name=path.stem)


def load_braces(directory: str | Path) -> list[CatalogEntry]:
    """Every ``*.skb`` file in a directory, sorted by file name."""
    return [load_brace(p) for p in sorted(Path(directory).glob("*.skb"))]
