"""
Finite-dimensional algebras over the rationals given by structure constants.

Checks the pre-Lie, post-Lie and Novikov identities on basis triples and solves the
two eight-term linear identities

    x(yz) = l1 (xy)z + l2 (yx)z + l3 z(xy) + l4 z(yx) + l5 (xz)y + l6 (zx)y + l7 y(xz) + l8 y(zx)
    (yz)x = m1 (xy)z + m2 (yx)z + ... + m8 y(zx)

exactly; an algebra in which either has no solution obstructs action accessibility of
every variety containing it.
"""

import itertools
import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from bracelit.constants import FILE_HEADER, SPOT_CHECKS
from bracelit.errors import (
    AlgebraError,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    InternalFault,
    MissingBracket,
    ParseError,
)
from bracelit.verdict import Verdict

logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]
Entry = tuple[int, int, int, Fraction]

SIDES = ("left", "right")


@dataclass(frozen=True)
class StructureAlgebra:
    """
    Algebra with basis e_0..e_{dim-1}; an entry (i, j, k, c) means e_i e_j has coefficient c on e_k.

    Attributes:
        dim: Dimension.
        product: Sorted nonzero entries of the product.
        bracket: Sorted nonzero entries of the bracket, or None.
        name: Optional name.
    """

    dim: int
    product: tuple[Entry, ...]
    bracket: tuple[Entry, ...] | None = None
    name: str = ""

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def times(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        return _bilinear(self.dim, self.product, u, v)

    def brace(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        if self.bracket is None:
            raise MissingBracket()
        return _bilinear(self.dim, self.bracket, u, v)


def _bilinear(dim: int, entries: Iterable[Entry], u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    out = [Fraction(0)] * dim
    for i, j, k, c in entries:
        if u[i] and v[j]:
            out[k] += c * u[i] * v[j]
    return tuple(out)


def _normalize(dim: int, entries: Iterable[Sequence[Any]]) -> tuple[Entry, ...]:
    seen: dict[tuple[int, int, int], Fraction] = {}
    for entry in entries:
        if len(entry) != 4:
            raise AlgebraError(f"Expected an entry (i, j, k, c), got {tuple(entry)}")
        i, j, k, c = entry
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j, k)):
            raise IndexOutOfRange(tuple(entry), dim)
        key = (i, j, k)
        if key in seen:
            raise DuplicateEntry(key)
        seen[key] = Fraction(c)
    return tuple((i, j, k, c) for (i, j, k), c in sorted(seen.items()) if c != 0)


def make_algebra(
    dim: int,
    product: Iterable[Sequence[Any]],
    bracket: Iterable[Sequence[Any]] | None = None,
    name: str = "",
) -> StructureAlgebra:
    """
    Validate and normalize structure constants.

    Entries are sorted, zero coefficients dropped. Coefficients may be ints, Fractions or
    strings such as "3/2".

    Raises:
        IndexOutOfRange: If an index is outside 0..dim-1.
        DuplicateEntry: If (i, j, k) occurs twice in one table.
    """
    if dim < 1:
        raise AlgebraError(f"Dimension must be positive, got {dim}")
    return StructureAlgebra(
        dim=dim,
        product=_normalize(dim, product),
        bracket=None if bracket is None else _normalize(dim, bracket),
        name=name,
    )


def multiply(a: StructureAlgebra, u: Sequence[Fraction | int], v: Sequence[Fraction | int]) -> Vector:
    """
    Exact bilinear product of two coefficient sequences.

    Raises:
        DimensionMismatch: If either sequence has the wrong length.
    """
    for w in (u, v):
        if len(w) != a.dim:
            raise DimensionMismatch(a.dim, len(w))
    return a.times([Fraction(x) for x in u], [Fraction(x) for x in v])


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v, strict=True))


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v, strict=True))


def _triples(dim: int) -> Iterable[tuple[int, int, int]]:
    return itertools.product(range(dim), repeat=3)


def associator(a: StructureAlgebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """a(x, y, z) = x(yz) - (xy)z."""
    return _sub(a.times(x, a.times(y, z)), a.times(a.times(x, y), z))


def _check(
    name: str,
    a: StructureAlgebra,
    holds: Callable[..., bool],
    arity: int = 3,
) -> Verdict:
    failures = tuple(
        idx for idx in itertools.product(range(a.dim), repeat=arity) if not holds(*(a.basis(i) for i in idx))
    )
    return Verdict(name, not failures, witness=failures[0] if failures else None, failures=failures)


def is_pre_lie(a: StructureAlgebra) -> Verdict:
    """Check a(x, y, z) = a(y, x, z) on all basis triples."""
    return _check("pre_lie", a, lambda x, y, z: associator(a, x, y, z) == associator(a, y, x, z))


def is_right_commutative(a: StructureAlgebra) -> Verdict:
    """Check (xy)z = (xz)y on all basis triples."""
    return _check("right_commutative", a, lambda x, y, z: a.times(a.times(x, y), z) == a.times(a.times(x, z), y))


def is_novikov(a: StructureAlgebra) -> Verdict:
    """
    Pre-Lie and right-commutative.

    The right-commutativity item lists every failing basis triple.
    """
    return Verdict.combine("novikov", [is_pre_lie(a), is_right_commutative(a)])


def is_lie_bracket(a: StructureAlgebra) -> Verdict:
    """Antisymmetry on basis pairs and the Jacobi identity on basis triples."""
    if a.bracket is None:
        raise MissingBracket()
    zero = tuple(Fraction(0) for _ in range(a.dim))
    antisymmetric = _check("antisymmetry", a, lambda x, y: _add(a.brace(x, y), a.brace(y, x)) == zero, arity=2)

    def jacobi(x: Vector, y: Vector, z: Vector) -> bool:
        total = _add(_add(a.brace(x, a.brace(y, z)), a.brace(y, a.brace(z, x))), a.brace(z, a.brace(x, y)))
        return total == zero

    return Verdict.combine("lie_bracket", [antisymmetric, _check("jacobi", a, jacobi)])


def is_post_lie(a: StructureAlgebra) -> Verdict:
    """
    Check a post-Lie structure: a Lie bracket with
    x{y,z} = {xy,z} + {y,xz} and {x,y}z = a(x,y,z) - a(y,x,z).

    Raises:
        MissingBracket: If the algebra has no bracket.
    """
    lie = is_lie_bracket(a)
    first = _check(
        "post_lie_derivation",
        a,
        lambda x, y, z: a.times(x, a.brace(y, z)) == _add(a.brace(a.times(x, y), z), a.brace(y, a.times(x, z))),
    )
    second = _check(
        "post_lie_associator",
        a,
        lambda x, y, z: a.times(a.brace(x, y), z) == _sub(associator(a, x, y, z), associator(a, y, x, z)),
    )
    return Verdict.combine("post_lie", [*lie.items, first, second])


# (label, term) for the eight right-hand monomials, evaluated at (x, y, z)
TERMS: tuple[tuple[str, Callable[[StructureAlgebra, Vector, Vector, Vector], Vector]], ...] = (
    ("(xy)z", lambda a, x, y, z: a.times(a.times(x, y), z)),
    ("(yx)z", lambda a, x, y, z: a.times(a.times(y, x), z)),
    ("z(xy)", lambda a, x, y, z: a.times(z, a.times(x, y))),
    ("z(yx)", lambda a, x, y, z: a.times(z, a.times(y, x))),
    ("(xz)y", lambda a, x, y, z: a.times(a.times(x, z), y)),
    ("(zx)y", lambda a, x, y, z: a.times(a.times(z, x), y)),
    ("y(xz)", lambda a, x, y, z: a.times(y, a.times(x, z))),
    ("y(zx)", lambda a, x, y, z: a.times(y, a.times(z, x))),
)

LEFT_SIDES = {
    "left": ("x(yz)", lambda a, x, y, z: a.times(x, a.times(y, z))),
    "right": ("(yz)x", lambda a, x, y, z: a.times(a.times(y, z), x)),
}

# A solution of the left identity valid in every pre-Lie algebra
PRE_LIE_ASSIGNMENT: Vector = tuple(Fraction(v) for v in (1, -1, 0, 0, 0, 0, 1, 0))

NUM_UNKNOWNS = len(TERMS)


@dataclass(frozen=True)
class IdentitySolution:
    """
    Result of solving one eight-term identity.

    Attributes:
        side: "left" for x(yz), "right" for (yz)x.
        consistent: Whether some coefficients satisfy every scalar equation.
        sample: A solution with free unknowns set to 0, or None when inconsistent.
        nullity: Number of free unknowns of the coefficient matrix.
        witness: A basis triple (x, y, z) forcing inconsistency, or None.
        equations: Number of scalar equations (dim^4).
    """

    side: str
    consistent: bool
    sample: Vector | None
    nullity: int
    witness: tuple[int, int, int] | None
    equations: int

    def verdict(self) -> Verdict:
        return Verdict(
            f"identity_{self.side}",
            self.consistent,
            witness=self.witness,
            note="" if self.consistent else f"{LEFT_SIDES[self.side][0]} has no solution",
        )


class _Echelon:
    """Incrementally maintained reduced row echelon form of augmented rows over Fraction."""

    def __init__(self, unknowns: int):
        self.unknowns = unknowns
        self.rows: dict[int, np.ndarray] = {}

    def reduce(self, row: np.ndarray) -> np.ndarray:
        row = row.copy()
        for pivot, basis in self.rows.items():
            if row[pivot] != 0:
                row = row - row[pivot] * basis
        return row

    def add(self, row: np.ndarray) -> bool:
        """Insert a row; returns False if it contradicts the system."""
        row = self.reduce(row)
        nonzero = [c for c in range(self.unknowns) if row[c] != 0]
        if not nonzero:
            return row[self.unknowns] == 0
        pivot = nonzero[0]
        row = row / row[pivot]
        for other, basis in self.rows.items():
            if basis[pivot] != 0:
                self.rows[other] = basis - basis[pivot] * row
        self.rows[pivot] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def sample(self) -> Vector:
        values = [Fraction(0)] * self.unknowns
        for pivot, row in self.rows.items():
            values[pivot] = row[self.unknowns]
        return tuple(values)


def _reading_order(dim: int, side: str) -> list[tuple[int, int, int]]:
    """Triples (x, y, z) in the lexicographic order of the left monomial's letters."""
    if side == "left":
        return list(_triples(dim))
    # (yz)x reads y, z, x
    return [(x, y, z) for y, z, x in _triples(dim)]


def _block(a: StructureAlgebra, side: str, triple: tuple[int, int, int]) -> list[np.ndarray]:
    x, y, z = (a.basis(i) for i in triple)
    columns = [term(a, x, y, z) for _, term in TERMS]
    target = LEFT_SIDES[side][1](a, x, y, z)
    return [np.array([col[k] for col in columns] + [target[k]], dtype=object) for k in range(a.dim)]


def solve_identity(
    a: StructureAlgebra,
    side: str,
    spot_checks: int = SPOT_CHECKS,
    seed: int = 0,
) -> IdentitySolution:
    """
    Solve one eight-term identity exactly.

    There is one scalar equation per basis triple and coordinate, dim^4 in all; the unknowns
    are the eight coefficients in the order of TERMS. Triples are visited in the reading
    order of the left monomial. On inconsistency the witness is the first triple whose own
    equations are contradictory, else the first triple at which the system becomes so.
    A consistent sample is spot-checked on pseudorandom vectors.

    Args:
        a: The algebra.
        side: "left" for x(yz), "right" for (yz)x.
        spot_checks: Number of random vector triples to evaluate.
        seed: Seed for the spot checks.

    Raises:
        ValueError: If ``side`` is unknown.
        InternalFault: If a consistent sample fails a spot check.
    """
    if side not in LEFT_SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    order = _reading_order(a.dim, side)
    system = _Echelon(NUM_UNKNOWNS)
    coefficients = _Echelon(NUM_UNKNOWNS)
    first_contradiction: tuple[int, int, int] | None = None
    blocks = {}
    for triple in order:
        blocks[triple] = _block(a, side, triple)
        for row in blocks[triple]:
            coefficients.add(np.append(row[:NUM_UNKNOWNS], Fraction(0)))
            if not system.add(row) and first_contradiction is None:
                first_contradiction = triple

    nullity = NUM_UNKNOWNS - coefficients.rank
    equations = len(order) * a.dim
    if first_contradiction is not None:
        witness = first_contradiction
        for triple in order:
            own = _Echelon(NUM_UNKNOWNS)
            if not all([own.add(row) for row in blocks[triple]]):
                witness = triple
                break
        logger.info("%s identity has no solution, witness %s", side, witness)
        return IdentitySolution(side, False, None, nullity, witness, equations)

    sample = system.sample()
    _spot_check(a, side, sample, spot_checks, seed)
    return IdentitySolution(side, True, sample, nullity, None, equations)


def residuals(a: StructureAlgebra, side: str, coefficients: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """
    Residual of every scalar equation under the given coefficients, dim^4 values in
    lexicographic (x, y, z, coordinate) order.
    """
    coeffs = [Fraction(c) for c in coefficients]
    if len(coeffs) != NUM_UNKNOWNS:
        raise DimensionMismatch(NUM_UNKNOWNS, len(coeffs))
    out: list[Fraction] = []
    for triple in _triples(a.dim):
        for row in _block(a, side, triple):
            fitted = sum((c * v for c, v in zip(coeffs, row[:NUM_UNKNOWNS], strict=True)), Fraction(0))
            out.append(row[NUM_UNKNOWNS] - fitted)
    return tuple(out)


def _evaluate(a: StructureAlgebra, side: str, coeffs: Vector, x: Vector, y: Vector, z: Vector) -> Vector:
    total = tuple(Fraction(0) for _ in range(a.dim))
    for c, (_, term) in zip(coeffs, TERMS, strict=True):
        if c:
            total = _add(total, tuple(c * v for v in term(a, x, y, z)))
    return _sub(LEFT_SIDES[side][1](a, x, y, z), total)


def _spot_check(a: StructureAlgebra, side: str, sample: Vector, count: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    zero = tuple(Fraction(0) for _ in range(a.dim))
    for _ in range(count):
        nums = rng.integers(-5, 6, size=(3, a.dim))
        dens = rng.integers(1, 5, size=(3, a.dim))
        x, y, z = (tuple(Fraction(int(p), int(q)) for p, q in zip(nums[r], dens[r], strict=True)) for r in range(3))
        if _evaluate(a, side, sample, x, y, z) != zero:
            raise InternalFault(f"{side} identity sample {sample} fails on random vectors")


def accessibility_verdict(a: StructureAlgebra, spot_checks: int = SPOT_CHECKS, seed: int = 0) -> Verdict:
    """
    Solve both identities; the verdict fails iff either side has no solution.

    Items are "identity_left" and "identity_right".
    """
    items = [solve_identity(a, side, spot_checks, seed).verdict() for side in SIDES]
    verdict = Verdict.combine("action_accessible_identities", items)
    if not verdict:
        return Verdict(
            verdict.name,
            False,
            witness=verdict.witness,
            items=verdict.items,
            note="obstructs action accessibility of any variety containing the algebra",
        )
    return verdict


def build_i4() -> StructureAlgebra:
    """
    The four-dimensional pre-Lie algebra with e1e2 = e2, e1e3 = e3, e1e4 = e4, e1e1 = 2e1
    and e2e2 = e3e3 = e4e4 = e1 (1-based), stored 0-based.
    """
    product = [
        (0, 0, 0, 2),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 1, 0, 1),
        (2, 2, 0, 1),
        (3, 3, 0, 1),
    ]
    return make_algebra(4, product, bracket=[], name="i4")


def zero_algebra(dim: int) -> StructureAlgebra:
    return make_algebra(dim, [], bracket=[], name=f"zero{dim}")


def unit_algebra() -> StructureAlgebra:
    """The one-dimensional algebra e0e0 = e0."""
    return make_algebra(1, [(0, 0, 0, 1)], name="unit")


def build_heisenberg() -> StructureAlgebra:
    """The 3-dimensional Heisenberg Lie algebra {e0, e1} = e2, with the product equal to the bracket."""
    entries = [(0, 1, 2, 1), (1, 0, 2, -1)]
    return make_algebra(3, entries, bracket=entries, name="heisenberg")


def build_sl2() -> StructureAlgebra:
    """sl2 with basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f, and the zero product."""
    bracket = [
        (0, 1, 2, 1),
        (1, 0, 2, -1),
        (2, 0, 0, 2),
        (0, 2, 0, -2),
        (2, 1, 1, -2),
        (1, 2, 1, 2),
    ]
    return make_algebra(3, [], bracket=bracket, name="sl2")


def _render_entries(entries: Iterable[Entry]) -> list[str]:
    return [f"{i} {j} {k} {c}" for i, j, k, c in entries]


def save_algebra(a: StructureAlgebra, path: str | Path) -> None:
    lines = [f"{FILE_HEADER} algebra", f"dim {a.dim}", "product", *_render_entries(a.product)]
    if a.bracket is not None:
        lines += ["bracket", *_render_entries(a.bracket)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_algebra(path: str | Path) -> StructureAlgebra:
    """
    Read an algebra file: ``dim <d>``, a ``product`` section and an optional ``bracket``
    section of ``i j k p/q`` entries.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ParseError: With the offending line number.
        AlgebraError: If the entries are malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Algebra file not found: {path}")
    sections: dict[str, list[tuple[int, int, int, Fraction]]] = {}
    dim: int | None = None
    current: str | None = None
    raw_lines = path.read_text(encoding="utf-8").splitlines()
    for number, raw in enumerate(raw_lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if dim is None:
            if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
                raise ParseError(str(path), number, f"expected 'dim <int>', got '{text}'")
            dim = int(parts[1])
        elif text in ("product", "bracket"):
            if text in sections:
                raise ParseError(str(path), number, f"repeated section '{text}'")
            current = text
            sections[current] = []
        elif current is None:
            raise ParseError(str(path), number, f"expected 'product', got '{text}'")
        else:
            try:
                i, j, k = (int(v) for v in parts[:3])
                c = Fraction(parts[3])
            except (ValueError, ZeroDivisionError, IndexError):
                raise ParseError(str(path), number, f"expected 'i j k p/q', got '{text}'") from None
            if len(parts) != 4:
                raise ParseError(str(path), number, f"expected 'i j k p/q', got '{text}'")
            sections[current].append((i, j, k, c))
    if dim is None or "product" not in sections:
        raise ParseError(str(path), len(raw_lines) + 1, "unexpected end of file, expected 'dim' and 'product'")
    return make_algebra(dim, sections["product"], sections.get("bracket"), name=path.stem)
