"""
Finite groups as Cayley tables.
Provides validation, subgroup machinery, automorphisms, holomorphs and regular-subgroup search.
"""

import itertools
import logging
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from bracelit.constants import AUTOMORPHISM_BOUND, GROUP_COUNTS
from bracelit.errors import (
    BoundExceeded,
    InternalFault,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAssociative,
    NotLatinSquare,
    TableShapeError,
)
from bracelit.verdict import Verdict

logger = logging.getLogger(__name__)

Rows = list[list[int]]


@dataclass(frozen=True)
class ElementSet:
    """
    A strictly increasing tuple of carrier indices below ``order``.

    Used for subgroups, sub-braces, ideals and centralisers.
    """

    elements: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        if any(b <= a for a, b in itertools.pairwise(self.elements)):
            raise ValueError(f"ElementSet must be strictly increasing: {self.elements}")
        if self.elements and not (0 <= self.elements[0] and self.elements[-1] < self.order):
            raise ValueError(f"ElementSet indices must lie in 0..{self.order - 1}: {self.elements}")

    @classmethod
    def of(cls, items: Iterable[int], order: int) -> "ElementSet":
        """Build a set from any iterable of indices, sorting and deduplicating."""
        return cls(tuple(sorted({int(i) for i in items})), order)

    @classmethod
    def full(cls, order: int) -> "ElementSet":
        return cls(tuple(range(order)), order)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def issubset(self, other: "ElementSet") -> bool:
        return self.members <= other.members

    def intersection(self, other: "ElementSet") -> "ElementSet":
        return ElementSet.of(self.members & other.members, self.order)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.elements), self.elements)

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.elements)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A validated finite group given by its operation table.

    Attributes:
        table: Read-only n x n array, ``table[i, j]`` is the product i.j.
        identity: Index of the identity element.
        inverses: Read-only array, ``inverses[i]`` is the inverse of i.
        name: Optional human-readable name.
    """

    table: np.ndarray
    identity: int
    inverses: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def rows(self) -> Rows:
        """The table as nested Python lists, for scalar-heavy loops."""
        return self.table.tolist()

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(a) for a in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def op(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        for _ in range(k):
            result = self.rows[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.rows[x][a]
            k += 1
        return k

    def closure(self, generators: Iterable[int], within: Iterable[int] | None = None) -> ElementSet | None:
        """
        Subgroup generated by ``generators``.

        Returns None when ``within`` is given and the closure leaves it.
        """
        closed = generate([self.rows], self.identity, generators, within)
        return None if closed is None else ElementSet.of(closed, self.order)


def make_group(table: Sequence[Sequence[int]] | np.ndarray, name: str = "") -> FiniteGroup:
    """
    Validate an operation table and build a FiniteGroup.

    Checks run in order: shape, Latin rows, Latin columns, identity, inverses, associativity.

    Args:
        table: Square array with entries in 0..n-1.
        name: Optional group name.

    Returns:
        The validated group.

    Raises:
        TableShapeError: If the table is not square with entries in range.
        NotLatinSquare: If a row or column repeats an entry.
        NoIdentity: If no two-sided identity exists.
        NoInverse: If an element has no two-sided inverse.
        NotAssociative: If some triple fails associativity.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableShapeError(arr.shape)
    if not np.issubdtype(arr.dtype, np.integer):
        raise TableShapeError(arr.shape)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise TableShapeError(arr.shape)
    arr = arr.astype(np.int64, copy=True)
    ar = np.arange(n)

    bad_rows = np.flatnonzero((np.sort(arr, axis=1) != ar).any(axis=1))
    if bad_rows.size:
        raise NotLatinSquare("row", int(bad_rows[0]))
    bad_cols = np.flatnonzero((np.sort(arr, axis=0) != ar[:, None]).any(axis=0))
    if bad_cols.size:
        raise NotLatinSquare("column", int(bad_cols[0]))

    candidates = np.flatnonzero((arr == ar).all(axis=1) & (arr.T == ar).all(axis=1))
    if not candidates.size:
        raise NoIdentity()
    e = int(candidates[0])

    inverses = np.argmax(arr == e, axis=1)
    no_inverse = np.flatnonzero(arr[inverses, ar] != e)
    if no_inverse.size:
        raise NoInverse(int(no_inverse[0]))

    left = arr[arr]
    right = arr[ar[:, None, None], arr[None, :, :]]
    failures = np.argwhere(left != right)
    if failures.size:
        raise NotAssociative(*(int(v) for v in failures[0]))

    arr.setflags(write=False)
    inverses = inverses.astype(np.int64)
    inverses.setflags(write=False)
    return FiniteGroup(table=arr, identity=e, inverses=inverses, name=name)


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return make_group((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product with pair (x, y) stored at index ``x * |H| + y``."""
    m = h.order
    table = g.table[:, None, :, None] * m + h.table[None, :, None, :]
    n = g.order * m
    return make_group(table.reshape(n, n), name=f"{g.name}x{h.name}")


def dihedral_group(m: int) -> FiniteGroup:
    """Dihedral group of order 2m; r^i s^f is stored at index ``i + m * f``."""
    table = np.empty((2 * m, 2 * m), dtype=np.int64)
    for f, i, g, j in itertools.product(range(2), range(m), range(2), range(m)):
        rot = (i + (-1) ** f * j) % m
        table[i + m * f, j + m * g] = rot + m * ((f + g) % 2)
    return make_group(table, name=f"D{2 * m}")


# unit products among 1, i, j, k as (sign bit, unit)
_QUATERNION_UNITS = [
    [(0, 0), (0, 1), (0, 2), (0, 3)],
    [(0, 1), (1, 0), (0, 3), (1, 2)],
    [(0, 2), (1, 3), (1, 0), (0, 1)],
    [(0, 3), (0, 2), (1, 1), (1, 0)],
]


def quaternion_group() -> FiniteGroup:
    """Quaternion group; the unit u with sign bit s is stored at index ``4 * s + u``."""
    table = np.empty((8, 8), dtype=np.int64)
    for s1, u1, s2, u2 in itertools.product(range(2), range(4), range(2), range(4)):
        sign, unit = _QUATERNION_UNITS[u1][u2]
        table[4 * s1 + u1, 4 * s2 + u2] = 4 * (s1 ^ s2 ^ sign) + unit
    return make_group(table, name="Q8")


def symmetric_group(k: int) -> FiniteGroup:
    """Symmetric group on k points, permutations in lexicographic order, (p.q)[x] = p[q[x]]."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]
    return make_group(table, name=f"S{k}")


def small_groups(n: int) -> list[FiniteGroup]:
    """
    One group per isomorphism class of order n.

    Raises:
        BoundExceeded: If n > 8.
    """
    z = cyclic_group
    catalog: dict[int, Callable[[], list[FiniteGroup]]] = {
        1: lambda: [z(1)],
        2: lambda: [z(2)],
        3: lambda: [z(3)],
        4: lambda: [z(4), direct_product(z(2), z(2))],
        5: lambda: [z(5)],
        6: lambda: [z(6), symmetric_group(3)],
        7: lambda: [z(7)],
        8: lambda: [
            z(8),
            direct_product(z(2), z(4)),
            direct_product(direct_product(z(2), z(2)), z(2)),
            dihedral_group(4),
            quaternion_group(),
        ],
    }
    if n not in catalog:
        raise BoundExceeded(n, max(catalog), "small_groups")
    groups = catalog[n]()
    if len(groups) != GROUP_COUNTS[n]:
        raise InternalFault(f"{len(groups)} groups of order {n}, expected {GROUP_COUNTS[n]}")
    return groups


def quotient(g: FiniteGroup, normal: ElementSet) -> FiniteGroup:
    """Quotient by a normal subgroup; cosets are ordered by their least element."""
    if not is_normal_subgroup(g, normal):
        raise NotASubgroup(normal.elements)
    label: dict[int, int] = {}
    reps: list[int] = []
    for a in range(g.order):
        if a in label:
            continue
        for s in normal:
            label[g.op(a, s)] = len(reps)
        reps.append(a)
    table = [[label[g.op(a, b)] for b in reps] for a in reps]
    return make_group(table, name=f"{g.name}/{len(normal)}")


def generate(
    tables: Sequence[Rows],
    identity: int,
    seeds: Iterable[int],
    within: Iterable[int] | None = None,
) -> frozenset[int] | None:
    """
    Smallest set containing ``identity`` and ``seeds`` closed under every table.

    Closure under a binary operation of a finite group already yields inverses.
    Returns None as soon as an element outside ``within`` is produced.
    """
    allowed = None if within is None else frozenset(within)
    queue = [identity]
    members = {identity}
    for s in seeds:
        if s not in members:
            members.add(s)
            queue.append(s)
    if allowed is not None and not members <= allowed:
        return None
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for b in queue[:i]:
            for rows in tables:
                for c in (rows[a][b], rows[b][a]):
                    if c not in members:
                        if allowed is not None and c not in allowed:
                            return None
                        members.add(c)
                        queue.append(c)
    return frozenset(members)


def closed_subsets(
    tables: Sequence[Rows],
    identity: int,
    order: int,
    within: ElementSet | None = None,
) -> list[ElementSet]:
    """
    Every subset closed under all ``tables``, found by closure generation.

    Starts from the cyclic closures and extends each found set by one element at a time.
    With ``within``, only sets contained in it are produced.

    Returns:
        Sets sorted by (size, lexicographic).
    """
    candidates = list(range(order)) if within is None else list(within)
    found: set[frozenset[int]] = set()
    queue: list[frozenset[int]] = []
    trivial = generate(tables, identity, (), within)
    if trivial is None:
        return []
    for start in [trivial] + [generate(tables, identity, (g,), within) for g in candidates]:
        if start is not None and start not in found:
            found.add(start)
            queue.append(start)
    i = 0
    while i < len(queue):
        current = queue[i]
        i += 1
        for g in candidates:
            if g in current:
                continue
            bigger = generate(tables, identity, current | {g}, within)
            if bigger is not None and bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    logger.debug("closure generation found %d closed subsets of %d elements", len(found), order)
    return sorted((ElementSet.of(s, order) for s in found), key=ElementSet.sort_key)


def subgroups(g: FiniteGroup) -> list[ElementSet]:
    """
    All subgroups of ``g``, each sorted, the list sorted by (size, lexicographic).

    >>> [s.elements for s in subgroups(cyclic_group(4))]
    [(0,), (0, 2), (0, 1, 2, 3)]
    """
    return closed_subsets([g.rows], g.identity, g.order)


def is_subgroup(g: FiniteGroup, s: ElementSet) -> bool:
    return bool(s.elements) and g.closure(s) == s


def is_normal_subgroup(g: FiniteGroup, s: ElementSet) -> Verdict:
    """
    Check that g.s.g^-1 lies in ``s`` for every g and s.

    Returns:
        Verdict whose witness is the first failing pair (g, s).

    Raises:
        NotASubgroup: If ``s`` is not a subgroup of ``g``.
    """
    if not is_subgroup(g, s):
        raise NotASubgroup(s.elements)
    t = g.table
    conj = t[t[:, s.array], g.inverses[:, None]]
    bad = np.argwhere(~np.isin(conj, s.array))
    if bad.size:
        gi, si = (int(v) for v in bad[0])
        return Verdict("normal", False, witness=(gi, s.elements[si]))
    return Verdict("normal", True)


def abelian_invariants(g: FiniteGroup) -> list[int] | None:
    """
    Invariant factors d1 | d2 | ... of an abelian group, or None if ``g`` is not abelian.

    An element of maximal order generates a direct summand; the rest comes from the quotient.

    >>> abelian_invariants(cyclic_group(6))
    [6]
    """
    if not g.is_abelian:
        return None
    if g.order == 1:
        return []
    x = max(range(g.order), key=lambda a: (g.orders[a], -a))
    cyclic = g.closure([x])
    assert cyclic is not None
    rest = abelian_invariants(quotient(g, cyclic))
    assert rest is not None
    return [*rest, g.orders[x]]


def is_dihedral(g: FiniteGroup, m: int) -> bool:
    """True iff |G| = 2m and some r of order m and s of order 2 with s.r.s = r^-1 generate G."""
    if g.order != 2 * m:
        return False
    rotations = [r for r in range(g.order) if g.orders[r] == m]
    involutions = [s for s in range(g.order) if g.orders[s] == 2]
    for r, s in itertools.product(rotations, involutions):
        if g.op(g.op(s, r), s) != g.inv(r):
            continue
        if len(g.closure([r, s]) or ()) == g.order:
            return True
    return False


@dataclass(frozen=True)
class GroupMap:
    """A map between carriers given by the image of each source index."""

    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_homomorphism(self, source: FiniteGroup, target: FiniteGroup) -> Verdict:
        phi = self.array
        bad = np.argwhere(phi[source.table] != target.table[phi[:, None], phi[None, :]])
        if bad.size:
            return Verdict("homomorphism", False, witness=tuple(int(v) for v in bad[0]))
        return Verdict("homomorphism", True)

    def compose(self, other: "GroupMap") -> "GroupMap":
        """The map x -> self(other(x))."""
        return GroupMap(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "GroupMap":
        return GroupMap(tuple(int(v) for v in np.argsort(self.images)))


def generating_set(g: FiniteGroup) -> list[int]:
    """An irredundant generating set, picking elements of largest order first."""
    gens: list[int] = []
    span = {g.identity}
    for a in sorted(range(g.order), key=lambda a: (-g.orders[a], a)):
        if a not in span:
            gens.append(a)
            closed = g.closure(gens)
            assert closed is not None
            span = set(closed)
    return gens


def isomorphisms(
    source: FiniteGroup,
    target: FiniteGroup,
    compatible: Callable[[int, int], bool] | None = None,
) -> Iterator[GroupMap]:
    """
    Yield every isomorphism from ``source`` to ``target``.

    Backtracks over images of an irredundant generating set; an image must match the
    generator's order, pass ``compatible``, and enlarge the span of earlier images by the
    same amount as the generator does. Maps are yielded in lexicographic order of the
    generator images.
    """
    if source.order != target.order or sorted(source.orders) != sorted(target.orders):
        return
    gens = generating_set(source)
    spans = [len(source.closure(gens[: k + 1]) or ()) for k in range(len(gens))]

    # each element as parent . generator, in breadth-first order from the identity
    words: list[tuple[int, int, int]] = []
    seen = {source.identity}
    frontier = [source.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for pos, s in enumerate(gens):
                y = source.op(x, s)
                if y not in seen:
                    seen.add(y)
                    words.append((y, x, pos))
                    nxt.append(y)
        frontier = nxt

    def extend(images: list[int]) -> GroupMap | None:
        phi = [-1] * source.order
        phi[source.identity] = target.identity
        for y, x, pos in words:
            phi[y] = target.op(phi[x], images[pos])
        candidate = GroupMap(tuple(phi))
        if candidate.is_bijective() and candidate.is_homomorphism(source, target):
            return candidate
        return None

    def search(images: list[int]) -> Iterator[GroupMap]:
        k = len(images)
        if k == len(gens):
            found = extend(images)
            if found is not None:
                yield found
            return
        for y in range(target.order):
            if target.orders[y] != source.orders[gens[k]]:
                continue
            if compatible is not None and not compatible(gens[k], y):
                continue
            if len(target.closure([*images, y]) or ()) != spans[k]:
                continue
            yield from search([*images, y])

    yield from search([])


def automorphisms(g: FiniteGroup, bound: int = AUTOMORPHISM_BOUND) -> list[GroupMap]:
    """
    All automorphisms of ``g``, sorted lexicographically by image array.

    Raises:
        BoundExceeded: If |G| exceeds ``bound``.
    """
    if g.order > bound:
        raise BoundExceeded(g.order, bound, "automorphisms")
    return sorted(isomorphisms(g, g), key=lambda m: m.images)


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    """
    A permutation group on points 0..degree-1.

    Attributes:
        degree: Number of points.
        elements: Permutations as image tuples, sorted lexicographically.
        labels: Optional label per element, e.g. (translation, automorphism index) in a holomorph.
    """

    degree: int
    elements: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[int, ...], ...] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.elements)}

    def compose(self, p: int, q: int) -> int:
        """Index of p.q, where (p.q)[x] = p[q[x]]."""
        pp, qq = self.elements[p], self.elements[q]
        return self.index[tuple(pp[x] for x in qq)]

    def to_group(self) -> FiniteGroup:
        table = [[self.compose(p, q) for q in range(self.order)] for p in range(self.order)]
        return make_group(table, name=f"Perm{self.degree}")


def holomorph(g: FiniteGroup, bound: int = AUTOMORPHISM_BOUND) -> PermutationGroup:
    """
    Hol(G) = G x| Aut(G) acting on the carrier by x -> t . phi(x).

    Raises:
        BoundExceeded: If |G| exceeds ``bound``.
    """
    auts = automorphisms(g, bound)
    labelled = sorted(
        (tuple(int(v) for v in g.table[t, aut.array]), (t, k))
        for t in range(g.order)
        for k, aut in enumerate(auts)
    )
    logger.info("holomorph of %s has order %d", g.name or g.order, len(labelled))
    return PermutationGroup(
        degree=g.order,
        elements=tuple(p for p, _ in labelled),
        labels=tuple(label for _, label in labelled),
    )


def regular_subgroups(h: PermutationGroup, base: int = 0) -> list[ElementSet]:
    """
    All subgroups of ``h`` acting regularly on its points.

    A regular subgroup holds exactly one element sending ``base`` to each point, and every
    non-identity element moves every point. The search fixes, for the least point not yet
    reached, which fixed-point-free element reaches it, then closes; closures that repeat
    an image of ``base`` or contain a non-identity element with a fixed point are pruned.
    Each regular subgroup is reached along exactly one branch.

    Returns:
        Element index sets into ``h.elements``, sorted lexicographically.
    """
    n = h.degree
    identity = tuple(range(n))
    by_image: dict[int, list[tuple[int, ...]]] = {x: [] for x in range(n)}
    for p in h.elements:
        if p != identity and all(p[x] != x for x in range(n)):
            by_image[p[base]].append(p)

    def close(members: dict[int, tuple[int, ...]], extra: tuple[int, ...]) -> dict[int, tuple[int, ...]] | None:
        reached = dict(members)
        reached[extra[base]] = extra
        queue = list(reached.values())
        i = 0
        while i < len(queue):
            a = queue[i]
            i += 1
            for b in queue[:i]:
                for c in (tuple(a[x] for x in b), tuple(b[x] for x in a)):
                    known = reached.get(c[base])
                    if known == c:
                        continue
                    if known is not None or (c != identity and any(c[x] == x for x in range(n))):
                        return None
                    reached[c[base]] = c
                    queue.append(c)
        return reached

    results: list[ElementSet] = []

    def search(members: dict[int, tuple[int, ...]]) -> None:
        if len(members) == n:
            results.append(ElementSet.of((h.index[p] for p in members.values()), h.order))
            return
        target = min(x for x in range(n) if x not in members)
        for p in by_image[target]:
            grown = close(members, p)
            if grown is not None:
                search(grown)

    search({base: identity})
    logger.info("found %d regular subgroups on %d points", len(results), n)
    return sorted(results, key=lambda s: s.elements)
