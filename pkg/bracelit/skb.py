"""
Skew braces: validation, the lambda and sigma maps, sub-braces, ideals, socle,
annihilator, semidirect products and the attached Yang-Baxter map.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from bracelit.constants import ISOMORPHISM_BOUND, SUB_BRACE_BOUND
from bracelit.errors import (
    BoundExceeded,
    BraceIdentityFails,
    IdentityMismatch,
    InternalFault,
    NotAdditiveSubgroup,
    NotASubgroup,
    NotLeftIdeal,
    NotTwoSided,
    SigmaNotAutomorphism,
    SigmaNotHomomorphism,
    TableShapeError,
    ValidationError,
)
from bracelit.grp import (
    ElementSet,
    FiniteGroup,
    GroupMap,
    closed_subsets,
    generate,
    is_normal_subgroup,
    isomorphisms,
    make_group,
)
from bracelit.verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SkewBrace:
    """
    A set with two group structures linked by a*(b+c) = a*b - a + a*c.

    Attributes:
        add: The additive group (B,+).
        mul: The multiplicative group (B,*) on the same carrier.
        name: Optional human-readable name.
    """

    add: FiniteGroup
    mul: FiniteGroup
    name: str = ""

    @property
    def order(self) -> int:
        return self.add.order

    @property
    def zero(self) -> int:
        return self.add.identity

    def plus(self, a: int, b: int) -> int:
        return self.add.rows[a][b]

    def neg(self, a: int) -> int:
        return self.add.inv(a)

    def times(self, a: int, b: int) -> int:
        return self.mul.rows[a][b]

    def mul_inv(self, a: int) -> int:
        return self.mul.inv(a)

    @cached_property
    def lam(self) -> np.ndarray:
        """``lam[a, b]`` is lambda_a(b) = -a + a*b."""
        return self.add.table[self.add.inverses[:, None], self.mul.table]

    @cached_property
    def sig(self) -> np.ndarray:
        """``sig[a, b]`` is sigma_a(b) = b*a - a."""
        return self.add.table[self.mul.table.T, self.add.inverses[:, None]]

    def lam_of(self, a: int, b: int) -> int:
        return int(self.lam[a, b])

    def closure(self, generators: Sequence[int] | ElementSet, within: ElementSet | None = None) -> ElementSet | None:
        """Sub-brace generated by ``generators``, or None if it leaves ``within``."""
        closed = generate([self.add.rows, self.mul.rows], self.zero, generators, within)
        return None if closed is None else ElementSet.of(closed, self.order)


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(mask)
    return tuple(int(v) for v in bad[0]) if bad.size else None


def _brace_identity_failure(add: np.ndarray, mul: np.ndarray, neg: np.ndarray) -> tuple[int, ...] | None:
    ar = np.arange(add.shape[0])
    lhs = mul[ar[:, None, None], add[None, :, :]]
    # a*b - a
    shifted = add[mul, neg[:, None]]
    rhs = add[shifted[:, :, None], mul[:, None, :]]
    return _first(lhs != rhs)


def make_skew_brace(
    add_table: Sequence[Sequence[int]] | np.ndarray,
    mul_table: Sequence[Sequence[int]] | np.ndarray,
    name: str = "",
) -> SkewBrace:
    """
    Validate two tables on one carrier and build a SkewBrace.

    Checks run in order: additive group, multiplicative group, shared identity, brace identity.

    Args:
        add_table: Table of +.
        mul_table: Table of *.
        name: Optional brace name.

    Returns:
        The validated brace.

    Raises:
        ValidationError: Group errors tagged with ``side`` "add" or "mul".
        IdentityMismatch: If the two identities differ.
        BraceIdentityFails: With the first failing triple (a, b, c).
    """
    groups = {}
    for side, table in (("add", add_table), ("mul", mul_table)):
        try:
            groups[side] = make_group(table, name=f"{name}[{side}]" if name else "")
        except ValidationError as e:
            raise e.tagged(side) from None
    add, mul = groups["add"], groups["mul"]
    if mul.order != add.order:
        raise TableShapeError(mul.table.shape).tagged("mul")
    if add.identity != mul.identity:
        raise IdentityMismatch(add.identity, mul.identity)
    failure = _brace_identity_failure(add.table, mul.table, add.inverses)
    if failure is not None:
        raise BraceIdentityFails(*failure)
    return SkewBrace(add=add, mul=mul, name=name)


def check_brace_axioms(b: SkewBrace) -> Verdict:
    """
    Re-run every validation invariant on an existing brace.

    Items: group axioms for both tables, shared identity, both forms of the brace identity,
    the Mal'cev terms, the lambda laws, and on two-sided braces the sigma laws.
    """
    items = []
    for side, group in (("add_group", b.add), ("mul_group", b.mul)):
        try:
            make_group(group.table)
            items.append(Verdict(side, True))
        except ValidationError as e:
            items.append(Verdict(side, False, note=str(e)))

    items.append(Verdict("shared_identity", b.add.identity == b.mul.identity))

    add, mul, neg, minv = b.add.table, b.mul.table, b.add.inverses, b.mul.inverses
    n = b.order
    ar = np.arange(n)
    failure = _brace_identity_failure(add, mul, neg)
    items.append(Verdict("brace_identity", failure is None, witness=failure))

    # a*(b+c) = a*b + a*(a' + c), a' the multiplicative inverse
    lhs = mul[ar[:, None, None], add[None, :, :]]
    tail = mul[ar[:, None], add[minv[:, None], ar[None, :]]]
    rhs = add[mul[:, :, None], tail[:, None, :]]
    failure = _first(lhs != rhs)
    items.append(Verdict("brace_identity_2", failure is None, witness=failure))

    # x + (-x + y) = y and -x + x = 0
    diff = add[neg[:, None], ar[None, :]]
    failure = _first(add[ar[:, None], diff] != ar[None, :])
    if failure is None and not np.all(add[neg, ar] == b.zero):
        failure = (int(np.flatnonzero(add[neg, ar] != b.zero)[0]),)
    items.append(Verdict("malcev_terms", failure is None, witness=failure))

    lam = b.lam
    lam_inv = np.argsort(lam, axis=1)
    failure = _first(mul[ar[:, None], lam_inv] != add)
    items.append(Verdict("lambda_sum", failure is None, witness=failure))
    items.append(_lambda_laws(b))

    two_sided = is_two_sided(b)
    if two_sided:
        sig_inv = np.argsort(b.sig, axis=1)
        # a + b = sigma_b^-1(a) * b
        failure = _first(mul[sig_inv.T, ar[None, :]] != add)
        items.append(Verdict("lambda_sum2", failure is None, witness=failure))
        items.append(_sigma_laws(b))

    return Verdict.combine("brace_axioms", items, note="two-sided" if two_sided else "")


@dataclass(frozen=True, eq=False)
class BraceMap:
    """
    One additive automorphism per element: row a of ``table`` gives the image of each b.

    Attributes:
        kind: "lambda" or "sigma".
        table: n x n array.
    """

    kind: str
    table: np.ndarray

    def __call__(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def row(self, a: int) -> GroupMap:
        return GroupMap(tuple(int(v) for v in self.table[a]))

    def is_identity(self, a: int) -> bool:
        return bool(np.array_equal(self.table[a], np.arange(self.table.shape[1])))


def _automorphism_failure(add: np.ndarray, maps: np.ndarray) -> tuple[int, ...] | None:
    n = add.shape[0]
    ar = np.arange(n)
    not_bijective = np.flatnonzero((np.sort(maps, axis=1) != ar).any(axis=1))
    if not_bijective.size:
        return (int(not_bijective[0]),)
    # maps[a, x + y] == maps[a, x] + maps[a, y]
    lhs = maps[:, add]
    rhs = add[maps[:, :, None], maps[:, None, :]]
    return _first(lhs != rhs)


def _lambda_laws(b: SkewBrace) -> Verdict:
    lam = b.lam
    additive = _automorphism_failure(b.add.table, lam)
    # lambda_{a*b}(c) = lambda_a(lambda_b(c))
    hom = _first(lam[b.mul.table] != lam[np.arange(b.order)[:, None, None], lam[None, :, :]])
    return Verdict.combine(
        "lambda_laws",
        [
            Verdict("lambda_additive", additive is None, witness=additive),
            Verdict("lambda_homomorphism", hom is None, witness=hom),
        ],
    )


def _sigma_laws(b: SkewBrace) -> Verdict:
    sig = b.sig
    additive = _automorphism_failure(b.add.table, sig)
    # sigma_{a*b}(c) = sigma_b(sigma_a(c))
    anti = _first(sig[b.mul.table] != sig[np.arange(b.order)[None, :, None], sig[:, None, :]])
    return Verdict.combine(
        "sigma_laws",
        [
            Verdict("sigma_additive", additive is None, witness=additive),
            Verdict("sigma_antihomomorphism", anti is None, witness=anti),
        ],
    )


def lambda_map(b: SkewBrace) -> BraceMap:
    """
    All lambda_a(b) = -a + a*b.

    Raises:
        InternalFault: If some lambda_a is not an additive automorphism or a -> lambda_a
            is not a homomorphism; neither can happen on a validated brace.
    """
    laws = _lambda_laws(b)
    if not laws:
        raise InternalFault(f"lambda laws fail on a validated brace: {laws.witness}")
    return BraceMap("lambda", b.lam)


def is_two_sided(b: SkewBrace) -> Verdict:
    """Check (a+b)*c = a*c - c + b*c on all triples."""
    add, mul, neg = b.add.table, b.mul.table, b.add.inverses
    ar = np.arange(b.order)
    lhs = mul[add[:, :, None], ar[None, None, :]]
    # a*c - c
    shifted = add[mul, neg[None, :]]
    rhs = add[shifted[:, None, :], mul[None, :, :]]
    failure = _first(lhs != rhs)
    return Verdict("two_sided", failure is None, witness=failure)


def sigma_map(b: SkewBrace) -> BraceMap:
    """
    All sigma_a(b) = b*a - a on a two-sided brace.

    Raises:
        NotTwoSided: With the first triple violating two-sidedness.
        InternalFault: If the sigma laws fail on a two-sided brace.
    """
    two_sided = is_two_sided(b)
    if not two_sided:
        assert two_sided.witness is not None
        raise NotTwoSided(*two_sided.witness)
    laws = _sigma_laws(b)
    if not laws:
        raise InternalFault(f"sigma laws fail on a two-sided brace: {laws.witness}")
    return BraceMap("sigma", b.sig)


def sub_skew_braces(b: SkewBrace, bound: int = SUB_BRACE_BOUND) -> list[ElementSet]:
    """
    All subsets closed under + and *, sorted by (size, lexicographic).

    Raises:
        BoundExceeded: If |B| exceeds ``bound``.
    """
    if b.order > bound:
        raise BoundExceeded(b.order, bound, "sub_skew_braces")
    return closed_subsets([b.add.rows, b.mul.rows], b.zero, b.order)


def is_sub_brace(b: SkewBrace, s: ElementSet) -> bool:
    return bool(s.elements) and b.closure(s) == s


def _require_additive_subgroup(b: SkewBrace, s: ElementSet) -> None:
    if not s.elements or b.add.closure(s) != s:
        raise NotAdditiveSubgroup(s.elements)


def _lambda_invariance(b: SkewBrace, s: ElementSet) -> Verdict:
    images = b.lam[:, s.array]
    bad = np.argwhere(~np.isin(images, s.array))
    if bad.size:
        a, xi = (int(v) for v in bad[0])
        return Verdict("lambda_invariant", False, witness=(a, s.elements[xi], int(images[a, xi])))
    return Verdict("lambda_invariant", True)


def is_left_ideal(b: SkewBrace, s: ElementSet) -> Verdict:
    """
    Check that lambda_a(x) lies in ``s`` for every a and every x in ``s``.

    Returns:
        Verdict with witness (a, x, lambda_a(x)) for the first failure.

    Raises:
        NotAdditiveSubgroup: If ``s`` is not an additive subgroup.
    """
    _require_additive_subgroup(b, s)
    return _lambda_invariance(b, s)


def is_ideal(b: SkewBrace, s: ElementSet) -> Verdict:
    """
    Check lambda-invariance and normality in both groups, independently.

    Items are "lambda_invariant", "additive_normal" and "multiplicative_normal". On
    two-sided braces where ``s`` is normal in both groups, sigma-invariance is also
    computed and must agree with lambda-invariance.

    Raises:
        NotAdditiveSubgroup: If ``s`` is not an additive subgroup.
        InternalFault: If the sigma cross-check disagrees.
    """
    _require_additive_subgroup(b, s)
    lam_inv = _lambda_invariance(b, s)
    add_normal = is_normal_subgroup(b.add, s)
    add_normal = Verdict("additive_normal", add_normal.holds, witness=add_normal.witness)
    try:
        mul_normal = is_normal_subgroup(b.mul, s)
        mul_normal = Verdict("multiplicative_normal", mul_normal.holds, witness=mul_normal.witness)
    except NotASubgroup:
        mul_normal = Verdict("multiplicative_normal", False, note="not a multiplicative subgroup")
    items = [lam_inv, add_normal, mul_normal]

    if add_normal and mul_normal and is_two_sided(b):
        images = b.sig[:, s.array]
        sig_inv = bool(np.isin(images, s.array).all())
        if sig_inv != lam_inv.holds:
            raise InternalFault(f"sigma-invariance disagrees with lambda-invariance on {list(s.elements)}")
        items.append(Verdict("sigma_invariant", sig_inv))
    return Verdict.combine("ideal", items)


def enumerate_ideals(b: SkewBrace, bound: int = SUB_BRACE_BOUND) -> list[ElementSet]:
    return [s for s in sub_skew_braces(b, bound) if is_ideal(b, s)]


def _assert_ideal(b: SkewBrace, s: ElementSet, what: str) -> ElementSet:
    if not is_ideal(b, s):
        raise InternalFault(f"{what} is not an ideal: {list(s.elements)}")
    return s


def socle(b: SkewBrace) -> ElementSet:
    """Soc(B) = ker(lambda) intersected with the centre of (B,+)."""
    ar = np.arange(b.order)
    trivial_lambda = (b.lam == ar).all(axis=1)
    central = (b.add.table == b.add.table.T).all(axis=1)
    return _assert_ideal(b, ElementSet.of(np.flatnonzero(trivial_lambda & central), b.order), "socle")


def additive_centraliser(b: SkewBrace, s: ElementSet) -> ElementSet:
    """Elements b with b + x = x + b for all x in ``s``."""
    add = b.add.table
    return ElementSet.of(np.flatnonzero((add[:, s.array] == add[s.array, :].T).all(axis=1)), b.order)


def multiplicative_centraliser(b: SkewBrace, s: ElementSet) -> ElementSet:
    """Elements b with b * x = x * b for all x in ``s``."""
    mul = b.mul.table
    return ElementSet.of(np.flatnonzero((mul[:, s.array] == mul[s.array, :].T).all(axis=1)), b.order)


def ker_lambda_on(b: SkewBrace, s: ElementSet) -> ElementSet:
    """
    ker lambda^I: elements b with b * x = b + x for all x in the left ideal ``s``.

    Raises:
        NotLeftIdeal: If ``s`` is not a left ideal.
        InternalFault: If the result is not a multiplicative subgroup.
    """
    try:
        left = is_left_ideal(b, s)
    except NotAdditiveSubgroup:
        raise NotLeftIdeal(s.elements) from None
    if not left:
        raise NotLeftIdeal(s.elements)
    kernel = ElementSet.of(
        np.flatnonzero((b.mul.table[:, s.array] == b.add.table[:, s.array]).all(axis=1)),
        b.order,
    )
    if b.mul.closure(kernel) != kernel:
        raise InternalFault(f"ker lambda^I is not a multiplicative subgroup: {list(kernel.elements)}")
    return kernel


def annihilator(b: SkewBrace) -> ElementSet:
    """Ann(B) = C(B,B): additively and multiplicatively central elements with trivial lambda."""
    whole = ElementSet.full(b.order)
    ann = additive_centraliser(b, whole).intersection(multiplicative_centraliser(b, whole))
    ann = ann.intersection(ker_lambda_on(b, whole))
    return _assert_ideal(b, ann, "annihilator")


def semidirect_product(
    h: SkewBrace,
    q: SkewBrace,
    sigma: Sequence[Sequence[int]] | np.ndarray,
    name: str = "",
) -> SkewBrace:
    """
    The brace on pairs (a, u) with (a,u) + (b,v) = (a+b, u+v) and (a,u) * (b,v) = (a * sigma_u(b), u * v).

    The pair (a, u) is stored at index ``a * |Q| + u``.

    Args:
        h: First factor, acted on.
        q: Second factor, acting.
        sigma: Row u is the table of sigma_u on the carrier of ``h``.
        name: Optional brace name.

    Raises:
        SigmaNotAutomorphism: If some sigma_u does not preserve both operations of ``h``.
        SigmaNotHomomorphism: If sigma_{u*v} differs from sigma_u after sigma_v.
    """
    sig = np.asarray(sigma, dtype=np.int64)
    if sig.shape != (q.order, h.order):
        raise SigmaNotAutomorphism(0)
    for u in range(q.order):
        phi = GroupMap(tuple(int(v) for v in sig[u]))
        if not (phi.is_bijective() and phi.is_homomorphism(h.add, h.add) and phi.is_homomorphism(h.mul, h.mul)):
            raise SigmaNotAutomorphism(u)
    # sigma_{u*v}(x) = sigma_u(sigma_v(x))
    composed = sig[np.arange(q.order)[:, None, None], sig[None, :, :]]
    bad = _first(sig[q.mul.table] != composed)
    if bad is not None:
        raise SigmaNotHomomorphism(bad[0], bad[1])

    m = q.order
    n = h.order * m
    first = np.arange(n) // m
    second = np.arange(n) % m
    add = h.add.table[first[:, None], first[None, :]] * m + q.add.table[second[:, None], second[None, :]]
    acted = sig[second[:, None], first[None, :]]
    mul = h.mul.table[first[:, None], acted] * m + q.mul.table[second[:, None], second[None, :]]
    try:
        return make_skew_brace(add, mul, name=name)
    except ValidationError as e:
        raise InternalFault(f"semidirect product failed validation: {e}") from e


def direct_product_brace(h: SkewBrace, q: SkewBrace, name: str = "") -> SkewBrace:
    identity = np.tile(np.arange(h.order), (q.order, 1))
    return semidirect_product(h, q, identity, name=name or f"{h.name}x{q.name}")


def yb_map(b: SkewBrace) -> np.ndarray:
    """
    The solution r(a, b) = (lambda_a(b), lambda_a(b)' * a * b), ' the multiplicative inverse.

    Returns:
        Array of shape (n, n, 2).
    """
    mul = b.mul.table
    first = b.lam
    second = mul[mul[b.mul.inverses[first], np.arange(b.order)[:, None]], np.arange(b.order)[None, :]]
    return np.stack([first, second], axis=-1)


def check_yb(b: SkewBrace) -> Verdict:
    """
    Check that r is bijective and satisfies the braid relation
    (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r) on all triples.
    """
    n = b.order
    r = yb_map(b)
    codes = r[..., 0] * n + r[..., 1]
    bijective = np.unique(codes).size == n * n

    a, bb, c = (x.ravel() for x in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))

    def r12(x, y, z):
        return r[x, y, 0], r[x, y, 1], z

    def r23(x, y, z):
        return x, r[y, z, 0], r[y, z, 1]

    left = r12(*r23(*r12(a, bb, c)))
    right = r23(*r12(*r23(a, bb, c)))
    mismatch = np.flatnonzero((left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2]))
    braid_witness = None
    if mismatch.size:
        k = int(mismatch[0])
        braid_witness = (int(a[k]), int(bb[k]), int(c[k]))
    return Verdict.combine(
        "yang_baxter",
        [
            Verdict("bijective", bijective),
            Verdict("braid", braid_witness is None, witness=braid_witness),
        ],
    )


def isomorphism(b1: SkewBrace, b2: SkewBrace, bound: int = ISOMORPHISM_BOUND) -> GroupMap | None:
    """
    A bijection preserving both tables, or None.

    Searches additive isomorphisms whose generator images also match multiplicative
    element orders, then checks the multiplicative table.

    Raises:
        BoundExceeded: If the order exceeds ``bound``.
    """
    if b1.order != b2.order:
        return None
    if b1.order > bound:
        raise BoundExceeded(b1.order, bound, "isomorphism")
    if sorted(b1.mul.orders) != sorted(b2.mul.orders):
        return None

    def compatible(x: int, y: int) -> bool:
        return b1.mul.orders[x] == b2.mul.orders[y]

    for phi in isomorphisms(b1.add, b2.add, compatible):
        if phi.is_homomorphism(b1.mul, b2.mul):
            return phi
    return None
