"""
Tests for skew braces: validation, lambda/sigma maps, ideals, products and the Yang-Baxter map.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracelit import atlas, skb
from bracelit.errors import (
    BoundExceeded,
    BraceIdentityFails,
    IdentityMismatch,
    NotAdditiveSubgroup,
    NotLatinSquare,
    NotLeftIdeal,
    NotTwoSided,
    SigmaNotAutomorphism,
    SigmaNotHomomorphism,
)
from bracelit.grp import ElementSet, cyclic_group, is_normal_subgroup, subgroups, symmetric_group


def es(items, order):
    return ElementSet.of(items, order)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class TestMakeSkewBrace:
    def test_trivial_brace(self):
        z4 = cyclic_group(4).table
        b = skb.make_skew_brace(z4, z4, name="z4")
        assert b.order == 4
        assert b.zero == 0
        assert np.array_equal(b.lam, np.tile(np.arange(4), (4, 1)))

    def test_failing_side_is_tagged(self):
        z2 = cyclic_group(2).table
        with pytest.raises(NotLatinSquare) as exc:
            skb.make_skew_brace(z2, [[0, 0], [1, 1]])
        assert exc.value.side == "mul"
        assert str(exc.value).startswith("[mul]")

    def test_identity_mismatch(self):
        with pytest.raises(IdentityMismatch) as exc:
            skb.make_skew_brace([[0, 1], [1, 0]], [[1, 0], [0, 1]])
        assert exc.value.add_identity == 0
        assert exc.value.mul_identity == 1

    def test_brace_identity_fails(self):
        with pytest.raises(BraceIdentityFails) as exc:
            skb.make_skew_brace(cyclic_group(6).table, symmetric_group(3).table)
        assert len(exc.value.witness) == 3

    def test_axioms_recheck(self, q8, b24):
        for entry in (q8, b24):
            verdict = skb.check_brace_axioms(entry.brace)
            assert verdict
            assert verdict.item("malcev_terms")
            assert verdict.item("lambda_sum")


class TestBraceLaws:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=23), st.integers(min_value=0, max_value=23), st.data())
    def test_brace_identity_on_b24(self, b24, a, x, data):
        b = b24.brace
        y = data.draw(st.integers(min_value=0, max_value=23))
        lhs = b.times(a, b.plus(x, y))
        rhs = b.plus(b.plus(b.times(a, x), b.neg(a)), b.times(a, y))
        assert lhs == rhs

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7))
    def test_lambda_is_additive_on_q8(self, q8, a, x):
        b = q8.brace
        for y in range(8):
            assert b.lam_of(a, b.plus(x, y)) == b.plus(b.lam_of(a, x), b.lam_of(a, y))


# ---------------------------------------------------------------------------
# Lambda and sigma
# ---------------------------------------------------------------------------


class TestLambdaSigma:
    def test_q8_named_elements(self, q8):
        b = q8.brace
        s, t = q8.index((1, 0)), q8.index((0, 3))
        assert (s, t) == (4, 3)
        assert b.times(s, t) == 1
        assert b.mul.power(1, 2) == 6
        assert b.lam_of(1, 6) == 4

    def test_lambda_map(self, q8):
        lam = skb.lambda_map(q8.brace)
        assert lam.kind == "lambda"
        assert lam(1, 6) == 4
        assert lam.is_identity(0)
        assert lam.row(1).is_bijective()

    def test_almost_trivial_is_two_sided(self):
        b = atlas.build_almost_trivial(symmetric_group(3)).brace
        assert skb.is_two_sided(b)
        sigma = skb.sigma_map(b)
        assert sigma.kind == "sigma"
        assert skb.check_brace_axioms(b).item("sigma_laws")

    def test_radical_ring_is_two_sided(self):
        b = atlas.build_radical_ring(2, 4).brace
        assert b.order == 8
        assert skb.is_two_sided(b)
        assert skb.check_brace_axioms(b).note == "two-sided"

    def test_sigma_requires_two_sided(self, b24):
        verdict = skb.is_two_sided(b24.brace)
        assert not verdict
        assert len(verdict.witness) == 3
        with pytest.raises(NotTwoSided) as exc:
            skb.sigma_map(b24.brace)
        assert exc.value.witness == verdict.witness


# ---------------------------------------------------------------------------
# Ideals, socle, annihilator
# ---------------------------------------------------------------------------


class TestIdeals:
    def test_not_left_ideal_witness(self, q8):
        verdict = skb.is_left_ideal(q8.brace, es([0, 6], 8))
        assert not verdict
        assert verdict.witness == (1, 6, 4)

    def test_left_ideal_requires_additive_subgroup(self, q8):
        with pytest.raises(NotAdditiveSubgroup):
            skb.is_left_ideal(q8.brace, es([0, 1], 8))

    def test_ideal_items(self, b24):
        b = b24.brace
        verdict = skb.is_ideal(b, es([0, 8, 16], 24))
        assert verdict
        assert {item.name for item in verdict.items} >= {
            "lambda_invariant",
            "additive_normal",
            "multiplicative_normal",
        }

    def test_trivial_brace_ideals_are_normal_subgroups(self):
        s3 = symmetric_group(3)
        b = atlas.build_trivial(s3).brace
        ideals = skb.enumerate_ideals(b)
        assert ideals == [s for s in subgroups(s3) if is_normal_subgroup(s3, s)]
        assert [len(s) for s in ideals] == [1, 3, 6]

    def test_socles(self, q8, acbon12, b24):
        assert skb.socle(q8.brace).elements == (0,)
        assert skb.socle(acbon12.brace).elements == (0, 4, 8)
        assert skb.socle(b24.brace).elements == (0, 8, 16)

    def test_trivial_brace_socle_is_centre(self):
        b = atlas.build_trivial(cyclic_group(6)).brace
        assert skb.socle(b) == ElementSet.full(6)
        assert skb.annihilator(b) == ElementSet.full(6)

    def test_annihilators(self, q8, acbon12):
        assert skb.annihilator(q8.brace).elements == (0,)
        assert skb.annihilator(acbon12.brace).elements == (0,)

    def test_ker_lambda_on_socle(self, b24):
        b = b24.brace
        kernel = skb.ker_lambda_on(b, es([0, 8, 16], 24))
        assert kernel.elements == (0, 1, 5, 6, 8, 9, 13, 14, 16, 17, 21, 22)

    def test_ker_lambda_requires_left_ideal(self, q8):
        with pytest.raises(NotLeftIdeal):
            skb.ker_lambda_on(q8.brace, es([0, 6], 8))

    def test_sub_brace_bound(self, b24):
        with pytest.raises(BoundExceeded):
            skb.sub_skew_braces(b24.brace, bound=16)

    def test_sub_braces_are_closed(self, q8):
        subs = skb.sub_skew_braces(q8.brace)
        assert subs[0].elements == (0,)
        assert subs[-1] == ElementSet.full(8)
        assert all(skb.is_sub_brace(q8.brace, s) for s in subs)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


class TestProducts:
    def test_direct_product_brace(self, q8):
        j = atlas.build_trivial(cyclic_group(3)).brace
        b = skb.direct_product_brace(j, q8.brace)
        assert b.order == 24
        assert b.name == f"{j.name}x{q8.brace.name}"

    def test_sigma_must_be_automorphism(self, q8):
        j = atlas.build_trivial(cyclic_group(3)).brace
        sigma = [[0, 1, 1]] * 8
        with pytest.raises(SigmaNotAutomorphism):
            skb.semidirect_product(j, q8.brace, sigma)

    def test_sigma_must_be_homomorphism(self, q8):
        j = atlas.build_trivial(cyclic_group(3)).brace
        # negation on a set that is not a subgroup of index 2
        sigma = [[0, 2, 1] if u == 1 else [0, 1, 2] for u in range(8)]
        with pytest.raises(SigmaNotHomomorphism):
            skb.semidirect_product(j, q8.brace, sigma)


# ---------------------------------------------------------------------------
# Yang-Baxter map and isomorphism
# ---------------------------------------------------------------------------


class TestYangBaxter:
    def test_catalog_solutions(self, q8, acbon12, b24):
        for entry in (q8, acbon12, b24):
            verdict = skb.check_yb(entry.brace)
            assert verdict.item("bijective")
            assert verdict.item("braid")

    def test_yb_map_shape(self, q8):
        r = skb.yb_map(q8.brace)
        assert r.shape == (8, 8, 2)
        assert r[0, 5, 0] == 5
        assert r[0, 5, 1] == 0

    def test_trivial_brace_is_flip(self):
        b = atlas.build_trivial(cyclic_group(4)).brace
        r = skb.yb_map(b)
        assert r[1, 2, 0] == 2
        assert r[1, 2, 1] == 1


class TestIsomorphism:
    def test_self_isomorphism(self, q8):
        phi = skb.isomorphism(q8.brace, q8.brace)
        assert phi is not None
        assert phi.is_homomorphism(q8.brace.mul, q8.brace.mul)

    def test_trivial_vs_nontrivial(self):
        z4 = cyclic_group(4).table
        trivial = skb.make_skew_brace(z4, z4)
        other = atlas.build_radical_ring(2, 3).brace
        assert skb.isomorphism(trivial, other) is None

    def test_bound(self, b24):
        with pytest.raises(BoundExceeded):
            skb.isomorphism(b24.brace, b24.brace)

