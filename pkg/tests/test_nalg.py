"""
Tests for structure-constant algebras, identity checks and the eight-term identity solver.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bracelit import nalg
from bracelit.errors import (
    AlgebraError,
    DimensionMismatch,
    DuplicateEntry,
    IndexOutOfRange,
    MissingBracket,
    ParseError,
)

NON_PRE_LIE = [(0, 0, 0, 1), (1, 0, 0, 1)]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def vectors(dim):
    return st.tuples(*([rationals] * dim))


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


class TestMakeAlgebra:
    def test_normalizes_entries(self):
        a = nalg.make_algebra(2, [(1, 1, 0, "3/2"), (0, 0, 0, 1), (0, 1, 1, 0)])
        assert a.product == ((0, 0, 0, Fraction(1)), (1, 1, 0, Fraction(3, 2)))
        assert a.bracket is None

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            nalg.make_algebra(2, [(0, 2, 0, 1)])

    def test_duplicate_entry(self):
        with pytest.raises(DuplicateEntry) as exc:
            nalg.make_algebra(2, [(0, 1, 1, 1), (0, 1, 1, 2)])
        assert exc.value.key == (0, 1, 1)

    def test_malformed_entry(self):
        with pytest.raises(AlgebraError):
            nalg.make_algebra(2, [(0, 1, 1)])

    def test_non_positive_dimension(self):
        with pytest.raises(AlgebraError):
            nalg.make_algebra(0, [])

    def test_multiply(self):
        a = nalg.build_i4()
        assert nalg.multiply(a, [1, 0, 0, 0], [0, 1, 0, 0]) == (0, 1, 0, 0)
        assert nalg.multiply(a, [0, 1, 0, 0], [0, 1, 0, 0]) == (1, 0, 0, 0)

    def test_multiply_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            nalg.multiply(nalg.build_i4(), [1, 0], [0, 1, 0, 0])

    def test_missing_bracket(self):
        with pytest.raises(MissingBracket):
            nalg.is_lie_bracket(nalg.unit_algebra())


class TestBilinearity:
    @settings(max_examples=40, deadline=None)
    @given(vectors(4), vectors(4), vectors(4), rationals)
    def test_product_is_bilinear(self, u, v, w, c):
        a = nalg.build_i4()
        scaled = tuple(c * x for x in u)
        summed = tuple(x + y for x, y in zip(u, v, strict=True))
        assert a.times(scaled, w) == tuple(c * x for x in a.times(u, w))
        assert a.times(summed, w) == tuple(x + y for x, y in zip(a.times(u, w), a.times(v, w), strict=True))

    @settings(max_examples=40, deadline=None)
    @given(vectors(4), vectors(4), vectors(4))
    def test_i4_is_pre_lie_on_random_vectors(self, x, y, z):
        a = nalg.build_i4()
        assert nalg.associator(a, x, y, z) == nalg.associator(a, y, x, z)


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


class TestIdentityChecks:
    def test_i4_pre_lie_not_novikov(self):
        a = nalg.build_i4()
        assert nalg.is_pre_lie(a)
        verdict = nalg.is_novikov(a)
        assert not verdict
        failures = verdict.item("right_commutative").failures
        assert failures[0] == (0, 0, 1)
        assert (1, 1, 2) in failures
        assert verdict.witness == (0, 0, 1)

    def test_non_pre_lie_witness(self):
        a = nalg.make_algebra(2, NON_PRE_LIE)
        verdict = nalg.is_pre_lie(a)
        assert not verdict
        assert verdict.witness == (0, 1, 0)

    def test_commutative_associative_is_novikov(self):
        assert nalg.is_novikov(nalg.unit_algebra())
        assert nalg.is_novikov(nalg.zero_algebra(3))

    def test_lie_brackets(self):
        assert nalg.is_lie_bracket(nalg.build_sl2())
        assert nalg.is_lie_bracket(nalg.build_heisenberg())

    def test_broken_jacobi_is_reported(self):
        a = nalg.make_algebra(2, [], bracket=[(0, 1, 0, 1), (1, 0, 0, 1)])
        verdict = nalg.is_lie_bracket(a)
        assert not verdict.item("antisymmetry")
        assert verdict.item("antisymmetry").witness == (0, 1)

    def test_post_lie(self):
        # zero product with a Lie bracket
        assert nalg.is_post_lie(nalg.build_sl2())
        # a pre-Lie algebra with the zero bracket
        assert nalg.is_post_lie(nalg.build_i4())

    def test_heisenberg_over_itself(self):
        # every product lands in the central e2
        verdict = nalg.is_post_lie(nalg.build_heisenberg())
        assert verdict
        assert verdict.item("antisymmetry")
        assert verdict.item("post_lie_associator")


# ---------------------------------------------------------------------------
# Eight-term identities
# ---------------------------------------------------------------------------


class TestSolveIdentity:
    def test_i4_right_side_is_infeasible(self):
        solution = nalg.solve_identity(nalg.build_i4(), "right")
        assert not solution.consistent
        assert solution.witness == (2, 1, 1)
        assert solution.sample is None
        assert solution.equations == 256
        verdict = solution.verdict()
        assert verdict.name == "identity_right"
        assert not verdict

    def test_i4_left_side_is_feasible(self):
        solution = nalg.solve_identity(nalg.build_i4(), "left")
        assert solution.consistent
        assert len(solution.sample) == nalg.NUM_UNKNOWNS
        assert all(r == 0 for r in nalg.residuals(nalg.build_i4(), "left", solution.sample))

    def test_pre_lie_assignment_solves_left_side(self):
        residuals = nalg.residuals(nalg.build_i4(), "left", nalg.PRE_LIE_ASSIGNMENT)
        assert len(residuals) == 256
        assert all(r == 0 for r in residuals)

    def test_zero_algebra_is_unconstrained(self):
        for side in nalg.SIDES:
            solution = nalg.solve_identity(nalg.zero_algebra(2), side)
            assert solution.consistent
            assert solution.nullity == nalg.NUM_UNKNOWNS
            assert solution.sample == (0,) * nalg.NUM_UNKNOWNS

    def test_unit_algebra(self):
        solution = nalg.solve_identity(nalg.unit_algebra(), "right")
        assert solution.consistent
        assert solution.equations == 1
        assert solution.nullity == nalg.NUM_UNKNOWNS - 1
        assert sum(solution.sample) == 1

    def test_unknown_side(self):
        with pytest.raises(ValueError, match="side"):
            nalg.solve_identity(nalg.unit_algebra(), "middle")

    def test_residuals_length_check(self):
        with pytest.raises(DimensionMismatch):
            nalg.residuals(nalg.unit_algebra(), "left", [1, 0])

    def test_accessibility_verdict(self):
        verdict = nalg.accessibility_verdict(nalg.build_i4())
        assert not verdict
        assert verdict.item("identity_left")
        assert not verdict.item("identity_right")
        assert verdict.witness == (2, 1, 1)
        assert "action accessibility" in verdict.note

    def test_novikov_algebras_are_unobstructed(self):
        for a in (nalg.unit_algebra(), nalg.zero_algebra(2)):
            assert nalg.accessibility_verdict(a, spot_checks=10)


class TestSolverAgainstGrid:
    """Small algebras solved exactly, then compared with every coefficient vector in {-1, 0, 1}^8."""

    GRID = np.array(list(itertools.product((-1, 0, 1), repeat=nalg.NUM_UNKNOWNS)), dtype=np.int64)

    @staticmethod
    def affine_system(a, side):
        rhs = nalg.residuals(a, side, [0] * nalg.NUM_UNKNOWNS)
        columns = []
        for k in range(nalg.NUM_UNKNOWNS):
            unit = [int(i == k) for i in range(nalg.NUM_UNKNOWNS)]
            columns.append([r0 - r for r0, r in zip(rhs, nalg.residuals(a, side, unit), strict=True)])
        assert all(v.denominator == 1 for v in rhs)
        matrix = np.array([[int(v) for v in col] for col in columns], dtype=np.int64).T
        return matrix, np.array([int(v) for v in rhs], dtype=np.int64)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=1, max_value=2), st.sampled_from(nalg.SIDES), st.data())
    def test_solver_agrees_with_grid(self, dim, side, data):
        keys = list(itertools.product(range(dim), repeat=3))
        coeffs = data.draw(st.lists(st.integers(min_value=-1, max_value=1), min_size=len(keys), max_size=len(keys)))
        a = nalg.make_algebra(dim, [(*key, c) for key, c in zip(keys, coeffs, strict=True)])
        solution = nalg.solve_identity(a, side, spot_checks=0)
        matrix, rhs = self.affine_system(a, side)
        solved = (matrix @ self.GRID.T == rhs[:, None]).all(axis=0)
        assert solution.nullity == nalg.NUM_UNKNOWNS - np.linalg.matrix_rank(matrix.astype(float))
        if solution.consistent:
            assert all(r == 0 for r in nalg.residuals(a, side, solution.sample))
        else:
            assert not solved.any()
            assert solution.witness is not None


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


class TestAlgebraFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "i4.alg"
        nalg.save_algebra(nalg.build_i4(), path)
        first = path.read_bytes()
        loaded = nalg.load_algebra(path)
        assert loaded.name == "i4"
        assert loaded.product == nalg.build_i4().product
        assert loaded.bracket == ()
        nalg.save_algebra(loaded, path)
        assert path.read_bytes() == first

    def test_fraction_coefficients(self, tmp_path):
        path = tmp_path / "half.alg"
        path.write_text("dim 2\nproduct\n0 0 1 1/2  # half\n")
        a = nalg.load_algebra(path)
        assert a.product == ((0, 0, 1, Fraction(1, 2)),)
        assert a.bracket is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            nalg.load_algebra(tmp_path / "none.alg")

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dimension 2\n")
        with pytest.raises(ParseError) as exc:
            nalg.load_algebra(path)
        assert exc.value.line == 1

    def test_bad_entry(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 2\nproduct\n0 0 0\n")
        with pytest.raises(ParseError) as exc:
            nalg.load_algebra(path)
        assert exc.value.line == 3

    def test_zero_denominator(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 1\nproduct\n0 0 0 1/0\n")
        with pytest.raises(ParseError):
            nalg.load_algebra(path)

    def test_repeated_section(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 1\nproduct\nproduct\n")
        with pytest.raises(ParseError, match="repeated"):
            nalg.load_algebra(path)

    def test_missing_product(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 1\n")
        with pytest.raises(ParseError, match="end of file"):
            nalg.load_algebra(path)

    def test_index_out_of_range(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 1\nproduct\n0 0 1 1\n")
        with pytest.raises(IndexOutOfRange):
            nalg.load_algebra(path)
