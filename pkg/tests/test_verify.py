"""
Tests for the verification suite and report rendering.
"""

import pytest

from bracelit import huq, nalg, report
from bracelit.config import default_config
from bracelit.grp import ElementSet
from bracelit.verdict import Verdict
from bracelit.verify import algebra_corpus, verify_paper


@pytest.fixture(scope="module")
def checks():
    config = default_config()
    config["scan"]["max_order"] = 4
    return verify_paper(config)


# ---------------------------------------------------------------------------
# verify_paper
# ---------------------------------------------------------------------------


class TestVerificationSuite:
    def test_every_check_passes(self, checks):
        failed = [(c.name, c.detail) for c in checks if not c.passed]
        assert failed == []

    def test_names_are_unique(self, checks):
        names = [c.name for c in checks]
        assert len(names) == len(set(names))

    def test_enumeration_limited_by_config(self, checks):
        names = {c.name for c in checks}
        assert {"enumerate.order_1", "enumerate.order_4"} <= names
        assert "enumerate.order_5" not in names
        assert "enumerate.q8_unique" not in names

    def test_headline_checks_present(self, checks):
        names = {c.name for c in checks}
        for name in ("q8.not_left_ideal", "b24.not_normal", "acbon12.c_set", "i4.right_infeasible", "scan.b24_fails"):
            assert name in names

    @pytest.mark.parametrize(
        "name",
        [
            "acbon12.annihilator",
            "b24.order_six_sub_brace",
            "i4.e1e1",
            "i4.e2e2",
            "i4.e4e4",
            "post_lie.lie_zero_product",
            "post_lie.heisenberg",
            "post_lie.pre_lie_zero_bracket",
            "enumerate.classes_Z4",
            "enumerate.classes_Z2xZ2",
        ],
    )
    def test_named_check_passes(self, checks, name):
        check = next(c for c in checks if c.name == name)
        assert check.passed, check.detail

    def test_annihilator_detail_names_socle(self, checks):
        check = next(c for c in checks if c.name == "acbon12.annihilator")
        assert "C(B,B) = {0}" in check.detail

    def test_invariants_detail(self, checks):
        check = next(c for c in checks if c.name == "b24.additive_invariants")
        assert "[2, 12]" in check.detail

    def test_algebra_corpus_names(self):
        names = [a.name for a in algebra_corpus()]
        assert names[0] == "i4"
        assert len(names) == len(set(names))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


class TestReport:
    def test_result_line(self):
        assert report.result("status", "NORMAL") == "RESULT\tstatus\tNORMAL"

    def test_centraliser_with_labels(self, b24):
        r = huq.centraliser_report(b24.brace, ElementSet.of([0, 8, 16], 24))
        text = report.render_centraliser(r, b24)
        assert "(1,0,0)" in text
        assert "not a sub-skew brace" in text
        assert "Z_B(I) is not an ideal" in text
        assert text.endswith("RESULT\tstatus\tNOT_NORMAL")

    def test_centraliser_without_labels(self, acbon12):
        r = huq.centraliser_report(acbon12.brace, ElementSet.of([0, 4, 8], 12))
        text = report.render_centraliser(r)
        assert "{0,4,8}" in text
        assert "RESULT\tstatus\tNORMAL" in text

    def test_solution(self):
        text = report.render_solution(nalg.solve_identity(nalg.build_i4(), "right", spot_checks=0))
        assert "(e2, e1, e1)" in text
        assert text.splitlines()[-1] == "RESULT\tright\tINFEASIBLE\t2,1,1"

    def test_feasible_solution(self):
        text = report.render_solution(nalg.solve_identity(nalg.zero_algebra(1), "left", spot_checks=0))
        assert "Nullity: 8" in text
        assert text.splitlines()[-1] == "RESULT\tleft\tFEASIBLE\t" + " ".join(["0"] * 8)

    def test_verdict_tree(self):
        v = Verdict.combine("outer", [Verdict("a", True), Verdict("b", False, witness=(1, 2))])
        assert report.render_verdict(v) == ["outer: FAILED (witness (1, 2))", "  a: ok", "  b: FAILED (witness (1, 2))"]
