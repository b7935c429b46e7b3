"""
Tests for CLI commands: constructions, centralisers, scans, enumeration, identity solves and exit codes.
"""

import logging

import pytest
from click.testing import CliRunner

from bracelit import atlas, nalg
from bracelit.__about__ import __version__
from bracelit.cli import cli, run
from bracelit.grp import cyclic_group, symmetric_group


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "fast.yaml"
    path.write_text("solver:\n  spot_checks: 5\nscan:\n  max_order: 3\n")
    return path


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


class TestConstruct:
    def test_b24(self, runner, tmp_path):
        out = tmp_path / "b24.skb"
        result = runner.invoke(cli, ["construct", "--name", "b24", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tbrace\tb24\t24" in result.output
        assert "RESULT\tsocle\t0,8,16" in result.output
        assert "RESULT\tyangbaxter_type\t625" in result.output
        assert out.exists()

    def test_trivial_from_group_file(self, runner, tmp_path):
        group = tmp_path / "s3.grp"
        atlas.save_group(symmetric_group(3), group)
        out = tmp_path / "t.skb"
        result = runner.invoke(cli, ["construct", "--name", f"trivial:{group}", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tbrace\ttrivial:s3\t6" in result.output
        assert "RESULT\ttwo_sided\tYES" in result.output

    def test_radical_ring(self, runner, tmp_path):
        out = tmp_path / "r.skb"
        result = runner.invoke(cli, ["construct", "--name", "radical-ring:3:3", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert atlas.load_brace(out).brace.order == 9

    @pytest.mark.parametrize("name", ["q9", "radical-ring:3", "trivial:"])
    def test_unknown_name(self, runner, tmp_path, name):
        result = runner.invoke(cli, ["construct", "--name", name, "--out", str(tmp_path / "x.skb")])
        assert result.exit_code == 2
        assert "Unknown construction" in result.output

    def test_missing_group_file(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["construct", "--name", f"trivial:{tmp_path / 'none.grp'}", "--out", str(tmp_path / "x.skb")]
        )
        assert result.exit_code == 2


# ---------------------------------------------------------------------------
# centraliser
# ---------------------------------------------------------------------------


class TestCentraliser:
    @pytest.fixture
    def b24_file(self, tmp_path, b24):
        path = tmp_path / "b24.skb"
        atlas.save_brace(b24, path)
        return path

    def test_b24_socle_is_not_normal(self, runner, b24_file):
        result = runner.invoke(cli, ["centraliser", "--brace", str(b24_file), "--ideal", "0,8,16"])
        assert result.exit_code == 0, result.output
        assert "RESULT\tcentraliser\t0,6,8,14,16,22" in result.output
        assert "RESULT\tstatus\tNOT_NORMAL" in result.output

    def test_ideal_order_is_irrelevant(self, runner, b24_file):
        result = runner.invoke(cli, ["centraliser", "--brace", str(b24_file), "--ideal", "16, 0, 8"])
        assert result.exit_code == 0, result.output
        assert "RESULT\tideal\t0,8,16" in result.output

    @pytest.mark.parametrize("ideal", ["0,x", "0,99", "0,1"])
    def test_bad_ideal(self, runner, b24_file, ideal):
        result = runner.invoke(cli, ["centraliser", "--brace", str(b24_file), "--ideal", ideal])
        assert result.exit_code == 2
        assert "Error" in result.output

    def test_missing_brace_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["centraliser", "--brace", str(tmp_path / "none.skb"), "--ideal", "0"])
        assert result.exit_code == 2
        assert "not found" in result.output

    def test_malformed_brace_file(self, runner, tmp_path):
        path = tmp_path / "bad.skb"
        path.write_text("order 2\nadd\n0 1\n")
        result = runner.invoke(cli, ["centraliser", "--brace", str(path), "--ideal", "0"])
        assert result.exit_code == 2

    def test_sub_brace_bound_from_config(self, runner, tmp_path, b24_file):
        config = tmp_path / "small.yaml"
        config.write_text("bounds:\n  sub_braces: 16\n")
        result = runner.invoke(
            cli, ["--config", str(config), "centraliser", "--brace", str(b24_file), "--ideal", "0,8,16"]
        )
        assert result.exit_code == 4


# ---------------------------------------------------------------------------
# scan-centralisers and enumerate
# ---------------------------------------------------------------------------


class TestScanAndEnumerate:
    def test_scan_small_orders(self, runner, tmp_path):
        out = tmp_path / "scan.tsv"
        result = runner.invoke(cli, ["scan-centralisers", "--max-order", "3", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tsummary\t5\tideals\t0\twithout a normal centraliser" in result.output
        assert len(out.read_text().splitlines()) == 5

    def test_scan_max_order_from_config(self, runner, tmp_path, fast_config):
        out = tmp_path / "scan.tsv"
        result = runner.invoke(cli, ["--config", str(fast_config), "scan-centralisers", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tsummary\t5\t" in result.output

    def test_scan_ingest(self, runner, tmp_path, q8):
        braces = tmp_path / "braces"
        braces.mkdir()
        atlas.save_brace(atlas.build_trivial(cyclic_group(2)), braces / "t2.skb")
        atlas.save_brace(q8, braces / "q8.skb")
        out = tmp_path / "scan.tsv"
        result = runner.invoke(
            cli, ["scan-centralisers", "--max-order", "3", "--ingest", str(braces), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        text = out.read_text()
        assert "\tt2\t" in text
        assert "\tq8\t" not in text

    def test_enumerate_order_4(self, runner, tmp_path):
        out = tmp_path / "braces"
        result = runner.invoke(cli, ["enumerate", "--order", "4", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tgroup\tZ4\t2" in result.output
        assert "RESULT\tgroup\tZ2xZ2\t2" in result.output
        assert "RESULT\ttotal\t4\t4" in result.output
        assert sorted(p.name for p in out.iterdir()) == ["Z2xZ2_0.skb", "Z2xZ2_1.skb", "Z4_0.skb", "Z4_1.skb"]

    def test_enumerate_bound(self, runner):
        result = runner.invoke(cli, ["enumerate", "--order", "9"])
        assert result.exit_code == 4
        assert "Error" in result.output

    def test_enumerate_non_positive(self, runner):
        result = runner.invoke(cli, ["enumerate", "--order", "0"])
        assert result.exit_code == 2


# ---------------------------------------------------------------------------
# solve-identities and ybe
# ---------------------------------------------------------------------------


class TestSolveAndYbe:
    @pytest.fixture
    def i4_file(self, tmp_path):
        path = tmp_path / "i4.alg"
        nalg.save_algebra(nalg.build_i4(), path)
        return path

    def test_right_side_infeasible(self, runner, i4_file, fast_config):
        result = runner.invoke(
            cli, ["--config", str(fast_config), "solve-identities", "--algebra", str(i4_file), "--side", "right"]
        )
        assert result.exit_code == 0, result.output
        assert "RESULT\tright\tINFEASIBLE\t2,1,1" in result.output

    def test_both_sides(self, runner, i4_file, fast_config):
        result = runner.invoke(cli, ["--config", str(fast_config), "solve-identities", "--algebra", str(i4_file)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tleft\tFEASIBLE\t" in result.output
        assert "RESULT\tright\tINFEASIBLE" in result.output

    def test_bad_side(self, runner, i4_file):
        result = runner.invoke(cli, ["solve-identities", "--algebra", str(i4_file), "--side", "middle"])
        assert result.exit_code == 2

    def test_malformed_algebra(self, runner, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text("dim 2\nproduct\n0 0 5 1\n")
        result = runner.invoke(cli, ["solve-identities", "--algebra", str(path)])
        assert result.exit_code == 2

    def test_ybe(self, runner, tmp_path, q8):
        path = tmp_path / "q8.skb"
        atlas.save_brace(q8, path)
        result = runner.invoke(cli, ["ybe", "--brace", str(path)])
        assert result.exit_code == 0, result.output
        assert "RESULT\tyang_baxter\tPASS" in result.output


# ---------------------------------------------------------------------------
# Global options and run()
# ---------------------------------------------------------------------------


class TestGlobal:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help(self, runner):
        result = runner.invoke(cli, ["-h"])
        assert result.exit_code == 0
        assert "scan-centralisers" in result.output

    def test_unknown_config_section_is_ignored(self, runner, tmp_path):
        config = tmp_path / "extra.yaml"
        config.write_text("plots:\n  dpi: 300\n")
        with pytest.warns(UserWarning, match="plots"):
            result = runner.invoke(cli, ["--config", str(config), "enumerate", "--order", "2"])
        assert result.exit_code == 0, result.output

    def test_invalid_config(self, runner, tmp_path):
        config = tmp_path / "bad.yaml"
        config.write_text("scan: [unclosed\n")
        result = runner.invoke(cli, ["--config", str(config), "enumerate", "--order", "2"])
        assert result.exit_code == 2

    def test_verbose_logging(self, runner):
        root = logging.getLogger()
        handlers = list(root.handlers)
        try:
            result = runner.invoke(cli, ["-vv", "enumerate", "--order", "3"])
        finally:
            root.handlers[:] = handlers
        assert result.exit_code == 0
        assert "RESULT\ttotal\t3\t1" in result.output


class TestRun:
    def test_captures_output_and_report(self, tmp_path):
        out = tmp_path / "q8.skb"
        outcome = run(["construct", "--name", "q8", "--out", str(out)])
        assert outcome.exit_code == 0
        assert "RESULT\tbrace\tq8\t8" in outcome.stdout
        assert outcome.report == out
        assert out.exists()

    def test_bound_exit_code(self):
        outcome = run(["enumerate", "--order", "9"])
        assert outcome.exit_code == 4
        assert outcome.report is None

    def test_usage_error(self):
        assert run(["no-such-command"]).exit_code == 2
