"""
Command-line interface for bracelit.
Runs verification suites, constructions, centraliser reports and identity solves.
"""

import io
import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager, redirect_stdout
from dataclasses import dataclass
from pathlib import Path

import click
import yaml

from bracelit import atlas, huq, nalg, skb
from bracelit.__about__ import __version__
from bracelit.config import load_config
from bracelit.constants import EXIT_BOUND_EXCEEDED, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK
from bracelit.errors import BoundExceeded, InternalFault, ParseError, ValidationError
from bracelit.grp import ElementSet, small_groups
from bracelit.report import render_centraliser, render_scan, render_solution, render_verdict, result
from bracelit.verify import verify_paper

logger = logging.getLogger(__name__)


@contextmanager
def _handled() -> Iterator[None]:
    """Map library errors to exit codes with a message on stderr."""
    try:
        yield
    except BoundExceeded as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_BOUND_EXCEEDED)
    except InternalFault as e:
        click.echo(f"Check failed: {e}", err=True)
        sys.exit(EXIT_CHECK_FAILED)
    except (ValidationError, ParseError, FileNotFoundError, yaml.YAMLError, ValueError) as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="bracelit")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="YAML run configuration")
@click.option("-v", "--verbose", count=True, help="Log progress to stderr (-vv for debug)")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, verbose: int):
    """bracelit: finite skew braces, Huq centralisers and nonassociative identities"""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )
    with _handled():
        ctx.obj = load_config(config_path)


@cli.command("verify-paper")
@click.pass_obj
def verify_paper_cmd(config: dict):
    """Re-derive every claimed computation and compare with the expected values."""
    with _handled():
        checks = verify_paper(config)
    for check in checks:
        fields = [check.name, "PASS" if check.passed else "FAIL"]
        if check.detail:
            fields.append(check.detail)
        click.echo(result(*fields))
    failed = [c.name for c in checks if not c.passed]
    click.echo(result("summary", f"{len(checks) - len(failed)}/{len(checks)}", "PASS" if not failed else "FAIL"))
    if failed:
        sys.exit(EXIT_CHECK_FAILED)


def _construct(name: str) -> atlas.CatalogEntry:
    kind, _, arg = name.partition(":")
    if kind in atlas.CATALOG and not arg:
        return atlas.CATALOG[kind]()
    if kind == "trivial" and arg:
        return atlas.build_trivial(atlas.load_group(arg))
    if kind == "almost-trivial" and arg:
        return atlas.build_almost_trivial(atlas.load_group(arg))
    if kind == "radical-ring":
        p, _, k = arg.partition(":")
        if p.isdigit() and k.isdigit():
            return atlas.build_radical_ring(int(p), int(k))
    raise ValueError(
        f"Unknown construction '{name}'; expected q8, acbon12, b24, trivial:<groupfile>, "
        "almost-trivial:<groupfile> or radical-ring:<p>:<k>"
    )


@cli.command()
@click.option(
    "--name",
    required=True,
    help="q8 | acbon12 | b24 | trivial:<groupfile> | almost-trivial:<groupfile> | radical-ring:<p>:<k>",
)
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Brace file to write")
def construct(name: str, out: str):
    """Build a named skew brace and save it."""
    with _handled():
        entry = _construct(name)
        atlas.save_brace(entry, out)
        b = entry.brace
        click.echo(result("brace", entry.name, b.order))
        click.echo(result("two_sided", "YES" if skb.is_two_sided(b) else "NO"))
        click.echo(result("socle", skb.socle(b)))
        for key, value in sorted(entry.metadata.items()):
            click.echo(result(key, value))


def _parse_ideal(text: str, order: int) -> ElementSet:
    try:
        return ElementSet.of((int(v) for v in text.split(",") if v.strip()), order)
    except ValueError:
        raise ValueError(f"--ideal must be comma-separated indices in 0..{order - 1}, got '{text}'") from None


@cli.command()
@click.option("--brace", "brace_path", required=True, type=click.Path(dir_okay=False), help="Brace file")
@click.option("--ideal", required=True, help="Comma-separated carrier indices")
@click.pass_obj
def centraliser(config: dict, brace_path: str, ideal: str):
    """Report the Huq centraliser of an ideal and whether it is normal."""
    with _handled():
        entry = atlas.load_brace(brace_path)
        bound = config["bounds"]["sub_braces"]
        if entry.brace.order > bound:
            raise BoundExceeded(entry.brace.order, bound, "centraliser")
        report = huq.centraliser_report(entry.brace, _parse_ideal(ideal, entry.brace.order))
        click.echo(render_centraliser(report, entry))


@cli.command("scan-centralisers")
@click.option("--max-order", type=int, default=None, help="Largest order to scan (default from config)")
@click.option("--ingest", type=click.Path(file_okay=False), default=None, help="Directory of *.skb files")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Scan report to write")
@click.pass_obj
def scan_centralisers(config: dict, max_order: int | None, ingest: str | None, out: str):
    """Check every ideal of every small brace for a normal Huq centraliser."""
    with _handled():
        entries = atlas.load_braces(ingest) if ingest else []
        lines = atlas.scan_centralisers(
            max_order if max_order is not None else config["scan"]["max_order"],
            ingest=entries,
            out=out,
            bound=config["bounds"]["enumeration"],
            sub_brace_bound=config["bounds"]["sub_braces"],
            automorphism_bound=config["bounds"]["automorphisms"],
        )
    if lines:
        click.echo(render_scan(lines))
    failing = sum(not line.normal for line in lines)
    click.echo(result("summary", len(lines), "ideals", failing, "without a normal centraliser"))


@cli.command("enumerate")
@click.option("--order", type=int, required=True, help="Order of the additive group")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Directory for *.skb files")
@click.pass_obj
def enumerate_cmd(config: dict, order: int, out: str | None):
    """List one skew brace per isomorphism class of the given order."""
    with _handled():
        if order < 1:
            raise ValueError(f"--order must be positive, got {order}")
        bound = config["bounds"]["enumeration"]
        if order > bound:
            raise BoundExceeded(order, bound, "enumerate")
        total = 0
        for g in small_groups(order):
            braces = atlas.enumerate_skew_braces(g, bound, config["bounds"]["automorphisms"])
            total += len(braces)
            click.echo(result("group", g.name, len(braces)))
            if out is not None:
                Path(out).mkdir(parents=True, exist_ok=True)
                for k, b in enumerate(braces):
                    atlas.save_brace(b, Path(out) / f"{g.name}_{k}.skb")
        click.echo(result("total", order, total))


@cli.command("solve-identities")
@click.option("--algebra", "algebra_path", required=True, type=click.Path(dir_okay=False), help="Algebra file")
@click.option("--side", type=click.Choice(["left", "right", "both"]), default="both", show_default=True)
@click.pass_obj
def solve_identities(config: dict, algebra_path: str, side: str):
    """Solve the eight-term identities exactly over the rationals."""
    with _handled():
        a = nalg.load_algebra(algebra_path)
        sides = nalg.SIDES if side == "both" else (side,)
        solver = config["solver"]
        outputs = [render_solution(nalg.solve_identity(a, s, solver["spot_checks"], solver["seed"])) for s in sides]
    click.echo("\n\n".join(outputs))


@cli.command()
@click.option("--brace", "brace_path", required=True, type=click.Path(dir_okay=False), help="Brace file")
def ybe(brace_path: str):
    """Check that the brace's solution of the Yang-Baxter equation is bijective and braided."""
    with _handled():
        verdict = skb.check_yb(atlas.load_brace(brace_path).brace)
    click.echo("\n".join(render_verdict(verdict)))
    click.echo(result("yang_baxter", "PASS" if verdict else "FAIL"))
    if not verdict:
        sys.exit(EXIT_CHECK_FAILED)


@dataclass(frozen=True)
class CommandOutcome:
    """Exit code, captured stdout and the report path named by --out, if any."""

    exit_code: int
    stdout: str
    report: Path | None = None


def run(argv: Sequence[str]) -> CommandOutcome:
    """
    Run the CLI in-process and capture its output.

    Args:
        argv: Arguments after the program name.

    Returns:
        The outcome; usage errors give exit code 2.
    """
    args = list(argv)
    buffer = io.StringIO()
    exit_code = EXIT_OK
    with redirect_stdout(buffer):
        try:
            returned = cli.main(args=args, prog_name="bracelit", standalone_mode=False)
            if isinstance(returned, int):
                exit_code = returned
        except SystemExit as e:
            exit_code = e.code if isinstance(e.code, int) else EXIT_INPUT_ERROR
        except click.ClickException as e:
            e.show()
            exit_code = e.exit_code
    report = Path(args[args.index("--out") + 1]) if "--out" in args[:-1] else None
    return CommandOutcome(exit_code, buffer.getvalue(), report)
