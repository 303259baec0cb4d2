"""
Command Line Interface for the blow-up engine
"""

import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .config import OUTPUT_FORMATS, EngineConfig, config
from .errors import EngineError
from .harness import (
    build_report, emit_diagram, load_catalog, load_family, render_svg, run_batch, run_files,
)
from .game import run_case
from .logger import logger
from .models import BatchSummary, CaseReport


console = Console()


def _engine(max_unprojections: Optional[int], strict: bool) -> EngineConfig:
    data = config.engine.model_dump()
    if max_unprojections is not None:
        data["max_unprojections"] = max_unprojections
    data["strict"] = strict or config.engine.strict
    return EngineConfig(**data)


def _case_panel(report: CaseReport) -> Panel:
    lines = []
    if report.blowup:
        b = report.blowup
        lines.append(f"centre {b.point} {b.germ}, discrepancy {b.discrepancy}")
    for u in report.unprojections:
        lines.append(f"🧩 {u.variable}{tuple(u.weight)} from ({','.join(u.ideal)}) in {u.equation}")
    for step in report.steps:
        lines.append(f"  {tuple(step.wall)}  {step.describe()}")
    if report.final_model:
        lines.append(f"final model {report.final_model}")
    if report.curve:
        c = report.curve
        lines.append(f"curve: C.E={c.c_e} C.D={c.c_d} C.(-K)={c.c_k} excluded={c.excluded}")
    for w in report.warnings:
        lines.append(f"⚠️  {w}")
    for a in report.advisories:
        lines.append(f"📝 {a}")
    for e in report.verdict.evidence:
        lines.append(f"➡️  {e}")
    return Panel("\n".join(lines), title=f"{report.case_id}: {report.verdict.label}")


def _print_summary(summary: BatchSummary, verbose: bool):
    table = Table(title="Kawamata blow-up verdicts")
    table.add_column("Case", style="cyan")
    table.add_column("Verdict", style="magenta")
    table.add_column("Expected")
    table.add_column("Ending")
    table.add_column("", justify="center")

    for report in summary.reports:
        table.add_row(
            report.case_id,
            report.verdict.label,
            report.expected or "-",
            report.ending or "-",
            "✅" if report.matches else "❌",
        )
    console.print(table)

    if verbose:
        for report in summary.reports:
            console.print(_case_panel(report))

    for error in summary.errors:
        console.print(f"❌ {error}", style="red")
    for mismatch in summary.mismatches:
        console.print(f"🔴 {mismatch}", style="red")
    if summary.advisory_mismatches:
        style = "red" if summary.strict else "yellow"
        console.print(f"📝 {len(summary.advisory_mismatches)} advisory differences", style=style)
    if summary.exit_code == 0:
        console.print("✅ All verdicts match the catalog", style="green")


def _emit(summary: BatchSummary, fmt: str, output: Optional[str], verbose: bool):
    if fmt == "json":
        text = summary.model_dump_json(indent=2)
        if output:
            Path(output).write_text(text, encoding="utf-8")
            console.print(f"💾 Report written to {output}")
        else:
            click.echo(text)
        return
    if fmt == "svg":
        directory = Path(output or config.output.diagram_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for report in summary.reports:
            if report.cone is not None:
                (directory / f"{report.case_id}.svg").write_text(render_svg(report), encoding="utf-8")
        console.print(f"🖼️  Diagrams written to {directory}")
    _print_summary(summary, verbose)


def _batch_options(f):
    f = click.option('--verbose', '-v', is_flag=True, help='Show the game of every case')(f)
    f = click.option('--output', '-o', type=click.Path(), default=None,
                     help='Report file (json) or diagram directory (svg)')(f)
    f = click.option('--strict', is_flag=True, help='Fail on advisory flip-label differences')(f)
    f = click.option('--max-unprojections', type=click.IntRange(0, 10), default=None,
                     help='Bound on the unprojection loop')(f)
    f = click.option('--format', 'fmt', type=click.Choice(OUTPUT_FORMATS), default=None,
                     help='Output format')(f)
    return f


@click.group()
@click.version_option(version="1.0.0")
def cli():
    """Kawamata blow-ups of Fano complete intersections and their 2-ray games"""
    if config.validate():
        logger.configure(config.logging.log_level, config.logging.log_file)


@cli.command()
@click.argument('files', nargs=-1, type=click.Path())
@_batch_options
def run(files, fmt, max_unprojections, strict, output, verbose):
    """Run the game for family files"""
    summary = run_files(files, _engine(max_unprojections, strict))
    _emit(summary, fmt or config.output.default_format, output, verbose)
    sys.exit(summary.exit_code)


@cli.command()
@_batch_options
def catalog(fmt, max_unprojections, strict, output, verbose):
    """Run every builtin fixture"""
    try:
        specs = load_catalog()
    except EngineError as e:
        console.print(f"❌ Catalog does not load: {e}", style="red")
        sys.exit(2)
    summary = run_batch(specs, _engine(max_unprojections, strict))
    _emit(summary, fmt or config.output.default_format, output, verbose)
    sys.exit(summary.exit_code)


@cli.command()
@click.argument('file', type=click.Path())
@click.option('--format', 'fmt', type=click.Choice(["text", "svg"]), default="text")
@click.option('--output', '-o', type=click.Path(), default=None, help='Write the diagram here')
def diagram(file, fmt, output):
    """Chamber diagram of one family"""
    try:
        spec = load_family(file)
    except EngineError as e:
        console.print(f"❌ {e}", style="red")
        sys.exit(2)
    report = build_report(run_case(spec, _engine(None, False)))
    if report.cone is None:
        console.print(f"❌ {report.case_id}: no cone data ({report.verdict.label})", style="red")
        sys.exit(2)
    text = render_svg(report) if fmt == "svg" else emit_diagram(report)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        console.print(f"💾 Diagram written to {output}")
    else:
        click.echo(text, nl=False)


@cli.command('show-config')
def show_config():
    """Show the effective configuration"""
    if config.validate():
        console.print("✅ Configuration is valid", style="green")
    else:
        console.print("❌ Configuration validation failed", style="red")

    table = Table(title="Configuration Summary")
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("Max unprojections", str(config.engine.max_unprojections))
    table.add_row("Substitution depth", str(config.engine.substitution_depth))
    table.add_row("Tangent weight iterations", str(config.engine.alpha_iterations))
    table.add_row("Strict", str(config.engine.strict))
    table.add_row("Output format", config.output.default_format)
    table.add_row("Diagram directory", config.output.diagram_dir)
    table.add_row("Log level", config.logging.log_level)
    table.add_row("Log file", config.logging.log_file or "-")

    console.print(table)
