import sys
from pathlib import Path
from typing import List, Optional

import typer
from loguru import logger

from app.config import settings
from app.exceptions import CompositionError, RankPreconditionError
from app.models.tableau import Composition
from app.services.analysis import Analysis, analysis_service
from app.services.propagation import propagation_service
from app.services.render import RenderFormat, RenderStyle, render_service
from app.services.report import Stopwatch, report_service
from app.services.sweep import sweep_service
from app.services.verification import verification_service

app = typer.Typer(
    name="ctab",
    help="Composition tableaux, line families and Weierstrass sections",
    no_args_is_help=True,
)

EXIT_VIOLATION = 1
EXIT_MALFORMED = 2


def configure_logging(verbose: bool = False) -> None:
    logger.remove()
    logger.add(
        sys.stderr,
        level="DEBUG" if verbose else settings.log_level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
    )


@app.callback()
def root(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging")):
    configure_logging(verbose)


def _parse(tokens: List[str]) -> Composition:
    try:
        return Composition.parse(" ".join(tokens))
    except CompositionError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_MALFORMED)


def _analyze(tokens: List[str]) -> Analysis:
    return analysis_service.analyze(_parse(tokens))


def _grid(rows: List[List[Optional[int]]], repeats: Optional[set] = None) -> str:
    width = max((len(str(v)) for row in rows for v in row if v is not None), default=1) + 2
    out = []
    for r, row in enumerate(rows, start=1):
        cells = []
        for c, value in enumerate(row, start=1):
            if value is None:
                cells.append("".rjust(width))
            elif repeats and (r, c) in repeats:
                cells.append(f"({value})".rjust(width))
            else:
                cells.append(f"{value} ".rjust(width))
        if any(v is not None for v in row):
            out.append("".join(cells).rstrip())
    return "\n".join(out)


COMPOSITION_ARG = typer.Argument(..., help="Parts, comma- or space-separated, e.g. 1,2,4,3")


@app.command()
def tableau(composition: List[str] = COMPOSITION_ARG):
    """Print the numbered tableau and the composition tableau (repeats in parentheses)."""
    analysis = _analyze(composition)
    k = analysis.composition.k
    rows = analysis.diagram.max_height
    base = [
        [analysis.tableau.columns[c][r] if r < len(analysis.tableau.columns[c]) else None for c in range(k)]
        for r in range(rows)
    ]
    ext = analysis.extended
    repeats = {(r, c) for r in range(1, ext.rows + 1) for c in range(1, k + 1) if ext.is_repeat(r, c)}
    typer.echo(f"T for {analysis.composition}:")
    typer.echo(_grid(base))
    typer.echo("")
    typer.echo("T(inf):")
    typer.echo(_grid(ext.grid, repeats))
    typer.echo("")
    typer.echo(f"precedence: {' '.join(str(e) for e in analysis.order.sequence)}")
    cmap = propagation_service.composition_map(analysis.diagram, analysis.tableau)
    typer.echo(f"composition map: {tuple(cmap)}")


def _emit_report(analysis: Analysis, as_json: bool, section_only: bool) -> None:
    if as_json:
        typer.echo(report_service.dump(report_service.build_report(analysis)))
        return
    if not section_only:
        for line in analysis.lines.lines:
            typer.echo(
                f"{line.label.value:>2}  {line.left_entry:>4} -> {line.right_entry:<4}"
                f"  {line.left_box} -> {line.right_box}"
            )
        return
    section = analysis.section
    typer.echo(f"e:  {section.e_coords}")
    typer.echo(f"V:  {section.v_coords}")
    typer.echo(f"VS quadruplets: {[q.as_tuple() for q in section.quadruplets]}")
    typer.echo(f"e_VS extras: {section.evs_extras}")


@app.command()
def lines(
    composition: List[str] = COMPOSITION_ARG,
    as_json: bool = typer.Option(False, "--json", help="Emit the JSON report"),
):
    """List the line family."""
    _emit_report(_analyze(composition), as_json, section_only=False)


@app.command()
def section(
    composition: List[str] = COMPOSITION_ARG,
    as_json: bool = typer.Option(False, "--json", help="Emit the JSON report"),
):
    """Print e, V, the VS quadruplets and the e_VS extras."""
    _emit_report(_analyze(composition), as_json, section_only=True)


@app.command()
def verify(
    composition: List[str] = COMPOSITION_ARG,
    no_rank: bool = typer.Option(False, "--no-rank", help="Skip the rank certificate"),
    trials: Optional[int] = typer.Option(None, "--trials", help="Rank samples"),
    prime: Optional[int] = typer.Option(None, "--prime", help="Rank modulus"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Rank seed (default RANK_SEED)"),
    as_json: bool = typer.Option(False, "--json", help="Emit the JSON report"),
    timing: bool = typer.Option(False, "--timing", help="Add phase timings to the report"),
):
    """Run the verification suite; exit 1 on any violation."""
    parsed = _parse(composition)
    watch = Stopwatch()
    analysis = analysis_service.analyze(parsed)
    watch.lap("analysis")
    try:
        summary = verification_service.run_suite(
            parsed, rank=not no_rank, trials=trials, prime=prime, seed=seed
        )
    except RankPreconditionError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_MALFORMED)
    watch.lap("verification")

    if as_json:
        report = report_service.build_report(
            analysis, verification=summary, timing=watch.phases if timing else None
        )
        typer.echo(report_service.dump(report))
    else:
        for check in summary.checks:
            typer.echo(f"{check.name:<18} {check.status.value}")
    for check in summary.failed:
        typer.echo(f"violation: {check.name}: {check.clause} {check.details}", err=True)
    if not summary.passed:
        raise typer.Exit(EXIT_VIOLATION)


@app.command()
def render(
    composition: List[str] = COMPOSITION_ARG,
    fmt: RenderFormat = typer.Option(RenderFormat.ASCII, "--format", "-f", help="ascii, svg or tikz"),
    style: RenderStyle = typer.Option(RenderStyle.TABLEAU, "--style", "-s", help="t, tinf or matrix"),
    no_vs: bool = typer.Option(False, "--no-vs", help="Leave out the e_VS extras"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write to a file"),
):
    """Render a figure in one of three layouts."""
    text = render_service.render(_analyze(composition), fmt, style, include_vs=not no_vs)
    if output is None:
        typer.echo(text, nl=False)
        return
    try:
        output.write_text(text, encoding="utf-8")
    except OSError as e:
        typer.echo(f"Error: cannot write {output}: {e.strerror or e}", err=True)
        raise typer.Exit(EXIT_MALFORMED)
    logger.info(f"Wrote {output}")


@app.command()
def sweep(
    n: int = typer.Option(8, "--n", help="Largest n to enumerate"),
    no_rank: bool = typer.Option(False, "--no-rank", help="Skip rank certificates"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Process count"),
    as_json: bool = typer.Option(False, "--json", help="Emit the summary as JSON"),
):
    """Verify every composition of every m <= n; exit 1 on any violation."""
    if not 1 <= n <= settings.sweep_max_n:
        typer.echo(f"Error: --n must lie in [1, {settings.sweep_max_n}]", err=True)
        raise typer.Exit(EXIT_MALFORMED)
    summary = sweep_service.sweep(n, rank=not no_rank, workers=workers)
    if as_json:
        typer.echo(summary.model_dump_json(indent=2))
    else:
        typer.echo(f"compositions: {summary.compositions}")
        for m, count in summary.per_n.items():
            typer.echo(f"  n={m}: {count}")
        for name, count in summary.checks_passed.items():
            typer.echo(f"{name:<18} {count} passed")
        typer.echo(f"rank certificates: {summary.rank_certificates}")
        typer.echo(f"investigate: {len(summary.investigate)}")
        typer.echo(f"violations: {len(summary.violations)}")
        typer.echo(f"wall time: {summary.wall_time}s")
    for violation in summary.violations:
        typer.echo(f"violation: {violation.composition} {violation.check}: {violation.clause}", err=True)
    if not summary.passed:
        raise typer.Exit(EXIT_VIOLATION)


def main():
    app()


if __name__ == "__main__":
    main()
