"""
Analytic bound commands: q and ratio.
"""
import logging
from typing import Optional

import typer
from typing_extensions import Annotated

from app.cli import cli
from app.cli.common import OutputFormat, emit, handle_errors
from app.services import verification

logger = logging.getLogger(__name__)


@cli.command("q")
@handle_errors
def q_command(
    s: Annotated[int, typer.Argument(help="augmented list size s")],
    t: Annotated[int, typer.Argument(help="given list size t (s > t > 0)")],
    tol: Annotated[Optional[float], typer.Option("--tol", help="bisection bracket width")] = None,
    fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
    perturb_q: Annotated[float, typer.Option("--perturb-q", hidden=True)] = 0.0,
):
    """
    Compute q_{s,t}, check the 6/7 sandwich and expand p(x) = u^t f_{s,t}(x).
    """
    report = verification.q_report(s, t, tol, q_perturbation=perturb_q)
    results = report.results
    emit(
        report,
        fmt,
        csv_header=("s", "t", "q", "bracket_lo", "bracket_hi", "lower", "upper"),
        csv_rows=[(s, t, results["q"], *results["bracket"], results["lower_bound"], results["upper_bound"])],
    )


@cli.command("ratio")
@handle_errors
def ratio_command(
    s_max: Annotated[int, typer.Option("--s-max", help="largest s on the grid")] = 200,
    workers: Annotated[Optional[int], typer.Option("--workers", help="process pool size")] = None,
    fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
):
    """
    Scan q_{s,t}/(t/s) over 0 < t < s <= s_max and minimise its s -> infinity limit.
    """
    report = verification.ratio_report(s_max, workers)
    emit(
        report,
        fmt,
        csv_header=("s", "t", "q", "ratio"),
        csv_rows=[(row["s"], row["t"], row["q"], row["ratio"]) for row in report.results["grid"]],
    )
