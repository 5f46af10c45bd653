"""
Scheme command: color.
"""
import enum
import json
import logging
from pathlib import Path
from typing import Optional

import typer
from typing_extensions import Annotated

from app.cli import cli, console
from app.cli.common import OutputFormat, emit, handle_errors, load_graph, load_lists
from app.services import verification
from app.services.graph_core import GraphFamily

logger = logging.getLogger(__name__)


class SchemeMode(str, enum.Enum):
    MC = "mc"
    DERAND = "derand"


@cli.command("color")
@handle_errors
def color_command(
    graph: Annotated[Optional[Path], typer.Option("--graph", help="DIMACS .col file")] = None,
    family: Annotated[Optional[GraphFamily], typer.Option("--family")] = None,
    n: Annotated[Optional[int], typer.Option("--n")] = None,
    m: Annotated[Optional[int], typer.Option("--m")] = None,
    lists: Annotated[Optional[Path], typer.Option("--lists", help="list assignment JSON")] = None,
    random_lists: Annotated[Optional[int], typer.Option("--random-lists", help="draw random t-lists")] = None,
    palette: Annotated[Optional[int], typer.Option("--palette", help="palette size for random lists")] = None,
    seed: Annotated[int, typer.Option("--seed")] = 0,
    s: Annotated[Optional[int], typer.Option("--s", help="augmented list size (default max(d + 1, t + 1))")] = None,
    mode: Annotated[SchemeMode, typer.Option("--mode")] = SchemeMode.DERAND,
    trials: Annotated[int, typer.Option("--trials", help="Monte Carlo trials")] = 10_000,
    output: Annotated[Optional[Path], typer.Option("--output", help="write the coloring JSON here")] = None,
    fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
):
    """
    Run the partial list coloring scheme, derandomized or by Monte Carlo sampling.
    """
    g = load_graph(graph, family, n, m)
    assignment = load_lists(g, lists, random_lists, palette, seed)
    report, coloring = verification.color_report(g, assignment, s, mode.value, trials, seed)

    if coloring is not None:
        report.results["coloring"] = coloring.to_json_dict()
        if output is not None:
            output.write_text(json.dumps(coloring.to_json_dict(), indent=2))
            console.print(f"coloring written to {output}")
    emit(report, fmt)
