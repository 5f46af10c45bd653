"""
Exact oracle commands: lambda, chi-ell and choosable.
"""
import logging
from pathlib import Path
from typing import Optional

import typer
from typing_extensions import Annotated

from app.cli import cli
from app.cli.common import OutputFormat, emit, handle_errors, load_graph
from app.services import verification
from app.services.graph_core import GraphFamily

logger = logging.getLogger(__name__)

GraphFile = Annotated[Optional[Path], typer.Option("--graph", help="DIMACS .col file")]
Family = Annotated[Optional[GraphFamily], typer.Option("--family", help="generated graph family")]
Size = Annotated[Optional[int], typer.Option("--n", help="family size")]
SecondSize = Annotated[Optional[int], typer.Option("--m", help="second part size for complete_bipartite")]
PaletteCap = Annotated[Optional[int], typer.Option("--palette-cap", help="colors available (default n * list size)")]
Budget = Annotated[Optional[int], typer.Option("--budget", help="search node budget (default NODE_BUDGET)")]
Format = Annotated[OutputFormat, typer.Option("--format")]


@cli.command("lambda")
@handle_errors
def lambda_command(
    t: Annotated[int, typer.Option("--t", help="list size t")] = 2,
    graph: GraphFile = None,
    family: Family = None,
    n: Size = None,
    m: SecondSize = None,
    palette_cap: PaletteCap = None,
    budget: Budget = None,
    fmt: Format = OutputFormat.JSON,
):
    """
    Compute lambda_t exactly and compare it with the conjectured and proven bounds.
    """
    g = load_graph(graph, family, n, m)
    emit(verification.lambda_report(g, t, palette_cap, budget), fmt)


@cli.command("chi-ell")
@handle_errors
def chi_ell_command(
    graph: GraphFile = None,
    family: Family = None,
    n: Size = None,
    m: SecondSize = None,
    palette_cap: PaletteCap = None,
    budget: Budget = None,
    fmt: Format = OutputFormat.JSON,
):
    """
    Compute the list-chromatic number and a bad assignment one size below it.
    """
    g = load_graph(graph, family, n, m)
    emit(verification.chi_ell_report(g, palette_cap, budget), fmt)


@cli.command("choosable")
@handle_errors
def choosable_command(
    s: Annotated[int, typer.Option("--s", help="list size s")] = 2,
    graph: GraphFile = None,
    family: Family = None,
    n: Size = None,
    m: SecondSize = None,
    palette_cap: PaletteCap = None,
    budget: Budget = None,
    fmt: Format = OutputFormat.JSON,
):
    """
    Decide s-choosability by canonical enumeration of s-list assignments.
    """
    g = load_graph(graph, family, n, m)
    emit(verification.choosable_report(g, s, palette_cap, budget), fmt)
