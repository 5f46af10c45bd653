"""
Shared command line helpers: input loading, output rendering and exit codes.
"""
import csv
import enum
import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence

import typer
from rich.console import Console
from rich.table import Table

from app.cli import console
from app.core.exceptions import (
    DimacsParseError,
    GuaranteeViolationError,
    InvalidParametersError,
    ListAssignmentError,
    ResourceBudgetExceeded,
    SchemeInapplicableError,
)
from app.schemas.graph import Graph, ListAssignment
from app.schemas.report import VerificationReport
from app.services import graph_core
from app.services.graph_core import GraphFamily

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

stdout = Console()


class OutputFormat(str, enum.Enum):
    JSON = "json"
    TABLE = "table"
    CSV = "csv"


def handle_errors(command: Callable) -> Callable:
    """Map package errors onto the exit code contract."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ResourceBudgetExceeded as e:
            console.print(f"[yellow]unknown:[/yellow] {e}")
            raise typer.Exit(code=EXIT_BUDGET)
        except GuaranteeViolationError as e:
            console.print(f"[red]guarantee violated:[/red] {e}")
            raise typer.Exit(code=EXIT_CHECK_FAILED)
        except (
            InvalidParametersError,
            DimacsParseError,
            ListAssignmentError,
            SchemeInapplicableError,
            OSError,
        ) as e:
            console.print(f"[red]error:[/red] {e}")
            raise typer.Exit(code=EXIT_USAGE)

    return wrapper


def load_graph(
    graph: Optional[Path],
    family: Optional[GraphFamily],
    n: Optional[int],
    m: Optional[int] = None,
) -> Graph:
    """Read a DIMACS file or generate a family graph; exactly one source is allowed."""
    if (graph is None) == (family is None):
        raise InvalidParametersError("give exactly one of --graph FILE or --family NAME")
    if graph is not None:
        logger.info(f"Reading DIMACS graph from {graph}")
        return graph_core.parse_dimacs(graph.read_bytes())
    return graph_core.generate(family, n, m)


def load_lists(
    g: Graph,
    lists: Optional[Path],
    random_lists: Optional[int],
    palette: Optional[int],
    seed: int,
) -> ListAssignment:
    """Read a list assignment JSON file or draw random t-lists."""
    if (lists is None) == (random_lists is None):
        raise InvalidParametersError("give exactly one of --lists FILE or --random-lists T")
    if lists is not None:
        assignment = graph_core.load_list_assignment(lists.read_bytes())
        graph_core.check_covers(g, assignment)
        return assignment
    palette = 2 * random_lists if palette is None else palette
    return graph_core.random_list_assignment(g, random_lists, palette, seed)


def _cell(value: Any) -> str:
    text = str(value)
    return text if len(text) <= 60 else text[:57] + "..."


def _render_table(report: VerificationReport) -> None:
    results = Table(title=f"{report.command} results")
    results.add_column("key")
    results.add_column("value")
    for key, value in report.results.items():
        if key == "grid":
            value = f"{len(value)} rows"
        results.add_row(key, _cell(value))
    stdout.print(results)

    if report.checks:
        checks = Table(title="checks")
        for column in ("claim", "expected", "observed", "kind", "pass"):
            checks.add_column(column)
        for check in report.checks:
            mark = "[green]yes[/green]" if check.passed else "[red]no[/red]"
            checks.add_row(check.label, _cell(check.expected), _cell(check.observed), check.kind, mark)
        stdout.print(checks)


def _render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def emit(
    report: VerificationReport,
    fmt: OutputFormat,
    csv_header: Optional[Sequence[str]] = None,
    csv_rows: Optional[List[Sequence[Any]]] = None,
) -> None:
    """
    Print the report and exit with 0 when every primary check passes, else 1.

    CSV falls back to one row per check when the command has no tabular payload.
    """
    if fmt is OutputFormat.JSON:
        typer.echo(report.model_dump_json(indent=2))
    elif fmt is OutputFormat.TABLE:
        _render_table(report)
    elif csv_header is not None and csv_rows is not None:
        _render_csv(csv_header, csv_rows)
    else:
        _render_csv(
            ("label", "expected", "observed", "passed", "kind"),
            ((c.label, c.expected, c.observed, c.passed, c.kind) for c in report.checks),
        )
    raise typer.Exit(code=EXIT_OK if report.passed else EXIT_CHECK_FAILED)
