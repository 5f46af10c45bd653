"""
Command line package.

Route modules register their subcommands on `cli` when imported.
"""
import typer
from rich.console import Console

from app.core.config import settings

cli = typer.Typer(
    name="plc-bounds",
    help=f"{settings.PROJECT_NAME}: analytic bounds, exact oracles and the partial list coloring scheme",
    add_completion=False,
    rich_markup_mode="rich",
)

console = Console(stderr=True)

from app.cli.routes import bounds, oracles, paper, scheme  # noqa: E402,F401
