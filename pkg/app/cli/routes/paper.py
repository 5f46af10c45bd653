"""
Reproduction command: verify-paper.
"""
import logging

import typer
from typing_extensions import Annotated

from app.cli import cli
from app.cli.common import OutputFormat, emit, handle_errors
from app.services import verification

logger = logging.getLogger(__name__)


@cli.command("verify-paper")
@handle_errors
def verify_paper_command(
    quick: Annotated[bool, typer.Option("--quick", help="smaller instance sets")] = False,
    perturb_q: Annotated[float, typer.Option("--perturb-q", hidden=True)] = 0.0,
    fmt: Annotated[OutputFormat, typer.Option("--format")] = OutputFormat.JSON,
):
    """
    Re-derive every published numeric claim and report pass or fail per claim.
    """
    logger.info(f"Verifying published claims (quick={quick})")
    emit(verification.paper_report(quick=quick, q_perturbation=perturb_q), fmt)
