"""
Main command line entrypoint.
"""
import logging

from app.cli import cli
from app.core.config import settings

logger = logging.getLogger(__name__)


def run() -> None:
    """Run the plc-bounds command line."""
    logger.debug(f"Starting {settings.PROJECT_NAME} {settings.VERSION}")
    cli()


if __name__ == "__main__":
    run()
