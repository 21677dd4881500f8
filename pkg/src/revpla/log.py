"""Logging setup: rich console handler on stderr."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from .cli.env import should_disable_color


def setup_logging(level: str = "WARNING", timestamps: bool = False) -> None:
    """Route the ``revpla`` logger to a RichHandler on stderr.

    Reports own stdout, so logging never writes there.

    Args:
        level: Logging level name
        timestamps: Show log record times
    """
    console = Console(stderr=True, no_color=should_disable_color())
    handler = RichHandler(
        console=console,
        show_time=timestamps,
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))

    logger = logging.getLogger("revpla")
    for existing in list(logger.handlers):
        logger.removeHandler(existing)
    logger.addHandler(handler)
    logger.setLevel(level.upper())
