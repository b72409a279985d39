"""Logger factory: rich handler on stderr so stdout stays reserved for results."""
import logging

from rich.console import Console
from rich.logging import RichHandler

from ...config import LOG_LEVEL

_ROOT = "apunroll"
_configured = False


def _configure() -> None:
    global _configured
    if _configured:
        return
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    root = logging.getLogger(_ROOT)
    root.addHandler(handler)
    root.setLevel(getattr(logging, LOG_LEVEL, logging.WARNING))
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Return a child of the package logger, e.g. `apunroll.core.search`."""
    _configure()
    short = name.split("src.", 1)[-1] if name.startswith("src.") else name
    return logging.getLogger(f"{_ROOT}.{short}")


def set_level(level: str | int) -> None:
    _configure()
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.getLogger(_ROOT).setLevel(level)
