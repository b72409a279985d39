"""Exception hierarchy shared by every module and mapped to CLI exit codes."""
from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .models import Verdict


class ApunrollError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""
    exit_code = 2


class PatternError(ApunrollError, ValueError):
    """Raised for malformed offset sets or k < 3."""
    pass


class ColoringFormatError(ApunrollError, ValueError):
    """Raised when a coloring or line dump file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        self.line = line
        self.token = token
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}"
            if token is not None:
                where += f", token {token!r}"
            where += ": "
        super().__init__(f"{where}{message}")


class PreconditionError(ApunrollError, ValueError):
    """Raised when an operation's precondition does not hold.

    When the precondition is an avoidance property, `verdict` carries the
    failing verdict so the caller can print its witness.
    """

    def __init__(self, message: str, verdict: "Verdict | None" = None):
        self.message = message
        self.verdict = verdict
        super().__init__(message)

    @property
    def exit_code(self) -> int:  # type: ignore[override]
        return 1 if self.verdict is not None else 2


class LimitExceededError(ApunrollError):
    """Raised instead of starting a computation that exceeds a hard limit."""
    exit_code = 3

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
