from enum import Enum
from pathlib import Path
from typing import ClassVar, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_JOBS
from ..core.models import Pattern
from ..core.zm import parse_pattern, pattern_from_k


class LineMode(str, Enum):
    UNROLLED = "unrolled"
    PERIODIC = "periodic"


class CoefficientMode(str, Enum):
    PERIODIC = "periodic"
    UNROLLED = "unrolled"
    RANDOM = "random"
    PERCENT = "percent"


class CommandConfig(BaseModel):
    """Validated options shared by every subcommand."""
    model_config = ConfigDict(frozen=True)

    PATTERN_REQUIRED: ClassVar[frozenset[str]] = frozenset(
        {"verify", "search", "enumerate", "count", "coeff", "average"}
    )

    command: str
    k: Optional[int] = None
    pattern: Optional[str] = None
    input: Optional[Path] = None
    output: Optional[Path] = None
    r: Optional[int] = None
    n: tuple[int, ...] = ()
    bound: Optional[int] = None
    limit: Optional[int] = None
    jobs: int = Field(default=DEFAULT_JOBS, ge=1)
    json_output: bool = False
    fast: bool = False

    @model_validator(mode="after")
    def _check_pattern_flags(self) -> "CommandConfig":
        if self.k is not None and self.pattern is not None:
            raise ValueError("give exactly one of --k / --pattern, not both")
        if self.command in self.PATTERN_REQUIRED and self.k is None and self.pattern is None:
            raise ValueError(f"'{self.command}' needs one of --k / --pattern")
        return self

    @property
    def has_pattern(self) -> bool:
        return self.k is not None or self.pattern is not None

    def resolve_pattern(self) -> Optional[Pattern]:
        if self.k is not None:
            return pattern_from_k(self.k)
        if self.pattern is not None:
            return parse_pattern(self.pattern)
        return None
