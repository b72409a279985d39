"""
Domain types shared by every module.

All models are frozen pydantic models: safe to share read-only across worker
threads, hashable, and serializable with `model_dump(mode="json")`.
A wildcard cell is stored as `None` (text format `*`, array form -1).
"""
from enum import Enum
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

WILDCARD_CODE = -1


class VerifyMethod(str, Enum):
    BRUTE = "brute"
    FAST = "fast"


class Pattern(BaseModel):
    """Sorted offset set starting at 0; a k-AP is {0, 1, ..., k-1}."""
    model_config = ConfigDict(frozen=True)

    offsets: tuple[int, ...]

    @field_validator("offsets")
    @classmethod
    def _check_offsets(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(v) < 3:
            raise ValueError(f"pattern needs at least 3 offsets, got {len(v)}")
        if v[0] != 0:
            raise ValueError(f"pattern must start at 0, got {v[0]}")
        for prev, cur in zip(v, v[1:]):
            if cur <= prev:
                raise ValueError(f"offsets must be strictly increasing ({prev} then {cur})")
        return v

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def span(self) -> int:
        return self.offsets[-1]

    @property
    def is_progression(self) -> bool:
        return self.offsets == tuple(range(self.size))

    def label(self) -> str:
        if self.is_progression:
            return f"k={self.size}"
        return "{" + ",".join(str(o) for o in self.offsets) + "}"

    def __str__(self) -> str:
        return ",".join(str(o) for o in self.offsets)


class ZmColoring(BaseModel):
    """A coloring of Z_m with r colors; `None` cells may be colored arbitrarily."""
    model_config = ConfigDict(frozen=True)

    modulus: int = Field(ge=1)
    color_count: int = Field(ge=1)
    cells: tuple[Optional[int], ...]

    _array: Optional[np.ndarray] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_cells(self) -> "ZmColoring":
        if len(self.cells) != self.modulus:
            raise ValueError(f"expected {self.modulus} cells, got {len(self.cells)}")
        for x, cell in enumerate(self.cells):
            if cell is not None and not 0 <= cell < self.color_count:
                raise ValueError(f"cell {x} has color {cell}, outside [0, {self.color_count})")
        return self

    # the cached array is a private attribute; equality is over the fields only
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZmColoring):
            return NotImplemented
        return (self.modulus, self.color_count, self.cells) == (other.modulus, other.color_count, other.cells)

    def __hash__(self) -> int:
        return hash((self.modulus, self.color_count, self.cells))

    @classmethod
    def from_array(cls, values: np.ndarray, color_count: int) -> "ZmColoring":
        """Build from an integer array where -1 marks a wildcard."""
        cells = tuple(None if v < 0 else int(v) for v in values.tolist())
        return cls(modulus=len(cells), color_count=color_count, cells=cells)

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view of the cells, wildcard = -1."""
        if self._array is None:
            arr = np.fromiter(
                (WILDCARD_CODE if c is None else c for c in self.cells),
                dtype=np.int64,
                count=self.modulus,
            )
            arr.flags.writeable = False
            self._array = arr
        return self._array

    @property
    def wildcards(self) -> tuple[int, ...]:
        return tuple(x for x, c in enumerate(self.cells) if c is None)

    @property
    def has_wildcard(self) -> bool:
        return any(c is None for c in self.cells)

    @property
    def wildcard_only_at_zero(self) -> bool:
        return self.wildcards == (0,)

    def fix_wildcards(self, color: int = 0) -> "ZmColoring":
        """Return a copy with every wildcard cell set to `color`."""
        cells = tuple(color if c is None else c for c in self.cells)
        return ZmColoring(modulus=self.modulus, color_count=self.color_count, cells=cells)


class Instance(BaseModel):
    """One placement (a, d) of a pattern in Z_m."""
    model_config = ConfigDict(frozen=True)

    a: int = Field(ge=0)
    d: int = Field(ge=0)

    @property
    def trivial(self) -> bool:
        return self.d == 0

    def elements(self, pattern: Pattern, modulus: int) -> tuple[int, ...]:
        return tuple((self.a + o * self.d) % modulus for o in pattern.offsets)


class Verdict(BaseModel):
    """Pass, or fail with the first violating instance and its color."""
    model_config = ConfigDict(frozen=True)

    passed: bool
    modulus: int
    pattern: Pattern
    method: VerifyMethod = VerifyMethod.BRUTE
    witness: Optional[Instance] = None
    color: Optional[int] = None

    @model_validator(mode="after")
    def _check_witness(self) -> "Verdict":
        if not self.passed and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if self.passed and self.witness is not None:
            raise ValueError("a passing verdict has no witness")
        return self

    def describe(self) -> str:
        if self.passed:
            return "pass"
        color = "*" if self.color is None else str(self.color)
        return f"fail a={self.witness.a} d={self.witness.d} color={color}"


class CosetLabels(BaseModel):
    """Coset index of every nonzero residue mod p in Z_p^* / (Z_p^*)^r."""
    model_config = ConfigDict(frozen=True)

    p: int
    r: int
    generator: int
    labels: tuple[Optional[int], ...]

    @model_validator(mode="after")
    def _check_labels(self) -> "CosetLabels":
        if len(self.labels) != self.p:
            raise ValueError(f"expected {self.p} labels, got {len(self.labels)}")
        if self.labels[0] is not None:
            raise ValueError("label of 0 must be the wildcard")
        return self

    def members(self, label: int) -> tuple[int, ...]:
        return tuple(x for x, t in enumerate(self.labels) if t == label)


class CountResult(BaseModel):
    """Exact monochromatic count on [n]; F(n) of the unrolling recursion."""
    model_config = ConfigDict(frozen=True)

    n: int
    pattern: Pattern
    count: int = Field(ge=0)
    elapsed_ms: float = 0.0

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.count, self.n * self.n) if self.n else Fraction(0)

    def to_output(self, timing: bool = False) -> dict:
        ratio = self.ratio
        out = {
            "n": self.n,
            "pattern": list(self.pattern.offsets),
            "count": self.count,
            "ratio_numerator": ratio.numerator,
            "ratio_denominator": ratio.denominator,
            "ratio": decimal_text(ratio, 10),
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


class ModulusDiagnostic(BaseModel):
    model_config = ConfigDict(frozen=True)

    modulus: int
    passed: bool
    longest_run: int
    witness: Optional[Instance] = None


class SearchReport(BaseModel):
    """Result of a prime sweep: every passing modulus in ascending order."""
    model_config = ConfigDict(frozen=True)

    r: int
    pattern: Pattern
    bound: int
    passing: tuple[int, ...] = ()
    best: Optional[int] = None
    diagnostics: tuple[ModulusDiagnostic, ...] = ()

    @model_validator(mode="after")
    def _check_best(self) -> "SearchReport":
        if list(self.passing) != sorted(self.passing):
            raise ValueError("passing moduli must be ascending")
        expected = max(self.passing) if self.passing else None
        if self.best != expected:
            raise ValueError(f"best must be {expected}, got {self.best}")
        return self

    @property
    def examined(self) -> int:
        return len(self.diagnostics)


def decimal_text(value: Fraction, places: int) -> str:
    """Exact decimal expansion of a non-negative fraction, rounded half up."""
    scale = 10**places
    num = value.numerator * scale
    q, rem = divmod(num, value.denominator)
    if 2 * rem >= value.denominator:
        q += 1
    whole, frac = divmod(q, scale)
    if places == 0:
        return str(whole)
    return f"{whole}.{frac:0{places}d}"


def truncated_text(value: Fraction, places: int) -> str:
    """Decimal expansion of a non-negative fraction cut after `places` digits."""
    scale = 10**places
    q = value.numerator * scale // value.denominator
    whole, frac = divmod(q, scale)
    if places == 0:
        return str(whole)
    return f"{whole}.{frac:0{places}d}"
