"""
Colorings of [n] and the exact leading coefficients of their monochromatic
counts.

Four rules color l = 1, 2, ...:
  solid     one color everywhere
  blocks    consecutive blocks with relative sizes, one color per block
  periodic  l -> base[l mod m]
  unrolled  l -> base[first nonzero base-m digit of l] (self-similar)
"""
from fractions import Fraction
from typing import Annotated, Callable, Literal, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import MATERIALIZE_CHUNK, PERIODIC_MAX_MODULUS
from .errors import LimitExceededError, PreconditionError
from .models import Pattern, ZmColoring, decimal_text
from .utils.log import get_logger
from .utils.parallel import chunk_ranges, ordered_map
from .zm import mono_block, verify_zm

logger = get_logger(__name__)


def _color_dtype(color_count: int) -> type:
    return np.uint8 if color_count <= 256 else np.uint16


def _fill_by_position(n: int, dtype: type, colors_of: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Colors of 1..n written into one preallocated array.

    Positions are decoded MATERIALIZE_CHUNK at a time, so int64 scratch never
    grows with n.
    """
    out = np.empty(max(n, 0), dtype=dtype)
    for lo, hi in chunk_ranges(1, n + 1, MATERIALIZE_CHUNK):
        out[lo - 1:hi - 1] = colors_of(np.arange(lo, hi, dtype=np.int64))
    return out


class SolidColoring(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["solid"] = "solid"
    r: int = Field(default=1, ge=1)
    color: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_color(self) -> "SolidColoring":
        if self.color >= self.r:
            raise ValueError(f"color {self.color} outside [0, {self.r})")
        return self

    @property
    def color_count(self) -> int:
        return self.r

    def color_at(self, l: int) -> int:
        _require_positive(l)
        return self.color

    def materialize(self, n: int) -> np.ndarray:
        return np.full(n, self.color, dtype=_color_dtype(self.r))


class BlockColoring(BaseModel):
    """Blocks with relative sizes, discretized for a fixed n.

    boundary_j = round(n * (s_1 + ... + s_j) / total), half away from zero;
    block j covers (boundary_{j-1}, boundary_j] and may be empty.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["blocks"] = "blocks"
    sizes: tuple[int, ...]
    colors: tuple[int, ...]
    n: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_blocks(self) -> "BlockColoring":
        if not self.sizes:
            raise ValueError("at least one block is required")
        if len(self.sizes) != len(self.colors):
            raise ValueError(f"{len(self.sizes)} sizes but {len(self.colors)} colors")
        if any(s <= 0 for s in self.sizes):
            raise ValueError("block sizes must be positive")
        if any(c < 0 for c in self.colors):
            raise ValueError("block colors must be non-negative")
        return self

    @property
    def color_count(self) -> int:
        return max(self.colors) + 1

    @property
    def boundaries(self) -> tuple[int, ...]:
        total = sum(self.sizes)
        out, prefix = [], 0
        for s in self.sizes:
            prefix += s
            out.append((2 * self.n * prefix + total) // (2 * total))
        return tuple(out)

    @property
    def widths(self) -> tuple[int, ...]:
        bounds = (0,) + self.boundaries
        return tuple(hi - lo for lo, hi in zip(bounds, bounds[1:]))

    def color_at(self, l: int) -> int:
        _require_positive(l)
        if l > self.n:
            raise PreconditionError(f"position {l} is beyond the block coloring of [{self.n}]")
        for bound, color in zip(self.boundaries, self.colors):
            if l <= bound:
                return color
        raise AssertionError("boundaries must end at n")

    def materialize(self, n: int) -> np.ndarray:
        if n > self.n:
            raise PreconditionError(f"block coloring covers [{self.n}], cannot extend to {n}")
        full = np.repeat(np.asarray(self.colors, dtype=_color_dtype(self.color_count)), self.widths)
        return full[:n]


class PeriodicColoring(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["periodic"] = "periodic"
    base: ZmColoring

    @model_validator(mode="after")
    def _check_base(self) -> "PeriodicColoring":
        if self.base.has_wildcard:
            raise ValueError("periodic base coloring must not contain wildcards")
        return self

    @property
    def color_count(self) -> int:
        return self.base.color_count

    def color_at(self, l: int) -> int:
        _require_positive(l)
        return self.base.cells[l % self.base.modulus]

    def materialize(self, n: int) -> np.ndarray:
        cells, m = self.base.array, self.base.modulus
        return _fill_by_position(n, _color_dtype(self.color_count), lambda pos: cells[pos % m])


class UnrolledColoring(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["unrolled"] = "unrolled"
    base: ZmColoring

    @model_validator(mode="after")
    def _check_base(self) -> "UnrolledColoring":
        _require_unrollable(self.base, ValueError)
        return self

    @property
    def color_count(self) -> int:
        return self.base.color_count

    def color_at(self, l: int) -> int:
        return color_at_unrolled(self.base, l)

    def materialize(self, n: int) -> np.ndarray:
        cells, m = self.base.array, self.base.modulus

        def _digit_colors(pos: np.ndarray) -> np.ndarray:
            # strip trailing zero digits
            while True:
                divisible = pos % m == 0
                if not divisible.any():
                    break
                pos[divisible] //= m
            return cells[pos % m]

        return _fill_by_position(n, _color_dtype(self.color_count), _digit_colors)


LineColoring = Annotated[
    Union[SolidColoring, BlockColoring, PeriodicColoring, UnrolledColoring],
    Field(discriminator="kind"),
]


def _require_positive(l: int) -> None:
    if l < 1:
        raise PreconditionError(f"positions start at 1, got {l}")


def _require_unrollable(base: ZmColoring, exc: type = PreconditionError) -> None:
    if base.modulus < 2:
        raise exc("unrolling needs a modulus of at least 2")
    if not base.wildcard_only_at_zero:
        raise exc(f"unrolling needs a wildcard exactly at cell 0, found wildcards at {list(base.wildcards)}")


def color_at_unrolled(base: ZmColoring, l: int) -> int:
    """Color of l: base cell of the least-significant nonzero base-m digit."""
    _require_positive(l)
    _require_unrollable(base)
    m = base.modulus
    while l % m == 0:
        l //= m
    return base.cells[l % m]


def blocks_coloring(sizes: Sequence[int], colors: Sequence[int], n: int) -> BlockColoring:
    if len(sizes) != len(colors):
        raise PreconditionError(f"{len(sizes)} sizes but {len(colors)} colors")
    if any(s <= 0 for s in sizes):
        raise PreconditionError("block sizes must be positive")
    return BlockColoring(sizes=tuple(sizes), colors=tuple(colors), n=n)


def periodic_coefficient(base: ZmColoring, pattern: Pattern, jobs: int = 1) -> Fraction:
    """M / (2 * span * m^2), M = monochromatic classes (a, d) in Z_m x Z_m, d = 0 included."""
    if base.has_wildcard:
        raise PreconditionError("periodic coefficient needs a coloring without wildcards")
    m = base.modulus
    if m > PERIODIC_MAX_MODULUS:
        raise LimitExceededError("periodic coefficient modulus", m, PERIODIC_MAX_MODULUS)

    cells = base.array
    rows = max(1, (1 << 20) // m)

    def _count(chunk: tuple[int, int]) -> int:
        mask, _ = mono_block(cells, pattern.offsets, np.arange(*chunk))
        return int(mask.sum())

    mono = sum(ordered_map(_count, list(chunk_ranges(0, m, rows)), jobs))
    logger.debug(f"[Line] periodic m={m} {pattern.label()} M={mono}")
    return Fraction(mono, 2 * pattern.span * m * m)


def unrolled_coefficient(base: ZmColoring, pattern: Pattern) -> Fraction:
    """1 / (2 * span * (m + 1)) for a wildcard-at-0 coloring that avoids the pattern."""
    _require_unrollable(base)
    verdict = verify_zm(base, pattern)
    if not verdict.passed:
        raise PreconditionError(
            f"base coloring of Z_{base.modulus} does not avoid {pattern.label()}: {verdict.describe()}",
            verdict=verdict,
        )
    return Fraction(1, 2 * pattern.span * (base.modulus + 1))


def random_coefficient(r: int, pattern: Pattern) -> Fraction:
    """Average leading coefficient over all r-colorings: 1 / (2 * span * r^(size-1))."""
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    return Fraction(1, 2 * pattern.span * r ** (pattern.size - 1))


def percent_vs_random(m: int, r: int, pattern: Pattern) -> Fraction:
    """Unrolled coefficient over random coefficient: r^(size-1) / (m + 1)."""
    return Fraction(r ** (pattern.size - 1), m + 1)


def percent_text(ratio: Fraction, places: int = 2) -> str:
    return decimal_text(ratio * 100, places)
