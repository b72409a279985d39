"""
Exact counting of monochromatic pattern instances on [n] and Z_m.

An instance on [n] is (a, d) with a >= 1, d >= 1 and a + span*d <= n,
counted once (forward direction only). On Z_m both d and m-d are counted.
"""
import itertools
import time
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..config import COUNT_CHUNK_D, EXHAUSTIVE_AVERAGE_MAX_COLORINGS, INT64_MAX, LINE_MAX_N
from .errors import LimitExceededError, PreconditionError
from .line import LineColoring
from .models import CountResult, Pattern, ZmColoring
from .utils.log import get_logger
from .utils.parallel import chunk_ranges, ordered_map
from .zm import mono_block

logger = get_logger(__name__)


def total_instances(n: int, pattern: Pattern) -> int:
    """sum over d >= 1 of max(0, n - span*d)."""
    if n <= 0:
        return 0
    s = pattern.span
    top = (n - 1) // s
    return top * n - s * top * (top + 1) // 2


def _check_line_limits(n: int, pattern: Pattern) -> None:
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if n > LINE_MAX_N:
        raise LimitExceededError("line length", n, LINE_MAX_N)
    if n * n // (2 * pattern.span) > INT64_MAX:
        raise LimitExceededError("instance count", n * n // (2 * pattern.span), INT64_MAX)


def _count_d_range(colors: np.ndarray, offsets: Sequence[int], d_lo: int, d_hi: int) -> int:
    """Monochromatic instances with d in [d_lo, d_hi).

    The first two offsets are compared as whole slices; later offsets only
    look at the surviving candidate starts.
    """
    n = colors.shape[0]
    span = offsets[-1]
    first, second, rest = offsets[1], offsets[2], offsets[3:]
    total = 0
    for d in range(d_lo, d_hi):
        length = n - span * d
        if length <= 0:
            break
        head = colors[:length]
        mask = head == colors[first * d:first * d + length]
        mask &= head == colors[second * d:second * d + length]
        if not rest:
            total += int(np.count_nonzero(mask))
            continue
        idx = np.flatnonzero(mask)
        for o in rest:
            if idx.size == 0:
                break
            idx = idx[head[idx] == colors[idx + o * d]]
        total += int(idx.size)
    return total


def count_colors(colors: np.ndarray, pattern: Pattern, jobs: int = 1) -> int:
    """Count on an already materialized color array (colors[i] is the color of i+1)."""
    top = (colors.shape[0] - 1) // pattern.span
    chunks = list(chunk_ranges(1, top + 1, COUNT_CHUNK_D))
    parts = ordered_map(lambda ch: _count_d_range(colors, pattern.offsets, *ch), chunks, jobs)
    return sum(parts)


def count_line(coloring: LineColoring, n: int, pattern: Pattern, jobs: int = 1) -> CountResult:
    """Exact number of monochromatic instances of `pattern` in [n]."""
    _check_line_limits(n, pattern)
    start = time.perf_counter()
    colors = coloring.materialize(n)
    count = count_colors(colors, pattern, jobs)
    elapsed = (time.perf_counter() - start) * 1000
    logger.info(f"[Count] {coloring.kind} n={n} {pattern.label()} count={count} ({elapsed:.1f} ms)")
    return CountResult(n=n, pattern=pattern, count=count, elapsed_ms=elapsed)


def empirical_coefficient(coloring: LineColoring, pattern: Pattern, ns: Sequence[int], jobs: int = 1) -> list[CountResult]:
    """count / n^2 for each n; colors are materialized once for the largest n."""
    ns = list(ns)
    if not ns:
        return []
    if ns != sorted(ns):
        raise PreconditionError(f"n values must be ascending, got {ns}")
    for n in ns:
        _check_line_limits(n, pattern)

    colors = coloring.materialize(ns[-1])
    results = []
    for n in ns:
        start = time.perf_counter()
        count = count_colors(colors[:n], pattern, jobs)
        elapsed = (time.perf_counter() - start) * 1000
        results.append(CountResult(n=n, pattern=pattern, count=count, elapsed_ms=elapsed))
    return results


def count_cyclic(coloring: ZmColoring, pattern: Pattern, jobs: int = 1) -> int:
    """Monochromatic ordered instances (a, d), d != 0, of a concrete coloring of Z_m."""
    if coloring.has_wildcard:
        raise PreconditionError("cyclic counting needs a coloring without wildcards")
    m = coloring.modulus
    cells = coloring.array
    rows = max(1, (1 << 20) // m)

    def _count(chunk: tuple[int, int]) -> int:
        mask, _ = mono_block(cells, pattern.offsets, np.arange(*chunk))
        return int(mask.sum())

    return sum(ordered_map(_count, list(chunk_ranges(1, m, rows)), jobs))


def average_over_colorings(n: int, r: int, pattern: Pattern) -> Fraction:
    """Mean monochromatic count over all r^n colorings: total * r^(1 - size)."""
    if n < 0 or r < 1:
        raise PreconditionError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    return Fraction(total_instances(n, pattern), r ** (pattern.size - 1))


def exhaustive_average(n: int, r: int, pattern: Pattern) -> Fraction:
    """Brute mean over every explicit r-coloring of [n] (averaging oracle)."""
    if n < 0 or r < 1:
        raise PreconditionError(f"need n >= 0 and r >= 1, got n={n}, r={r}")
    colorings = r**n
    if colorings > EXHAUSTIVE_AVERAGE_MAX_COLORINGS:
        raise LimitExceededError("colorings to enumerate", colorings, EXHAUSTIVE_AVERAGE_MAX_COLORINGS)

    codes = np.arange(colorings, dtype=np.int64)
    columns = [((codes // r**j) % r).astype(np.uint8) for j in range(n)]

    total = 0
    span = pattern.span
    for d in itertools.count(1):
        if span * d >= n:
            break
        for a in range(n - span * d):
            positions = [a + o * d for o in pattern.offsets]
            ref = columns[positions[0]]
            mono = np.ones(colorings, dtype=bool)
            for pos in positions[1:]:
                mono &= columns[pos] == ref
            total += int(mono.sum())
    return Fraction(total, colorings)
