"""
Patterns, instances and the brute-force avoidance verifier for Z_m colorings.

`verify_zm` is the ground truth every fast path is tested against.
"""
import math
import re
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from ..config import VERIFY_CHUNK_CELLS
from .errors import PatternError, PreconditionError
from .models import Instance, Pattern, Verdict, VerifyMethod, ZmColoring
from .utils.log import get_logger
from .utils.parallel import chunk_ranges, ordered_map

logger = get_logger(__name__)

_BIG = np.iinfo(np.int64).max
_STAR_RE = re.compile(r"^\*[*\-]*\*$")


def pattern_from_k(k: int) -> Pattern:
    """The k-AP pattern {0, 1, ..., k-1}."""
    if k < 3:
        raise PatternError(f"k must be at least 3, got {k}")
    return Pattern(offsets=tuple(range(k)))


def parse_pattern(text: str) -> Pattern:
    """Parse "0,2,3,5" (explicit offsets) or "*-**-*" (punched star notation)."""
    text = text.strip()
    if _STAR_RE.match(text):
        offsets = tuple(i for i, ch in enumerate(text) if ch == "*")
    else:
        try:
            offsets = tuple(int(tok) for tok in re.split(r"[,\s]+", text) if tok)
        except ValueError:
            raise PatternError(f"cannot parse pattern {text!r}: offsets must be integers")
    try:
        return Pattern(offsets=offsets)
    except ValidationError as e:
        raise PatternError(f"invalid pattern {text!r}: {e.errors()[0]['msg']}")


def instance_elements(pattern: Pattern, a: int, d: int, modulus: int) -> tuple[int, ...]:
    """Residues (a + o*d) mod m for every offset o, in offset order."""
    return Instance(a=a, d=d).elements(pattern, modulus)


def mono_block(cells: np.ndarray, offsets: Sequence[int], ds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Monochromatic mask for every (d in ds, a in Z_m).

    Returns (mask, top): mask[i, a] is True when the non-wildcard elements of
    instance (a, ds[i]) share one color (vacuously when all are wildcards);
    top[i, a] is that color, or -1 when every element is a wildcard.
    """
    m = cells.shape[0]
    a = np.arange(m, dtype=np.int64)
    ds = np.asarray(ds, dtype=np.int64)
    hi = np.full((ds.shape[0], m), -1, dtype=np.int64)
    lo = np.full((ds.shape[0], m), _BIG, dtype=np.int64)
    for o in offsets:
        shift = (o * ds) % m
        vals = cells[(a[None, :] + shift[:, None]) % m]
        np.maximum(hi, vals, out=hi)
        np.minimum(lo, np.where(vals < 0, _BIG, vals), out=lo)
    return (hi < 0) | (lo == hi), hi


def _first_witness(cells: np.ndarray, offsets: Sequence[int], d_lo: int, d_hi: int) -> Optional[tuple[int, int, int]]:
    mask, top = mono_block(cells, offsets, np.arange(d_lo, d_hi))
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        return None
    row, a = divmod(int(flat[0]), cells.shape[0])
    return d_lo + row, a, int(top[row, a])


def verify_zm(coloring: ZmColoring, pattern: Pattern, jobs: int = 1) -> Verdict:
    """Brute-force avoidance check over every instance with d != 0.

    On failure the witness is the first violating instance ordered by d,
    then a. With jobs > 1 the d-range is split across threads and the
    smallest candidate wins, so the verdict does not depend on `jobs`.
    """
    m = coloring.modulus
    cells = coloring.array
    rows = max(1, VERIFY_CHUNK_CELLS // max(m, 1))
    chunks = list(chunk_ranges(1, m, rows))

    found = None
    batch = max(1, jobs)
    for i in range(0, len(chunks), batch):
        group = chunks[i:i + batch]
        results = ordered_map(lambda ch: _first_witness(cells, pattern.offsets, *ch), group, jobs)
        found = next((res for res in results if res is not None), None)
        if found is not None:
            break

    if found is None:
        return Verdict(passed=True, modulus=m, pattern=pattern, method=VerifyMethod.BRUTE)
    d, a, top = found
    logger.debug(f"[Verify] m={m} {pattern.label()} fails at a={a} d={d}")
    return Verdict(
        passed=False,
        modulus=m,
        pattern=pattern,
        method=VerifyMethod.BRUTE,
        witness=Instance(a=a, d=d),
        color=None if top < 0 else top,
    )


def dilate(coloring: ZmColoring, u: int) -> ZmColoring:
    """cells'[x] = cells[u*x mod m]; u must be a unit mod m."""
    m = coloring.modulus
    if math.gcd(u, m) != 1:
        raise PreconditionError(f"dilation factor {u} is not a unit mod {m}")
    idx = (np.arange(m, dtype=np.int64) * (u % m)) % m
    return ZmColoring.from_array(coloring.array[idx], coloring.color_count)


def relabel(coloring: ZmColoring, sigma: Sequence[int]) -> ZmColoring:
    """Apply the color permutation old -> sigma[old]; wildcards stay wildcards."""
    if sorted(sigma) != list(range(coloring.color_count)):
        raise PreconditionError(f"{list(sigma)} is not a permutation of {coloring.color_count} colors")
    cells = tuple(None if c is None else sigma[c] for c in coloring.cells)
    return ZmColoring(modulus=coloring.modulus, color_count=coloring.color_count, cells=cells)


def witness_is_monochromatic(coloring: ZmColoring, pattern: Pattern, witness: Instance) -> bool:
    """Re-evaluate a witness: all non-wildcard elements carry one color."""
    colors = {
        coloring.cells[x]
        for x in witness.elements(pattern, coloring.modulus)
        if coloring.cells[x] is not None
    }
    return witness.d % coloring.modulus != 0 and len(colors) <= 1
