"""
Discovery engine: prime sweeps over r-th power coset colorings, exhaustive
enumeration of small Z_m colorings, and the product (tensor) construction.
"""
import threading
from typing import Optional

import numpy as np

from ..config import ENUMERATION_BUDGET
from .errors import LimitExceededError, PreconditionError
from .models import ModulusDiagnostic, Pattern, SearchReport, ZmColoring
from .residue import coset_label_array, fast_scan
from .utils.log import get_logger
from .utils.parallel import ordered_map
from .zm import verify_zm

logger = get_logger(__name__)


def sieve_primes(bound: int) -> np.ndarray:
    """All primes <= bound, ascending."""
    if bound < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(bound + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, int(bound**0.5) + 1):
        if flags[q]:
            flags[q * q::q] = False
    return np.flatnonzero(flags).astype(np.int64)


def candidate_primes(r: int, bound: int) -> list[int]:
    """Odd primes q <= bound with r | q - 1."""
    primes = sieve_primes(bound)
    return [int(q) for q in primes[(primes > 2) & ((primes - 1) % r == 0)].tolist()]


def search_primes(r: int, pattern: Pattern, bound: int, jobs: int = 1) -> SearchReport:
    """Every prime q <= bound whose r-coset coloring avoids `pattern`.

    Work items are single primes; each worker thread reuses one scratch
    label buffer. Results are merged in ascending prime order.
    """
    if r < 2:
        raise PreconditionError(f"r must be >= 2, got {r}")
    if bound < 3:
        raise PreconditionError(f"bound must be >= 3, got {bound}")

    primes = candidate_primes(r, bound)
    logger.info(f"[Search] r={r} {pattern.label()} bound={bound}: {len(primes)} candidate primes")

    scratch = threading.local()

    def _examine(q: int) -> ModulusDiagnostic:
        buf = getattr(scratch, "labels", None)
        if buf is None:
            buf = np.empty(bound + 1, dtype=np.int64)
            scratch.labels = buf
        cells = coset_label_array(q, r, out=buf)
        passed, run, witness, _ = fast_scan(cells, r, pattern)
        if passed:
            logger.debug(f"[Search] q={q} passes (run {run})")
        return ModulusDiagnostic(modulus=q, passed=passed, longest_run=run, witness=witness)

    diagnostics = ordered_map(_examine, primes, jobs)
    passing = tuple(d.modulus for d in diagnostics if d.passed)
    best = passing[-1] if passing else None
    logger.info(f"[Search] {len(passing)} passing, best={best}")
    return SearchReport(
        r=r,
        pattern=pattern,
        bound=bound,
        passing=passing,
        best=best,
        diagnostics=tuple(diagnostics),
    )


def _instance_sets(m: int, pattern: Pattern, skip_zero: bool) -> Optional[list[list[tuple[int, ...]]]]:
    """Distinct element sets of nontrivial instances, bucketed by their largest element.

    Returns None when some instance has at most one constrained cell, which
    makes it monochromatic under every coloring.
    """
    seen: set[frozenset[int]] = set()
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    for d in range(1, m):
        for a in range(m):
            elems = frozenset((a + o * d) % m for o in pattern.offsets)
            if skip_zero:
                elems = elems - {0}
            if len(elems) <= 1:
                return None
            if elems in seen:
                continue
            seen.add(elems)
            ordered = tuple(sorted(elems))
            buckets[ordered[-1]].append(ordered)
    return buckets


def search_zm_exhaustive(
    m: int,
    r: int,
    pattern: Pattern,
    wildcard_zero: bool = False,
    budget: int = ENUMERATION_BUDGET,
) -> list[ZmColoring]:
    """All pattern-avoiding r-colorings of Z_m, one per color-permutation class.

    Each class is represented by its lexicographically least member, which
    is the restricted-growth labelling: the first colored cell gets 0 and
    every cell reuses a color or opens the next unused one. Depth-first,
    cell by cell; an instance is checked as soon as its largest cell is set.
    """
    if m < 1 or r < 1:
        raise PreconditionError(f"need m >= 1 and r >= 1, got m={m}, r={r}")
    size = r ** (m - 1)
    if size > budget:
        raise LimitExceededError("enumeration size r^(m-1)", size, budget)

    buckets = _instance_sets(m, pattern, wildcard_zero)
    if buckets is None:
        logger.info(f"[Enumerate] Z_{m}: some instance is forced monochromatic, nothing to search")
        return []

    cells: list[int] = [-1] * m
    first = 1 if wildcard_zero else 0
    found: list[ZmColoring] = []

    def _consistent(x: int) -> bool:
        for elems in buckets[x]:
            colors = {cells[e] for e in elems if cells[e] >= 0}
            if len(colors) <= 1:
                return False
        return True

    def _descend(x: int, used: int) -> None:
        if x == m:
            found.append(ZmColoring.from_array(np.asarray(cells, dtype=np.int64), r))
            return
        for color in range(min(used + 1, r)):
            cells[x] = color
            if _consistent(x):
                _descend(x + 1, max(used, color + 1))
        cells[x] = -1

    if first == m:
        # Z_1 with its only cell wildcard: no nontrivial instance
        found.append(ZmColoring(modulus=m, color_count=r, cells=(None,)))
    else:
        _descend(first, 0)

    logger.info(f"[Enumerate] Z_{m}, r={r}, {pattern.label()}: {len(found)} classes")
    return found


def tensor(first: ZmColoring, second: ZmColoring, pattern: Optional[Pattern] = None) -> ZmColoring:
    """Product coloring of Z_{m1*m2} with r1*r2 colors.

    z = x*m2 + y gets color c1(x)*r2 + c2(y), where each input has its cell 0
    fixed to color 0; cell 0 of the product is the wildcard. When `pattern`
    is given both inputs must avoid it.
    """
    for name, c in (("first", first), ("second", second)):
        if not c.wildcard_only_at_zero:
            raise PreconditionError(
                f"{name} coloring must have its only wildcard at 0, found wildcards at {list(c.wildcards)}"
            )
    if pattern is not None:
        for c in (first, second):
            verdict = verify_zm(c, pattern)
            if not verdict.passed:
                raise PreconditionError(
                    f"Z_{c.modulus} coloring does not avoid {pattern.label()}: {verdict.describe()}",
                    verdict=verdict,
                )

    r2 = second.color_count
    left = first.fix_wildcards(0).array
    right = second.fix_wildcards(0).array
    cells = (left[:, None] * r2 + right[None, :]).ravel()
    cells[0] = -1
    return ZmColoring.from_array(cells, first.color_count * r2)
