"""
Number-theoretic machinery: primality, primitive roots, r-th power coset
labels and the d^{-1}-normalized avoidance test for prime moduli.

For a coset coloring of Z_p, multiplying an instance by the inverse of its
common difference permutes the color classes and fixes 0, so every
nontrivial instance is equivalent to a translate (b, d=1). Avoidance then
reduces to a single O(p * size) scan, and for k-APs to the longest run of
one color (wildcards counting for every color).
"""
import math
from typing import Optional

import numpy as np

from .errors import LimitExceededError, PreconditionError
from .models import CosetLabels, Instance, Pattern, Verdict, VerifyMethod, ZmColoring, WILDCARD_CODE
from .utils.log import get_logger
from .zm import mono_block

logger = get_logger(__name__)

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# g^i * g^j products must stay below 2^63
MAX_SWEEP_PRIME = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; sympy stays out of the library as the test oracle."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending (trial division)."""
    factors = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            factors.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")


def primitive_root(p: int) -> int:
    """Smallest generator of Z_p^*, by the (p-1)/q power test; sympy is the test oracle."""
    _require_odd_prime(p)
    exponents = [(p - 1) // q for q in prime_factors(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in exponents):
            return g
    raise AssertionError(f"no primitive root found for prime {p}")


def coset_label_array(p: int, r: int, out: Optional[np.ndarray] = None) -> np.ndarray:
    """labels[x] = log_g(x) mod r for x != 0, labels[0] = -1.

    One generator sweep g^0, g^1, ..., g^{p-2}, evaluated in baby-step /
    giant-step blocks so every product fits in 64 bits. When `out` has room
    for p cells it is reused and a view of its first p cells is returned.
    """
    _require_odd_prime(p)
    if r < 1 or (p - 1) % r != 0:
        raise PreconditionError(f"r={r} does not divide p-1={p - 1}")
    if p >= MAX_SWEEP_PRIME:
        raise LimitExceededError("coset sweep modulus", p, MAX_SWEEP_PRIME - 1)

    g = primitive_root(p)
    order = p - 1
    block = math.isqrt(order) + 1

    baby = np.empty(block, dtype=np.int64)
    x = 1
    for j in range(block):
        baby[j] = x
        x = x * g % p
    step = x  # g^block
    rows = -(-order // block)
    giant = np.empty(rows, dtype=np.int64)
    y = 1
    for i in range(rows):
        giant[i] = y
        y = y * step % p

    powers = ((giant[:, None] * baby[None, :]) % p).ravel()[:order]

    labels = out[:p] if out is not None and out.shape[0] >= p else np.empty(p, dtype=np.int64)
    labels[powers] = np.arange(order, dtype=np.int64) % r
    labels[0] = WILDCARD_CODE
    return labels


def coset_labels(p: int, r: int) -> CosetLabels:
    arr = coset_label_array(p, r)
    labels = (None,) + tuple(int(v) for v in arr[1:].tolist())
    return CosetLabels(p=p, r=r, generator=primitive_root(p), labels=labels)


def residue_coloring(p: int, r: int) -> ZmColoring:
    """Color x != 0 by its r-th power coset; 0 is the wildcard."""
    return ZmColoring.from_array(coset_label_array(p, r), r)


def _longest_circular_run(ok: np.ndarray) -> int:
    m = ok.shape[0]
    if ok.all():
        return m
    if not ok.any():
        return 0
    # rotate so index 0 is a break; no run can then wrap past the end
    rot = np.roll(ok, -int(np.argmin(ok)))
    edges = np.diff(np.concatenate(([0], rot.astype(np.int8), [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max())


def longest_wild_run_array(cells: np.ndarray, color_count: int) -> int:
    wild = cells < 0
    best = 0
    for t in range(color_count):
        best = max(best, _longest_circular_run(wild | (cells == t)))
        if best == cells.shape[0]:
            break
    return best


def longest_wild_run(coloring: ZmColoring) -> int:
    """Longest circular run of cells in {t, wildcard} over all colors t, capped at m."""
    return longest_wild_run_array(coloring.array, coloring.color_count)


def fast_scan(cells: np.ndarray, color_count: int, pattern: Pattern) -> tuple[bool, int, Optional[Instance], Optional[int]]:
    """Normalized scan on a raw label array: (passed, longest_run, witness, color)."""
    m = cells.shape[0]
    run = longest_wild_run_array(cells, color_count)
    if pattern.is_progression and run < pattern.size and run < m:
        return True, run, None, None

    mask, top = mono_block(cells, pattern.offsets, np.ones(1, dtype=np.int64))
    hits = np.flatnonzero(mask[0])
    if hits.size == 0:
        return True, run, None, None
    b = int(hits[0])
    color = int(top[0, b])
    return False, run, Instance(a=b, d=1), (None if color < 0 else color)


def fast_verdict(coloring: ZmColoring, pattern: Pattern) -> Verdict:
    """Avoidance verdict for a coset coloring of a prime modulus.

    The caller asserts the coloring is a coset coloring (built by
    `residue_coloring`); only primality is checked here.
    """
    m = coloring.modulus
    if not is_prime(m):
        raise PreconditionError(f"fast verification needs a prime modulus, got {m}")
    passed, run, witness, color = fast_scan(coloring.array, coloring.color_count, pattern)
    logger.debug(f"[Residue] p={m} {pattern.label()} run={run} -> {'pass' if passed else 'fail'}")
    return Verdict(
        passed=passed,
        modulus=m,
        pattern=pattern,
        method=VerifyMethod.FAST,
        witness=witness,
        color=color,
    )
