"""
Best-known moduli for r-colorings of Z_m without k-term progressions, and
their re-verification.

Plain entries are primes whose r-th power coset coloring avoids k-APs.
Product entries are certified by their two components through the tensor
construction instead of a scan over m cells.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from ..config import BRUTE_CONFIRM_LIMIT, TABLE_DEFAULT_LIMIT
from .line import percent_vs_random
from .models import Verdict, decimal_text, truncated_text
from .residue import fast_verdict, residue_coloring
from .search import tensor
from .utils.log import get_logger
from .zm import pattern_from_k, verify_zm

logger = get_logger(__name__)


class TableStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    PASS_BY_TENSOR = "pass-by-tensor"
    SKIPPED = "skipped"


class PercentMatch(str, Enum):
    ROUNDED = "rounded"
    TRUNCATED = "truncated"
    MISMATCH = "mismatch"


class Component(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    r: int


class TableEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    r: int
    m: int
    printed: str
    factors: Optional[tuple[Component, Component]] = None

    @property
    def is_product(self) -> bool:
        return self.factors is not None


def _entry(k: int, r: int, m: int, printed: str) -> TableEntry:
    return TableEntry(k=k, r=r, m=m, printed=printed)


def _product(k: int, r: int, first: tuple[int, int], second: tuple[int, int], printed: str) -> TableEntry:
    a, b = Component(m=first[0], r=first[1]), Component(m=second[0], r=second[1])
    return TableEntry(k=k, r=r, m=a.m * b.m, printed=printed, factors=(a, b))


BEST_KNOWN: tuple[TableEntry, ...] = (
    _entry(3, 4, 37, "42.11"),
    _entry(3, 6, 103, "34.95"),
    _entry(4, 2, 11, "66.67"),
    _entry(4, 3, 97, "27.55"),
    _entry(4, 4, 349, "18.29"),
    _entry(4, 5, 751, "16.62"),
    _entry(4, 6, 3259, "6.63"),
    _entry(4, 7, 1933, "17.74"),
    _entry(5, 2, 37, "42.11"),
    _entry(5, 3, 241, "33.47"),
    _entry(5, 4, 2609, "9.81"),
    _entry(5, 5, 6011, "10.40"),
    _entry(5, 6, 14173, "9.14"),
    _entry(5, 7, 30493, "7.87"),
    _entry(6, 2, 139, "22.85"),
    _entry(6, 3, 1777, "13.67"),
    _product(6, 4, (139, 2), (139, 2), "5.30"),
    _entry(6, 5, 49391, "6.32"),
    _product(6, 6, (139, 2), (1777, 3), "3.15"),
    _entry(6, 7, 317969, "5.29"),
    _entry(7, 2, 617, "10.36"),
    _entry(7, 3, 7309, "9.87"),
    _product(7, 4, (617, 2), (617, 2), "1.08"),
    _entry(7, 5, 230281, "6.78"),
    _product(7, 6, (617, 2), (7309, 3), "1.03"),
    _entry(8, 2, 1069, "11.96"),
    _entry(8, 3, 34057, "6.42"),
    _product(8, 4, (1069, 2), (1069, 2), "1.43"),
    _entry(9, 2, 3389, "7.55"),
    _entry(9, 3, 116593, "5.63"),
    _entry(10, 2, 11497, "4.45"),
    _entry(10, 3, 463747, "4.24"),
    _entry(11, 2, 17863, "5.73"),
    _entry(12, 2, 58013, "3.53"),
    _entry(13, 2, 136859, "2.99"),
    _entry(14, 2, 239873, "3.41"),
    _entry(15, 2, 608789, "2.69"),
    _entry(16, 2, 1091339, "3.00"),
)


class TableRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    entry: TableEntry
    status: TableStatus
    percent: str
    percent_match: PercentMatch
    brute_confirmed: Optional[bool] = None
    verdict: Optional[Verdict] = None


class TableReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    limit: int
    rows: tuple[TableRow, ...]

    @property
    def failures(self) -> tuple[TableRow, ...]:
        return tuple(row for row in self.rows if row.status == TableStatus.FAIL)

    @property
    def all_checked_pass(self) -> bool:
        return not self.failures


def match_percent(entry: TableEntry) -> tuple[str, PercentMatch]:
    """Compare r^(k-1)/(m+1) with the printed two-decimal percentage."""
    ratio = percent_vs_random(entry.m, entry.r, pattern_from_k(entry.k)) * 100
    rounded = decimal_text(ratio, 2)
    if rounded == entry.printed:
        return rounded, PercentMatch.ROUNDED
    if truncated_text(ratio, 2) == entry.printed:
        return rounded, PercentMatch.TRUNCATED
    return rounded, PercentMatch.MISMATCH


def _check_entry(entry: TableEntry, limit: int, brute: bool) -> TableRow:
    pattern = pattern_from_k(entry.k)
    percent, match = match_percent(entry)

    if entry.factors is None:
        if entry.m > limit:
            return TableRow(entry=entry, status=TableStatus.SKIPPED, percent=percent, percent_match=match)
        coloring = residue_coloring(entry.m, entry.r)
        verdict = fast_verdict(coloring, pattern)
        confirmed = None
        if brute and entry.m <= BRUTE_CONFIRM_LIMIT:
            confirmed = verify_zm(coloring, pattern).passed
        status = TableStatus.PASS if verdict.passed else TableStatus.FAIL
        logger.info(f"[Table] k={entry.k} r={entry.r} m={entry.m}: {status.value}")
        return TableRow(
            entry=entry,
            status=status,
            percent=percent,
            percent_match=match,
            brute_confirmed=confirmed,
            verdict=verdict,
        )

    first, second = entry.factors
    if max(first.m, second.m) > limit:
        return TableRow(entry=entry, status=TableStatus.SKIPPED, percent=percent, percent_match=match)
    parts = [residue_coloring(c.m, c.r) for c in (first, second)]
    verdicts = [fast_verdict(c, pattern) for c in parts]
    failed = next((v for v in verdicts if not v.passed), None)
    confirmed = None
    if failed is None and brute and entry.m <= BRUTE_CONFIRM_LIMIT:
        confirmed = verify_zm(tensor(parts[0], parts[1]), pattern).passed
    status = TableStatus.PASS_BY_TENSOR if failed is None else TableStatus.FAIL
    logger.info(f"[Table] k={entry.k} r={entry.r} m={first.m}*{second.m}: {status.value}")
    return TableRow(
        entry=entry,
        status=status,
        percent=percent,
        percent_match=match,
        brute_confirmed=confirmed,
        verdict=failed,
    )


def table_check(limit: int = TABLE_DEFAULT_LIMIT, brute: bool = False) -> TableReport:
    """Re-verify every entry within `limit`; product entries need both components within it."""
    rows = tuple(_check_entry(entry, limit, brute) for entry in BEST_KNOWN)
    return TableReport(limit=limit, rows=rows)
