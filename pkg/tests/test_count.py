from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config import BLOCK_SIZES_3AP
from src.core.count import (
    average_over_colorings,
    count_cyclic,
    count_line,
    empirical_coefficient,
    exhaustive_average,
    total_instances,
)
from src.core.errors import LimitExceededError, PreconditionError
from src.core.line import PeriodicColoring, SolidColoring, UnrolledColoring, blocks_coloring
from src.core.models import ZmColoring
from src.core.zm import parse_pattern, pattern_from_k, relabel


def naive_count(colors, pattern):
    """colors[l-1] is the color of l."""
    n = len(colors)
    total = 0
    for d in range(1, n):
        for a in range(1, n - pattern.span * d + 1):
            if len({colors[a + o * d - 1] for o in pattern.offsets}) == 1:
                total += 1
    return total


def naive_total(n, pattern):
    return sum(max(0, n - pattern.span * d) for d in range(1, n + 1))


class TestTotals:
    def test_small_values(self, k3, k4):
        assert total_instances(8, k3) == 12
        assert total_instances(3, k3) == 1
        assert total_instances(2, k3) == 0
        assert total_instances(0, k4) == 0

    def test_matches_direct_sum(self, k3, k4, punched):
        for p in (k3, k4, punched):
            for n in range(0, 60):
                assert total_instances(n, p) == naive_total(n, p)

    def test_solid_line_hits_every_instance(self, k3):
        assert count_line(SolidColoring(), 50, k3).count == total_instances(50, k3)

    def test_two_colors_miss_some_instance(self, qr11, k3):
        periodic = PeriodicColoring(base=ZmColoring(modulus=2, color_count=2, cells=(0, 1)))
        unrolled = UnrolledColoring(base=qr11)
        for n in range(3, 120):
            assert count_line(periodic, n, k3).count < total_instances(n, k3)
            assert count_line(unrolled, n, k3).count < total_instances(n, k3)

    def test_close_to_half_n_squared_over_span(self, k3, k4, punched):
        for p in (k3, k4, punched):
            for n in range(0, 500):
                assert abs(total_instances(n, p) - Fraction(n * n, 2 * p.span)) <= n


class TestCountLine:
    def test_periodic_two_blocks(self, k3):
        base = ZmColoring(modulus=4, color_count=2, cells=(0, 0, 1, 1))
        assert count_line(PeriodicColoring(base=base), 12, k3).count == 4

    def test_matches_naive_on_unrolled(self, qr11, k3, k4, punched):
        line = UnrolledColoring(base=qr11)
        colors = line.materialize(400).tolist()
        for p in (k3, k4, punched):
            assert count_line(line, 400, p).count == naive_count(colors, p)

    def test_jobs_and_chunking_do_not_change_counts(self, qr11, k4, monkeypatch):
        line = UnrolledColoring(base=qr11)
        expected = count_line(line, 3000, k4).count
        monkeypatch.setattr("src.core.count.COUNT_CHUNK_D", 7)
        assert count_line(line, 3000, k4, jobs=1).count == expected
        assert count_line(line, 3000, k4, jobs=8).count == expected

    def test_unrolling_recursion(self, qr11, k4):
        # a monochromatic instance either lives on multiples of 11 or has 11 | d and 11 does not divide a
        line = UnrolledColoring(base=qr11)
        m = 11
        for n in (50, 121, 500, 1331, 2000):
            fresh = sum(
                1
                for d in range(m, n, m)
                for a in range(1, n - 3 * d + 1)
                if a % m != 0
            )
            assert count_line(line, n, k4).count == count_line(line, n // m, k4).count + fresh

    def test_unrolling_recursion_at_eleven_to_the_fourth(self, qr11, k4):
        line = UnrolledColoring(base=qr11)
        m, n = 11, 11**4
        # a in [1, n - 3d] not divisible by m, closed form per d
        fresh = sum((n - 3 * d) - (n - 3 * d) // m for d in range(m, n, m) if n - 3 * d > 0)
        residual = count_line(line, n, k4).count - count_line(line, n // m, k4).count - fresh
        assert residual == 0

    def test_monotone_in_n(self, qr11, k3, k4):
        line = UnrolledColoring(base=qr11)
        for p in (k3, k4):
            counts = [r.count for r in empirical_coefficient(line, p, range(1, 301))]
            assert all(a <= b for a, b in zip(counts, counts[1:]))

    def test_relabeling_colors_keeps_count(self, qr11, qr13, k4, punched):
        for base, p in ((qr11, k4), (qr13, punched)):
            swapped = relabel(base, [1, 0])
            assert swapped != base
            for n in (100, 1000):
                assert count_line(UnrolledColoring(base=swapped), n, p).count == count_line(UnrolledColoring(base=base), n, p).count

    def test_result_ratio(self, qr11, k4):
        res = count_line(UnrolledColoring(base=qr11), 1000, k4)
        assert res.ratio == Fraction(res.count, 10**6)
        out = res.to_output()
        assert "elapsed_ms" not in out
        assert out["ratio_numerator"] * 10**6 == out["count"] * out["ratio_denominator"]
        assert "elapsed_ms" in res.to_output(timing=True)

    def test_limits(self, k3, monkeypatch):
        with pytest.raises(PreconditionError):
            count_line(SolidColoring(), 0, k3)
        monkeypatch.setattr("src.core.count.LINE_MAX_N", 100)
        with pytest.raises(LimitExceededError):
            count_line(SolidColoring(), 101, k3)

    def test_empirical_coefficient(self, qr11, k4):
        line = UnrolledColoring(base=qr11)
        results = empirical_coefficient(line, k4, [100, 500, 1000])
        assert [r.n for r in results] == [100, 500, 1000]
        assert [r.count for r in results] == [count_line(line, n, k4).count for n in (100, 500, 1000)]
        with pytest.raises(PreconditionError):
            empirical_coefficient(line, k4, [500, 100])


@pytest.mark.property_based
@given(
    st.lists(st.integers(1, 9), min_size=1, max_size=6),
    st.integers(1, 70),
    st.sampled_from(["0,1,2", "0,1,2,3", "0,2,3,5", "0,1,3"]),
)
@settings(max_examples=150, deadline=None)
def test_block_counts_match_naive(sizes, n, text):
    pattern = parse_pattern(text)
    colors = tuple(i % 3 for i in range(len(sizes)))
    line = blocks_coloring(sizes, colors, n)
    assert count_line(line, n, pattern).count == naive_count(line.materialize(n).tolist(), pattern)


class TestCyclic:
    def test_solid(self, k3):
        c = ZmColoring(modulus=5, color_count=1, cells=(0,) * 5)
        assert count_cyclic(c, k3) == 20

    def test_avoiding_and_degenerate(self, k3):
        assert count_cyclic(ZmColoring(modulus=4, color_count=2, cells=(0, 0, 1, 1)), k3) == 0
        assert count_cyclic(ZmColoring(modulus=4, color_count=2, cells=(0, 1, 0, 1)), k3) == 4

    def test_wildcards_rejected(self, qr11, k3):
        with pytest.raises(PreconditionError):
            count_cyclic(qr11, k3)
        assert count_cyclic(qr11.fix_wildcards(0), k3) > 0

    def test_quadratic_residues_mod_5(self, qr5, k3):
        # cells 0 0 1 1 0: only (4, 0, 1) and its reverse
        assert count_cyclic(qr5.fix_wildcards(0), k3) == 2


class TestAveraging:
    def test_two_colorings_of_eight(self, k3):
        assert average_over_colorings(8, 2, k3) == 3
        assert exhaustive_average(8, 2, k3) == 3

    def test_exhaustive_matches_formula_two_colors(self, k3, punched):
        for n in range(0, 13):
            assert exhaustive_average(n, 2, k3) == Fraction(total_instances(n, k3), 4)
            assert exhaustive_average(n, 2, punched) == average_over_colorings(n, 2, punched)

    def test_exhaustive_matches_formula_three_colors(self, k3, k4):
        for n in range(0, 13):
            assert exhaustive_average(n, 3, k3) == average_over_colorings(n, 3, k3)
            assert exhaustive_average(n, 3, k4) == average_over_colorings(n, 3, k4)

    def test_exhaustive_limit(self, k3):
        with pytest.raises(LimitExceededError):
            exhaustive_average(21, 2, k3)


@pytest.mark.slow
def test_unrolled_mod_11_approaches_one_seventy_second(qr11, k4):
    res = count_line(UnrolledColoring(base=qr11), 10**5, k4)
    assert abs(res.ratio - Fraction(1, 72)) <= Fraction(3, 10000)


@pytest.mark.slow
def test_twelve_blocks_approach_known_coefficient():
    line = blocks_coloring(BLOCK_SIZES_3AP, tuple(i % 2 for i in range(12)), 54800)
    res = count_line(line, 54800, pattern_from_k(3))
    assert abs(res.ratio - Fraction(117, 2192)) <= Fraction(1, 1000)


@pytest.mark.slow
def test_count_output_independent_of_jobs(qr11, k4):
    line = UnrolledColoring(base=qr11)
    a = count_line(line, 10**5, k4, jobs=1)
    b = count_line(line, 10**5, k4, jobs=8)
    assert a.to_output() == b.to_output()
