import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from sympy import isprime

from src.core.errors import LimitExceededError, PreconditionError
from src.core.line import periodic_coefficient, random_coefficient
from src.core.models import ZmColoring
from src.core.residue import residue_coloring
from src.core.search import candidate_primes, search_primes, search_zm_exhaustive, sieve_primes, tensor
from src.core.zm import pattern_from_k, relabel, verify_zm


def test_sieve_matches_sympy():
    assert sieve_primes(500).tolist() == [q for q in range(500) if isprime(q)]
    assert sieve_primes(1).tolist() == []


def test_candidates_respect_r():
    assert candidate_primes(3, 50) == [7, 13, 19, 31, 37, 43]
    assert 2 not in candidate_primes(2, 10)


class TestPrimeSweep:
    def test_four_aps_two_colors(self, k4):
        report = search_primes(2, k4, 100)
        assert report.passing == (3, 5, 7, 11)
        assert report.best == 11
        assert report.examined == len(candidate_primes(2, 100))

    def test_five_aps_two_colors(self):
        assert search_primes(2, pattern_from_k(5), 200).best == 37

    def test_cubic_residues_never_work(self, k3):
        report = search_primes(3, k3, 1000)
        assert report.passing == ()
        assert report.best is None

    def test_passing_moduli_reverify_by_brute_force(self):
        for k, r in ((4, 2), (5, 2), (3, 4), (4, 3)):
            p = pattern_from_k(k)
            for q in search_primes(r, p, 300).passing:
                assert verify_zm(residue_coloring(q, r), p).passed, (k, r, q)

    def test_diagnostics_carry_witnesses(self, k4):
        report = search_primes(2, k4, 30)
        by_q = {d.modulus: d for d in report.diagnostics}
        assert by_q[13].witness.a == 5 and by_q[13].witness.d == 1
        assert by_q[13].longest_run == 4
        assert by_q[11].witness is None

    def test_worker_count_does_not_matter(self, k4):
        assert search_primes(2, k4, 2000, jobs=1) == search_primes(2, k4, 2000, jobs=6)

    @pytest.mark.parametrize("r, bound", [(1, 100), (2, 2)])
    def test_preconditions(self, k4, r, bound):
        with pytest.raises(PreconditionError):
            search_primes(r, k4, bound)


@pytest.mark.slow
@pytest.mark.parametrize("k, best", [(4, 11), (5, 37), (6, 139)])
def test_desk_scale_maximality(k, best):
    report = search_primes(2, pattern_from_k(k), 10**4)
    assert report.best == best
    assert report == search_primes(2, pattern_from_k(k), 10**4, jobs=8)


class TestExhaustive:
    def test_two_blocks_of_z4(self, k3):
        found = search_zm_exhaustive(4, 2, k3)
        assert ZmColoring(modulus=4, color_count=2, cells=(0, 0, 1, 1)) in found

    def test_z5_has_none(self, k3):
        assert search_zm_exhaustive(5, 2, k3) == []

    def test_z12_three_colorings(self, k3):
        found = search_zm_exhaustive(12, 3, k3)
        assert found
        for c in found:
            assert verify_zm(c, k3).passed
            assert periodic_coefficient(c, k3) == Fraction(1, 48)
            assert periodic_coefficient(c, k3) / random_coefficient(3, k3) == Fraction(3, 4)

    def test_one_representative_per_permutation_class(self, k3):
        found = search_zm_exhaustive(12, 3, k3)
        seen = set(found)
        assert len(seen) == len(found)
        for c in found:
            for sigma in itertools.permutations(range(3)):
                other = relabel(c, sigma)
                assert other == c or other not in seen
                assert tuple(-1 if x is None else x for x in c.cells) <= tuple(
                    -1 if x is None else x for x in other.cells
                )

    def test_matches_plain_enumeration(self, k3):
        # every avoiding coloring of Z_7 with 2 colors, grouped by permutation class
        brute = set()
        for cells in itertools.product(range(2), repeat=7):
            c = ZmColoring(modulus=7, color_count=2, cells=cells)
            if verify_zm(c, k3).passed:
                brute.add(min(cells, relabel(c, [1, 0]).cells))
        assert {c.cells for c in search_zm_exhaustive(7, 2, k3)} == brute

    def test_wildcard_zero(self, punched):
        found = search_zm_exhaustive(13, 2, punched, wildcard_zero=True)
        assert residue_coloring(13, 2) in found
        assert all(c.cells[0] is None for c in found)

    def test_budget(self, k3):
        with pytest.raises(LimitExceededError) as info:
            search_zm_exhaustive(30, 3, k3)
        assert info.value.size == 3**29
        with pytest.raises(LimitExceededError):
            search_zm_exhaustive(12, 3, k3, budget=1000)


class TestTensor:
    def test_qr11_squared(self, qr11, k4):
        product = tensor(qr11, qr11, k4)
        assert product.modulus == 121
        assert product.color_count == 4
        assert product.wildcards == (0,)
        assert verify_zm(product, k4).passed

    def test_all_small_pairs(self, qr5, qr7, qr11, k4):
        for a, b in itertools.product((qr5, qr7, qr11), repeat=2):
            assert verify_zm(tensor(a, b), k4).passed

    def test_pair_encoding(self, qr5, qr7):
        product = tensor(qr5, qr7)
        first, second = qr5.fix_wildcards(0), qr7.fix_wildcards(0)
        for z in range(1, 35):
            x, y = divmod(z, 7)
            assert product.cells[z] == first.cells[x] * 2 + second.cells[y]

    def test_trivial_second_factor(self, qr11, k4):
        one = ZmColoring(modulus=1, color_count=1, cells=(None,))
        product = tensor(qr11, one)
        assert product == qr11
        assert verify_zm(product, k4) == verify_zm(qr11, k4)

    def test_projection_to_second_factor(self, qr5, qr7, k4):
        # any monochromatic instance of the product projects to one in the second factor
        product = tensor(qr5, qr7).fix_wildcards(0)
        second = qr7.fix_wildcards(0)
        rnd = random.Random(5)
        cells = np.asarray(product.cells)
        for _ in range(2000):
            a, d = rnd.randrange(35), rnd.randrange(1, 35)
            zs = [(a + o * d) % 35 for o in k4.offsets]
            if len(set(cells[zs].tolist())) == 1:
                assert len({second.cells[z % 7] for z in zs}) == 1

    def test_preconditions(self, qr11, qr13, k4):
        with pytest.raises(PreconditionError):
            tensor(qr11, ZmColoring(modulus=4, color_count=2, cells=(0, 0, 1, 1)))
        with pytest.raises(PreconditionError) as info:
            tensor(qr11, qr13, k4)
        assert info.value.exit_code == 1
