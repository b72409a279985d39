import numpy as np
import pytest
from sympy import isprime, legendre_symbol
from sympy.ntheory import primitive_root as sympy_primitive_root

from src.core.errors import PreconditionError
from src.core.models import Instance, VerifyMethod, ZmColoring
from src.core.residue import (
    coset_label_array,
    coset_labels,
    fast_verdict,
    is_prime,
    longest_wild_run,
    primitive_root,
    residue_coloring,
)
from src.core.zm import parse_pattern, pattern_from_k, verify_zm


def test_is_prime_matches_sympy():
    for n in range(0, 2000):
        assert is_prime(n) == isprime(n), n


@pytest.mark.parametrize("n", [463747, 1091339, 608789, 2**61 - 1])
def test_is_prime_large(n):
    assert is_prime(n)


def test_is_prime_rejects_carmichael_and_squares():
    assert not is_prime(561)
    assert not is_prime(139 * 139)
    assert not is_prime(1)


@pytest.mark.parametrize("p, g", [(11, 2), (7, 3), (3, 2), (13, 2)])
def test_primitive_root_examples(p, g):
    assert primitive_root(p) == g


def test_primitive_root_matches_sympy():
    for p in range(3, 1000):
        if isprime(p):
            assert primitive_root(p) == sympy_primitive_root(p)


@pytest.mark.parametrize("p", [1, 2, 9, 15])
def test_primitive_root_needs_odd_prime(p):
    with pytest.raises(PreconditionError):
        primitive_root(p)


def test_quadratic_classes_mod_11():
    labels = coset_labels(11, 2)
    assert labels.members(0) == (1, 3, 4, 5, 9)
    assert labels.labels[0] is None
    assert labels.generator == 2


def test_cubic_classes_mod_7():
    assert coset_labels(7, 3).members(0) == (1, 6)


def test_index_one_subgroup():
    labels = coset_labels(13, 1)
    assert labels.members(0) == tuple(range(1, 13))


def test_r_must_divide_p_minus_1():
    with pytest.raises(PreconditionError):
        coset_labels(11, 3)


@pytest.mark.parametrize("p", [101, 103, 139, 617, 1777])
def test_label_zero_is_the_subgroup_of_powers(p):
    for r in (2, 3, 6):
        if (p - 1) % r:
            continue
        labels = coset_label_array(p, r)
        powers = {pow(x, r, p) for x in range(1, p)}
        assert set(np.flatnonzero(labels == 0).tolist()) == powers
        counts = np.bincount(labels[1:], minlength=r)
        assert (counts == (p - 1) // r).all()
        assert labels[1] == 0


def test_quadratic_labels_follow_euler_criterion():
    for p in (5, 11, 13, 97, 1009):
        labels = coset_label_array(p, 2)
        for x in range(1, p):
            assert (labels[x] == 0) == (legendre_symbol(x, p) == 1)


def test_scratch_buffer_reused():
    buf = np.full(200, 7, dtype=np.int64)
    view = coset_label_array(11, 2, out=buf)
    assert np.shares_memory(view, buf)
    assert view.tolist() == coset_label_array(11, 2).tolist()


def test_longest_runs(qr11, qr13):
    assert longest_wild_run(qr11) == 3
    assert longest_wild_run(qr13) == 4


def test_longest_run_edge_cases():
    assert longest_wild_run(ZmColoring(modulus=6, color_count=2, cells=(None,) * 6)) == 6
    assert longest_wild_run(ZmColoring(modulus=5, color_count=2, cells=(1,) * 5)) == 5
    # cells: wildcard, 0, 1
    assert longest_wild_run(residue_coloring(3, 2)) == 2


class TestFastVerdict:
    def test_quadratic_residues_mod_11_avoid_four_aps(self, qr11, k4):
        verdict = fast_verdict(qr11, k4)
        assert verdict.passed
        assert verdict.method == VerifyMethod.FAST

    def test_failure_matches_brute_witness(self, qr13, k4):
        verdict = fast_verdict(qr13, k4)
        assert not verdict.passed
        assert verdict.witness == Instance(a=5, d=1)
        assert verdict.color == 1

    def test_punched_pattern_mod_13(self, qr13, punched):
        assert fast_verdict(qr13, punched).passed
        assert verify_zm(qr13, punched).passed

    def test_composite_rejected(self, k3):
        c = ZmColoring(modulus=12, color_count=2, cells=(None,) + (0, 1) * 5 + (0,))
        with pytest.raises(PreconditionError):
            fast_verdict(c, k3)

    def test_cubic_residues_always_fail_3aps(self, k3):
        # -1, 0 and 1 are all cubes
        for p in (7, 13, 19, 31, 37, 43):
            assert not fast_verdict(residue_coloring(p, 3), k3).passed


def test_fast_agrees_with_brute_for_small_primes():
    patterns = [pattern_from_k(k) for k in range(3, 9)] + [parse_pattern("0,2,3,5")]
    disagreements = []
    for p in range(3, 301):
        if not isprime(p):
            continue
        for r in (2, 3, 4, 6):
            if (p - 1) % r:
                continue
            c = residue_coloring(p, r)
            for pat in patterns:
                fast, brute = fast_verdict(c, pat), verify_zm(c, pat)
                if (fast.passed, fast.witness, fast.color) != (brute.passed, brute.witness, brute.color):
                    disagreements.append((p, r, pat.offsets))
    assert disagreements == []
