"""Equivalence of the compiled and pure-Python counting kernels."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from permdyck import _purecount, kernels
from permdyck.perms import Permutation, all_permutations, find_occurrences

rand_perm = st.integers(min_value=0, max_value=12).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_count_pair_matches_oracle_exhaustive():
    for n in range(7):
        for rho in all_permutations(n):
            expect = (
                find_occurrences(rho, "312").count if n >= 3 else 0,
                find_occurrences(rho, "321").count if n >= 3 else 0,
            )
            assert tuple(kernels.count_pair(tuple(rho))) == expect
            assert tuple(_purecount.count_pair(tuple(rho))) == expect


@settings(deadline=None, max_examples=80)
@given(rand_perm)
def test_backends_agree_random(p):
    assert tuple(kernels.count_pair(p)) == tuple(_purecount.count_pair(p))


def test_histograms_agree():
    for n in range(7):
        assert kernels.histogram_pair(n) == _purecount.histogram_pair(n)


def test_histogram_prefix_partition():
    n = 6
    full312, full321 = kernels.histogram_pair(n)
    acc312 = [0] * len(full312)
    acc321 = [0] * len(full321)
    for first in itertools.permutations(range(1, n + 1), 2):
        h312, h321 = kernels.histogram_pair(n, first)
        for i, v in enumerate(h312):
            acc312[i] += v
        for i, v in enumerate(h321):
            acc321[i] += v
    assert acc312 == list(full312) and acc321 == list(full321)


def test_histogram_prefix_agrees_across_backends():
    assert kernels.histogram_pair(5, (3,)) == _purecount.histogram_pair(5, (3,))


def test_tiny_sizes():
    import math

    for n in (0, 1, 2):
        h312, h321 = kernels.histogram_pair(n)
        assert sum(h312) == math.factorial(n)
        assert sum(h321) == math.factorial(n)
