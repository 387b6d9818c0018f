import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from charnum.combinatorics import (
    Partition,
    alpha,
    binomial,
    multinomial,
    partition_count,
    partition_index,
    partitions,
)


def pentagonal_count(n):
    """Euler's recurrence, independent of the enumerator."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def brute_partitions(n):
    """All exponent vectors (k_1..k_n) with sum r*k_r = n, by exhaustive search."""
    out = set()
    for ks in itertools.product(*(range(n // r + 1) for r in range(1, n + 1))):
        if sum(r * k for r, k in zip(range(1, n + 1), ks)) == n:
            out.add(Partition(ks))
    return out


@pytest.mark.parametrize("m, expected", [(0, 0), (3, 2), (12, 2), (1, 1), (255, 8), (2 ** 70, 1)])
def test_alpha_examples(m, expected):
    assert alpha(m) == expected


def test_alpha_rejects_negative():
    with pytest.raises(ValueError):
        alpha(-1)


@given(st.integers(min_value=0, max_value=2 ** 200))
def test_alpha_matches_binary_string(m):
    assert alpha(m) == bin(m).count("1")


@given(st.integers(min_value=0, max_value=2 ** 64), st.integers(min_value=0, max_value=2 ** 64))
def test_alpha_subadditive(a, b):
    # carries only ever merge bits
    assert alpha(a + b) <= alpha(a) + alpha(b)


def test_partitions_of_zero_is_the_empty_partition():
    assert partitions(0) == (Partition(()),)
    assert partitions(0)[0].label() == "1"


def test_partitions_of_three():
    assert [p.padded(3) for p in partitions(3)] == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]


def test_partitions_of_four_in_canonical_order():
    assert [p.label() for p in partitions(4)] == ["c1^4", "c1^2*c2", "c2^2", "c1*c3", "c4"]


@pytest.mark.parametrize("n", range(0, 13))
def test_partition_count_matches_euler_recurrence(n):
    assert len(partitions(n)) == partition_count(n) == pentagonal_count(n)


@pytest.mark.parametrize("n", range(0, 9))
def test_partitions_match_exhaustive_search(n):
    assert set(partitions(n)) == brute_partitions(n)


@pytest.mark.parametrize("n", range(0, 12))
def test_partitions_are_distinct_of_right_weight_and_sorted(n):
    ps = partitions(n)
    assert len(set(ps)) == len(ps)
    assert all(p.weight == n for p in ps)
    keys = [list(p.parts()) for p in ps]
    assert keys == sorted(keys)


def test_partition_index_inverts_the_listing():
    idx = partition_index(6)
    assert [idx[p] for p in partitions(6)] == list(range(len(partitions(6))))


def test_partition_from_parts_and_trimming():
    p = Partition.from_parts([3, 1, 1])
    assert p.exponents == (2, 0, 1)
    assert Partition((2, 0, 1, 0, 0)) == p
    assert p.parts() == (3, 1, 1)
    assert p.length == 3
    assert p.exponent(1) == 2 and p.exponent(7) == 0
    assert p.label("w") == "w1^2*w3"


@pytest.mark.parametrize("n, k, expected", [(5, 0, 1), (4, 2, 6), (3, 5, 0), (3, -1, 0)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


@pytest.mark.parametrize("k", range(1, 9))
def test_central_binomial_identity(k):
    assert binomial(2 * k, k) == 2 * binomial(2 * k - 1, k)
    assert binomial(2 * k, k) ** 2 == 4 * binomial(2 * k - 1, k) ** 2


@given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=60))
def test_binomial_pascal(n, k):
    assert binomial(n + 1, k + 1) == binomial(n, k) + binomial(n, k + 1)


def test_multinomial():
    assert multinomial([2, 1, 1]) == math.factorial(4) // 2
    assert multinomial([]) == 1
