"""Restricted partition counting oracle."""

import itertools

import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions

from partwaves.rademacher_core import p_oracle


def _brute(N, n):
    if n == 0:
        return 1
    count = 0
    # multiplicity vector over parts 1..N, bounded by n // part
    parts = list(range(1, N + 1))

    def rec(i, rem):
        nonlocal count
        if rem == 0:
            count += 1
            return
        if i == len(parts):
            return
        p = parts[i]
        for mult in range(rem // p + 1):
            rec(i + 1, rem - mult * p)

    rec(0, n)
    return count


def test_edge_cases():
    assert p_oracle(1, 0) == 1
    assert p_oracle(1, 17) == 1
    assert p_oracle(3, -4) == 0
    with pytest.raises(ValueError):
        p_oracle(0, 5)


def test_small_values_brute_force():
    for N in range(1, 6):
        for n in range(0, 16):
            assert p_oracle(N, n) == _brute(N, n), (N, n)


def test_recurrence_in_largest_part():
    for N in range(2, 12):
        for n in range(0, 40):
            assert p_oracle(N, n) == p_oracle(N - 1, n) + p_oracle(N, n - N)


def test_unrestricted_limit():
    # once N >= n every partition of n is allowed
    for n in range(0, 30):
        assert p_oracle(n + 5, n) == int(npartitions(n))


def test_two_parts_closed_form():
    for n in range(0, 50):
        assert p_oracle(2, n) == n // 2 + 1
