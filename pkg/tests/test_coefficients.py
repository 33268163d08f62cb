"""Exact coefficient routes, their agreement, and the decomposition table."""

import json
import math

import pytest

from partwaves._backend import Q
from partwaves.cyclotomic import CycloElement
from partwaves.exact_arith import bernoulli, binomial, factorial, stirling2
from partwaves.rademacher_core import (
    BudgetExceededError,
    CoeffKey,
    DecompositionTable,
    andrews_term_count,
    c_andrews,
    c_direct,
    c_exp_form,
    c_recursive,
    c_residue,
    c_sum_over_h,
    c_sz,
    decompose,
    e_recursion,
    hockey_stick_check,
    p_from_decomposition,
    p_oracle,
)
from partwaves.rademacher_core.coefficients import _c01_convolution_forms


def _legal_keys(N_max):
    for N in range(1, N_max + 1):
        for k in range(1, N + 1):
            for l in range(1, N // k + 1):
                for h in range(k):
                    if math.gcd(h, k) == 1:
                        yield CoeffKey(h, k, l, N)


def test_key_validation():
    with pytest.raises(ValueError):
        CoeffKey(2, 4, 1, 8)  # not coprime
    with pytest.raises(ValueError):
        CoeffKey(0, 3, 1, 9)  # gcd(0, 3) = 3
    with pytest.raises(ValueError):
        CoeffKey(1, 5, 1, 4)  # k > N
    with pytest.raises(ValueError):
        CoeffKey(0, 1, 0, 4)  # l < 1
    key = CoeffKey(3, 7, 2, 20)
    assert key.s == 2
    assert key.in_range()
    assert not CoeffKey(3, 7, 3, 20).in_range()


def test_n2_values():
    assert c_recursive(CoeffKey(0, 1, 1, 2)) == CycloElement.from_rational(1, Q(-1, 4))
    assert c_recursive(CoeffKey(0, 1, 2, 2)) == CycloElement.from_rational(1, Q(1, 2))
    assert c_recursive(CoeffKey(1, 2, 1, 2)) == CycloElement.from_rational(2, Q(1, 4))


def test_five_routes_agree_exhaustively():
    for key in _legal_keys(8):
        vals = {
            c_direct(key),
            c_recursive(key),
            c_sz(key),
            c_andrews(key),
            c_residue(key),
        }
        assert len(vals) == 1, key


def test_extended_l_vanishes():
    for N in (2, 3, 5, 7):
        for extra in (1, 2, 5):
            for k in range(1, N + 1):
                h = 1 if k > 1 else 0
                key = CoeffKey(h, k, N // k + extra, N)
                zero = CycloElement.zero(k)
                assert c_recursive(key) == zero
                assert c_sz(key) == zero
                assert c_andrews(key) == zero
                assert c_residue(key) == zero


def test_top_coefficient_identities():
    for N in range(2, 16):
        top = c_recursive(CoeffKey(0, 1, N, N))
        sub = c_recursive(CoeffKey(0, 1, N - 1, N))
        assert top == CycloElement.from_rational(1, Q((-1) ** N, factorial(N)))
        assert sub == CycloElement.from_rational(
            1, Q((-1) ** (N + 1), 4 * factorial(N - 2)))


def test_exp_form_matches_direct():
    for N in range(1, 15):
        for l in range(1, N + 1):
            got = c_exp_form(l, N)
            want = c_direct(CoeffKey(0, 1, l, N)).coeffs[0]
            assert got == want, (l, N)


def test_convolution_forms_agree():
    for N in range(1, 12):
        for l in range(1, N + 1):
            forms = _c01_convolution_forms(l, N)
            assert len(set(forms)) == 1, (l, N)
            assert forms[0] == c_exp_form(l, N)


def test_hockey_stick():
    for j in range(6):
        for r in range(j + 1, 12):
            assert hockey_stick_check(j, r)


def test_e_recursion_full_vector_routes():
    for N in range(2, 11):
        for k in range(2, N + 1):
            for l in range(1, N // k + 1):
                table = e_recursion(k, l, N)
                for h in range(1, k):
                    if math.gcd(h, k) == 1:
                        assert table.coefficient(h, N) == c_recursive(CoeffKey(h, k, l, N))


def test_aggregate_is_rational_and_matches_h_sum():
    for N in range(2, 13):
        for k in range(1, N + 1):
            for l in range(1, N // k + 1):
                agg = c_sum_over_h(k, l, N)
                direct = CycloElement.zero(k)
                for h in range(k):
                    if math.gcd(h, k) == 1:
                        direct = direct + c_recursive(CoeffKey(h, k, l, N))
                assert direct.is_rational()
                assert agg == direct.coeffs[0], (k, l, N)


def test_rationality_for_small_conductors():
    for N in range(2, 15):
        for l in range(1, N + 1):
            assert c_recursive(CoeffKey(0, 1, l, N)).is_rational()
        for l in range(1, N // 2 + 1):
            assert c_recursive(CoeffKey(1, 2, l, N)).is_rational()


def test_andrews_budget_refusal():
    key = CoeffKey(0, 1, 1, 11)
    count = andrews_term_count(key)
    assert count > 1000
    with pytest.raises(BudgetExceededError) as e:
        c_andrews(key, budget=1000)
    msg = str(e.value)
    assert str(count) in msg and "1000" in msg
    # the budget is a bound on term count, equality is allowed
    assert c_andrews(CoeffKey(1, 3, 1, 9), budget=andrews_term_count(CoeffKey(1, 3, 1, 9)))


def test_decompose_structure():
    table = decompose(6)
    # one entry per (h, k, l) with k <= 6, l <= 6 // k, gcd(h, k) = 1
    from partwaves.exact_arith import totient
    expected = sum(totient(k) * (6 // k) for k in range(1, 7))
    assert len(table) == expected
    assert table.N == 6
    v = table.value(CoeffKey(0, 1, 1, 6))
    assert v == c_recursive(CoeffKey(0, 1, 1, 6))


def test_decomposition_roundtrip_and_csv():
    table = decompose(5)
    again = DecompositionTable.from_json(table.to_json())
    assert again.N == table.N and len(again) == len(table)
    for key, val in table:
        assert again.value(key) == val
    # json is canonical: re-serialization is byte-identical
    assert again.to_json() == table.to_json()
    parsed = json.loads(table.to_json())
    assert parsed["N"] == 5
    rows = list(table.csv_rows())
    assert len(rows) == len(table)
    assert all(len(r) == 5 for r in rows)


def test_reconstruction_small():
    for N in range(1, 11):
        table = decompose(N)
        for n in range(0, 41):
            assert p_from_decomposition(table, n) == p_oracle(N, n), (N, n)


def test_reconstruction_term_shape():
    # the l = 1 towers alone reproduce the n-independent-degree structure:
    # p_2(n) = (2n + 3)/4 + (-1)^n / 4
    table = decompose(2)
    n = 9
    assert p_from_decomposition(table, n) == (2 * n + 3 + (-1) ** n) // 4
