"""Cyclotomic field layer and the Apostol-Bernoulli evaluations."""

import cmath
import math

import mpmath
import pytest

from partwaves._backend import Q
from partwaves.cyclotomic import (
    CycloElement,
    apostol_beta,
    apostol_beta_stirling,
    apostol_beta_variants,
    cyclotomic_polynomial,
    hurwitz_beta_numeric,
    hurwitz_zeta,
    zeta,
)
from partwaves.exact_arith import QPolynomial, bernoulli, totient


def test_cyclotomic_polynomials():
    x = QPolynomial.variable()
    assert cyclotomic_polynomial(1) == x - 1
    assert cyclotomic_polynomial(2) == x + 1
    assert cyclotomic_polynomial(4) == x**2 + 1
    assert cyclotomic_polynomial(6) == x**2 - x + 1
    assert cyclotomic_polynomial(12) == x**4 - x**2 + 1
    for k in range(1, 25):
        assert cyclotomic_polynomial(k).degree == totient(k)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15])
def test_zeta_power_relations(k):
    z = zeta(k)
    acc = CycloElement.one(k)
    for e in range(1, k + 1):
        acc = acc * z
        assert acc == zeta(k, e % k)
    assert acc == CycloElement.one(k)
    if k % 2 == 0:
        assert zeta(k, k // 2) == CycloElement.from_rational(k, -1)


@pytest.mark.parametrize("k", [3, 5, 7, 8, 9, 12])
def test_embed_matches_cmath(k):
    z = zeta(k)
    elem = 3 * z * z - z + CycloElement.from_rational(k, Q(1, 2))
    w = cmath.exp(2j * cmath.pi / k)
    expected = 3 * w * w - w + 0.5
    assert abs(elem.embed() - expected) < 1e-12
    for h in range(1, k):
        if math.gcd(h, k) == 1:
            wh = cmath.exp(2j * cmath.pi * h / k)
            assert abs(elem.embed(h) - (3 * wh * wh - wh + 0.5)) < 1e-12


def test_inverse_and_conjugate():
    for k in (5, 7, 12):
        z = zeta(k)
        elem = z * z - 2 * z + 3
        inv = elem.inverse()
        assert elem * inv == CycloElement.one(k)
        for t in range(1, k):
            if math.gcd(t, k) != 1:
                continue
            conj = elem.conjugate(t)
            assert abs(conj.embed() - elem.embed(t)) < 1e-12
        tr = elem.trace()
        assert sum(elem.embed(t) for t in range(1, k)
                   if math.gcd(t, k) == 1).imag == pytest.approx(0, abs=1e-12)
        assert float(tr) == pytest.approx(
            sum(elem.embed(t).real for t in range(1, k) if math.gcd(t, k) == 1))


def test_serialization_roundtrip():
    z = zeta(12)
    elem = 5 * z**3 - Q(7, 3) * z + CycloElement.from_rational(12, Q(-1, 6))
    again = CycloElement.from_dict(elem.to_dict())
    assert again == elem
    d = elem.to_dict()
    assert all(isinstance(c, str) for c in d["coeffs"])


@pytest.mark.parametrize("k", range(2, 13))
def test_product_of_one_minus_roots(k):
    prod = CycloElement.one(k)
    for w in range(1, k):
        prod = prod * (CycloElement.one(k) - zeta(k, w))
    assert prod == CycloElement.from_rational(k, k)


def test_beta_at_minus_one():
    for m in range(21):
        assert apostol_beta(m, 1, 2) == CycloElement.from_rational(
            2, (2**m - 1) * bernoulli(m))


def test_beta_first_order_is_simple_pole():
    for k in range(2, 9):
        for j in range(1, k):
            lhs = apostol_beta(1, j, k)
            assert lhs == (zeta(k, j) - 1).inverse()


def test_beta_route_agreement_small():
    for k in range(2, 7):
        for j in range(1, k):
            xi = zeta(k, j)
            for m in range(0, 7):
                base = apostol_beta(m, j, k)
                assert apostol_beta_stirling(m, xi) == base
                if m >= 2:
                    g2, g4 = apostol_beta_variants(m, xi)
                    assert g2 == base and g4 == base


def test_hurwitz_zeta_vs_mpmath():
    for s in (2, 3, 5, 8):
        for a in (0.25, 0.5, 0.75, 1.0):
            ref = float(mpmath.zeta(s, a))
            assert hurwitz_zeta(s, a) == pytest.approx(ref, rel=1e-11)


def test_hurwitz_beta_numeric_matches_exact():
    for b in range(2, 7):
        for a in range(1, b):
            for m in range(2, 7):
                num = hurwitz_beta_numeric(m, a, b)
                exact = apostol_beta(m, a, b).embed()
                assert abs(num - exact) <= 1e-8 * max(1.0, abs(exact))
