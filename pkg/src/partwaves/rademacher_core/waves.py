"""Sylvester waves: the periodic components W_k(N, n) of p_N(n).

p_N(n) = W_1 + W_2 + ... + W_N, where W_k collects the contributions of all
primitive k-th roots of unity and is, on each residue class of n mod k, a
polynomial in n of degree floor(N/k) - 1.  The engine here evaluates W_k as a
Galois trace: one exact series exponential per (k, N), assembled per n by a
short dot product, a root-of-unity rotation, and the field trace, so the
result is manifestly rational.

W_1 is additionally available through Glaisher's half-integer Bernoulli
product (wave_w1_half), which shares nothing with the exponential engine and
anchors the two-route check.  wave_from_coefficients ties the waves back to
the partial-fraction coefficients, and c01_from_waves / c12_from_waves invert
that relation at negative arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .._backend import Q
from ..cyclotomic import (
    _field,
    _raw_add_scaled,
    _raw_beta,
    _raw_inv,
    _raw_mul,
    _raw_mul_zeta,
    _raw_trace,
    _raw_zero,
)
from ..exact_arith import bernoulli, binomial, factorial
from .coefficients import _diag_table

__all__ = [
    "WaveValue",
    "c01_from_waves",
    "c12_from_waves",
    "wave",
    "wave_from_coefficients",
    "wave_w1_half",
]

_Q0 = Q(0)
_Q1 = Q(1)


@dataclass(frozen=True)
class WaveValue:
    """One evaluated wave: W_k(N, n) = value, always rational."""

    k: int
    N: int
    n: int
    value: object


def _rs_exp(F, A: list, T: int) -> list:
    """exp of a raw-coefficient series with zero constant term."""
    one = _raw_zero(F)
    one[0] = _Q1
    out = [one]
    for n in range(1, T):
        acc = _raw_zero(F)
        for m in range(1, n + 1):
            if any(A[m]):
                _raw_add_scaled(acc, _raw_mul(F, A[m], out[n - m]), m)
        out.append([c / n for c in acc])
    return out


_WAVE_DATA: dict[tuple[int, int], tuple] = {}


def _wave_data(k: int, N: int) -> tuple:
    """Prefactor and n-free exponential series for W_k(N, .), cached.

    The exponent is -(N(N+1)/2) z - sum_{r mod k} sum_m beta_m(zeta^r)
    s_{m,r}(N) z^m/(m m!), where s_{m,r}(N) sums j^m over j <= N in class r;
    the per-n part exp(-nz) is attached later.  Prefactor:
    (-1)^(s-1) / (k^(2s) s!) / prod_{w <= N mod k} (1 - zeta^w).
    """
    data = _WAVE_DATA.get((k, N))
    if data is not None:
        return data
    F = _field(k)
    s = N // k
    T = s

    srm = [[0] * k for _ in range(T)]
    for j in range(1, N + 1):
        jp = j
        for m in range(1, T):
            srm[m][j % k] += jp
            jp *= j

    A = [_raw_zero(F) for _ in range(T)]
    for m in range(1, T):
        acc = _raw_zero(F)
        for r in range(k):
            w = srm[m][r]
            if w:
                _raw_add_scaled(acc, _raw_beta(k, m, r), w)
        scale = Q(-1, m * factorial(m))
        A[m] = [c * scale for c in acc]
    if T > 1:
        A[1][0] -= Q(N * (N + 1), 2)
    X = _rs_exp(F, A, T)

    pref = _raw_zero(F)
    pref[0] = Q((-1) ** (s - 1)) / (Q(k) ** (2 * s) * factorial(s))
    for w in range(1, N - k * s + 1):
        one_minus = [-x for x in F.rows[w]]
        one_minus[0] = one_minus[0] + _Q1
        pref = _raw_mul(F, pref, _raw_inv(F, one_minus))

    data = (tuple(tuple(c for c in row) for row in X), tuple(pref))
    _WAVE_DATA[(k, N)] = data
    return data


def wave(k: int, N: int, n: int):
    """W_k(N, n) as an exact rational; n may be any integer."""
    if not 1 <= k <= N:
        raise ValueError("need 1 <= k <= N")
    F = _field(k)
    s = N // k
    X, pref = _wave_data(k, N)
    acc = _raw_zero(F)
    np = 1
    for j in range(s):
        _raw_add_scaled(acc, X[s - 1 - j], Q(np, factorial(j)))
        np *= -n
    val = _raw_mul(F, list(pref), acc)
    val = _raw_mul_zeta(F, val, (-n) % k)
    return _raw_trace(F, val)


def wave_record(k: int, N: int, n: int) -> WaveValue:
    return WaveValue(k, N, n, wave(k, N, n))


_HALF_PRODUCTS: dict[int, tuple] = {}


def wave_w1_half(N: int, n: int):
    """W_1(N, n) from the product of half-integer Bernoulli series.

    (1/N!) [z^(N-1)] e^((n + N(N+1)/4) z) prod_{w=1}^{N} sum_j B_j(1/2)
    (wz)^j / j!, using B_j(1/2) = (2^(1-j) - 1) B_j.  Independent of the
    exponential engine behind wave().
    """
    if N < 1:
        raise ValueError("N must be positive")
    T = N
    prod = _HALF_PRODUCTS.get(N)
    if prod is None:
        half = [(Q(2) ** (1 - j) - 1) * bernoulli(j) for j in range(T)]
        prod = [_Q1] + [_Q0] * (T - 1)
        for w in range(1, N + 1):
            fac = [_Q0] * T
            wp = 1
            for j in range(T):
                if half[j]:
                    fac[j] = half[j] * Q(wp, factorial(j))
                wp *= w
            nxt = [_Q0] * T
            for i, pi in enumerate(prod):
                if pi:
                    for j in range(T - i):
                        if fac[j]:
                            nxt[i + j] += pi * fac[j]
            prod = nxt
        prod = tuple(prod)
        _HALF_PRODUCTS[N] = prod
    c = n + Q(N * (N + 1), 4)
    total = _Q0
    cp = _Q1
    for j in range(T):
        if prod[T - 1 - j]:
            total += prod[T - 1 - j] * cp / factorial(j)
        cp *= c
    return total / factorial(N)


def wave_from_coefficients(k: int, N: int, n: int):
    """W_k(N, n) rebuilt from the exact coefficients of conductor k.

    -sum_h sum_l binom(-n-1, l-1) zeta_k^{-h(l+n)} C_{hkl}(N); the h-sum is
    Galois stable, so the raw aggregate must come out rational.
    """
    if not 1 <= k <= N:
        raise ValueError("need 1 <= k <= N")
    F = _field(k)
    acc = _raw_zero(F)
    for l in range(1, N // k + 1):
        tab = _diag_table(k, l)
        tab.ensure(N)
        weight = -binomial(-n - 1, l - 1)
        if not weight:
            continue
        for h in range(k):
            if gcd(h, k) != 1:
                continue
            elem = tab.assemble(h, N)
            rot = _raw_mul_zeta(F, elem.coeffs, (-h * (l + n)) % k)
            _raw_add_scaled(acc, rot, weight)
    if any(acc[1:]):
        raise ArithmeticError(f"wave aggregate for k={k} is not rational: {acc}")
    return acc[0]


def c01_from_waves(l: int, N: int):
    """C_{01l}(N) = sum_j binom(l-1, j-1) (-1)^(l-j+1) W_1(N, -j).

    Inverse binomial transform of W_1(N, -j) = -sum_{m<=j} binom(j-1, m-1)
    C_{01m}(N), which follows from the reconstruction identity at negative
    arguments.  (Note the sign depends on l - j, not on j alone.)
    """
    if l < 1 or N < 1:
        raise ValueError("need l >= 1 and N >= 1")
    total = _Q0
    for j in range(1, l + 1):
        b = binomial(l - 1, j - 1)
        if b:
            total += ((-1) ** (l - j + 1)) * b * wave(1, N, -j)
    return total


def c12_from_waves(l: int, N: int):
    """C_{12l}(N) = -sum_j binom(l-1, j-1) W_2(N, -j).

    Same inversion as c01_from_waves; the (-1)^n prefactor of W_2 at n = -j
    cancels the alternating signs, leaving a single overall minus.
    """
    if l < 1 or N < 2:
        raise ValueError("need l >= 1 and N >= 2")
    total = _Q0
    for j in range(1, l + 1):
        b = binomial(l - 1, j - 1)
        if b:
            total += b * wave(2, N, -j)
    return -total
