"""Exact arithmetic in the cyclotomic fields Q(zeta_k).

Elements are canonical coordinate vectors over the power basis
1, zeta, ..., zeta^(phi(k)-1) after reduction modulo the k-th cyclotomic
polynomial Phi_k, so equality of any two formula variants is a plain list
comparison.  A separate group-ring type Q[x]/(x^k - 1) holds pre-reduction
values indexed by all k powers of a root of unity.

Also here: the twisted Bernoulli coefficients beta_m(xi) defined by
z/(xi e^z - 1) = sum_m beta_m(xi) z^m / m!, computed several independent ways
(a Bernoulli-polynomial sum valid for every xi with xi^k = 1, a Stirling
partial-fraction form, two classical Glaisher rearrangements, and a numeric
Hurwitz-zeta route).  beta_m(1) = B_m; beta_0(xi) = 0 for xi != 1.

The underscore-prefixed ``_raw_*`` kernels operate on plain coefficient lists
and are shared with the recursion code, which cannot afford per-operation
object wrappers.
"""

from __future__ import annotations

import cmath
from math import gcd
from typing import NamedTuple, Sequence

from ._backend import Q, is_rational
from .exact_arith import (
    QPolynomial,
    bernoulli,
    bernoulli_at_fractions,
    factorial,
    ramanujan_sum,
    stirling2,
)

__all__ = [
    "CycloElement",
    "GroupRingElement",
    "cyclotomic_polynomial",
    "zeta",
    "apostol_beta",
    "apostol_beta_stirling",
    "apostol_beta_variants",
    "hurwitz_beta_numeric",
    "hurwitz_zeta",
]

_Q0 = Q(0)
_Q1 = Q(1)

_PHI_CACHE: dict[int, QPolynomial] = {}


def cyclotomic_polynomial(k: int) -> QPolynomial:
    """The k-th cyclotomic polynomial Phi_k, monic of degree phi(k)."""
    if k < 1:
        raise ValueError("conductor must be positive")
    poly = _PHI_CACHE.get(k)
    if poly is None:
        # (x^k - 1) / product of Phi_d over proper divisors d of k
        num = QPolynomial([-1] + [0] * (k - 1) + [1])
        for d in range(1, k):
            if k % d == 0:
                q, r = divmod(num, cyclotomic_polynomial(d))
                assert not r
                num = q
        poly = num
        _PHI_CACHE[k] = poly
    return poly


class _Field(NamedTuple):
    """Per-conductor reduction tables shared by all elements."""

    k: int
    phi: int
    rows: tuple  # rows[j] = canonical coords of zeta^j, 0 <= j <= 2k-2
    poly: QPolynomial


_FIELD_CACHE: dict[int, _Field] = {}


def _field(k: int) -> _Field:
    F = _FIELD_CACHE.get(k)
    if F is None:
        poly = cyclotomic_polynomial(k)
        phi = poly.degree
        lower = poly.coeffs[:phi]  # x^phi == -(lower part), Phi_k monic
        rows = []
        for j in range(phi):
            row = [_Q0] * phi
            row[j] = _Q1
            rows.append(tuple(row))
        for j in range(phi, 2 * k - 1):
            prev = rows[j - 1]
            shifted = [_Q0] + list(prev)
            top = shifted.pop()
            if top:
                for i in range(phi):
                    if lower[i]:
                        shifted[i] -= top * lower[i]
            rows.append(tuple(shifted))
        F = _Field(k, phi, tuple(rows), poly)
        _FIELD_CACHE[k] = F
    return F


# -- raw kernels on coefficient lists -----------------------------------------


def _raw_zero(F: _Field) -> list:
    return [_Q0] * F.phi


def _raw_add_scaled(acc: list, row: Sequence, c) -> None:
    """acc += c * row, in place."""
    for i, r in enumerate(row):
        if r:
            acc[i] += c * r


def _raw_mul(F: _Field, a: Sequence, b: Sequence) -> list:
    phi = F.phi
    rows = F.rows
    out = [_Q0] * phi
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            d = i + j
            c = ai * bj
            if d < phi:
                out[d] += c
            else:
                _raw_add_scaled(out, rows[d], c)
    return out


def _raw_mul_zeta(F: _Field, a: Sequence, e: int) -> list:
    """a * zeta^e for 0 <= e < k."""
    out = [_Q0] * F.phi
    rows = F.rows
    for i, ai in enumerate(a):
        if ai:
            _raw_add_scaled(out, rows[i + e], ai)
    return out


def _raw_mul_table(F: _Field, b: Sequence) -> tuple:
    """Rows of the multiplication-by-b matrix: row i holds b * zeta^i.

    Applying the table costs phi^2 coefficient operations per product, against
    up to phi^3 for a fresh _raw_mul, so it pays off whenever one factor is
    reused many times (recursion steps that multiply a whole level by the same
    field element).
    """
    out = [tuple(b)]
    cur = list(b)
    for _ in range(1, F.phi):
        cur = _raw_mul_zeta(F, cur, 1)
        out.append(tuple(cur))
    return tuple(out)


def _raw_apply(table: Sequence, a: Sequence) -> list:
    """a * b, where table = _raw_mul_table(F, b)."""
    out = [_Q0] * len(table[0])
    for i, ai in enumerate(a):
        if ai:
            _raw_add_scaled(out, table[i], ai)
    return out


def _raw_conj(F: _Field, a: Sequence, t: int) -> list:
    """Galois map zeta -> zeta^t (gcd(t, k) = 1)."""
    out = [_Q0] * F.phi
    rows = F.rows
    k = F.k
    for i, ai in enumerate(a):
        if ai:
            _raw_add_scaled(out, rows[(i * t) % k], ai)
    return out


def _raw_inv(F: _Field, a: Sequence) -> list:
    """Inverse via extended gcd with Phi_k over Q."""
    a_poly = QPolynomial(a)
    if not a_poly:
        raise ZeroDivisionError("cyclotomic element is zero")
    r0, r1 = F.poly, a_poly
    t0, t1 = QPolynomial(), QPolynomial((1,))
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    # r0 is a nonzero constant (Phi_k is irreducible over Q)
    assert r0.degree == 0
    inv = (t0 * (_Q1 / r0.coeffs[0])) % F.poly
    out = list(inv.coeffs) + [_Q0] * (F.phi - len(inv.coeffs))
    return out


def _raw_trace(F: _Field, a: Sequence):
    """Field trace to Q; the trace of zeta^i is the Ramanujan sum c_k(i)."""
    total = _Q0
    for i, ai in enumerate(a):
        if ai:
            total += ai * ramanujan_sum(F.k, i)
    return total


def _raw_embed(F: _Field, a: Sequence, h: int) -> complex:
    w = 2j * cmath.pi * h / F.k
    total = 0j
    for i, ai in enumerate(a):
        if ai:
            total += float(ai) * cmath.exp(w * i)
    return total


class CycloElement:
    """An element of Q(zeta_k) in canonical power-basis coordinates.

    ``coeffs`` has length phi(k); two elements are equal exactly when their
    conductor and coordinate tuples are equal.  Mixed arithmetic with exact
    rational scalars is supported; elements of different conductors do not mix
    (no implicit subfield embeddings).
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Sequence):
        F = _field(k)
        cs = [c if is_rational(c) else Q(c) for c in coeffs]
        if len(cs) != F.phi:
            raise ValueError(f"need {F.phi} coordinates for conductor {k}, got {len(cs)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElement is immutable")

    # -- constructors

    @classmethod
    def zero(cls, k: int) -> "CycloElement":
        return cls(k, _raw_zero(_field(k)))

    @classmethod
    def one(cls, k: int) -> "CycloElement":
        return cls.from_rational(k, _Q1)

    @classmethod
    def from_rational(cls, k: int, value) -> "CycloElement":
        coeffs = _raw_zero(_field(k))
        coeffs[0] = Q(value)
        return cls(k, coeffs)

    # -- predicates and conversions

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def rational_value(self):
        """The value as a rational scalar; raises if not rational."""
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def trace(self):
        """Field trace down to Q, always a rational scalar."""
        return _raw_trace(_field(self.k), self.coeffs)

    def conjugate(self, t: int) -> "CycloElement":
        """Galois conjugate sending zeta_k to zeta_k^t; needs gcd(t, k) = 1."""
        if gcd(t, self.k) != 1:
            raise ValueError("conjugation exponent must be coprime to the conductor")
        return CycloElement(self.k, _raw_conj(_field(self.k), self.coeffs, t % self.k))

    def embed(self, h: int = 1) -> complex:
        """Numeric value with zeta_k = e^(2 pi i h / k); h must be coprime to k."""
        if gcd(h, self.k) != 1:
            raise ValueError("embedding exponent must be coprime to the conductor")
        return _raw_embed(_field(self.k), self.coeffs, h % self.k)

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.k != self.k:
                raise ValueError("conductor mismatch")
            return other
        if is_rational(other):
            return CycloElement.from_rational(self.k, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElement(self.k, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.k, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElement(self.k, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycloElement):
            if other.k != self.k:
                raise ValueError("conductor mismatch")
            return CycloElement(self.k, _raw_mul(_field(self.k), self.coeffs, other.coeffs))
        if is_rational(other):
            return CycloElement(self.k, [c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        return CycloElement(self.k, _raw_inv(_field(self.k), self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if is_rational(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> "CycloElement":
        base = self.inverse() if n < 0 else self
        n = abs(n)
        result = CycloElement.one(self.k)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality / hashing / display

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return self.k == other.k and self.coeffs == other.coeffs
        if is_rational(other):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycloElement({self.k}, {[str(c) for c in self.coeffs]})"

    # -- serialization (exact round-trip)

    def to_dict(self) -> dict:
        return {"k": self.k, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: dict) -> "CycloElement":
        return cls(int(data["k"]), [Q(c) for c in data["coeffs"]])


def zeta(k: int, e: int = 1) -> CycloElement:
    """The root of unity zeta_k^e as a canonical element."""
    F = _field(k)
    return CycloElement(k, F.rows[e % k])


class GroupRingElement:
    """An element of Q[x]/(x^k - 1), the pre-reduction home of r-indexed sums.

    Reduction mod Phi_k maps this ring onto Q(zeta_k), sending x to zeta_k;
    the kernel is where non-primitive-root information lives, so sums like
    1 + x + ... + x^(k-1) vanish only after reduction.
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Sequence):
        cs = [c if is_rational(c) else Q(c) for c in coeffs]
        if len(cs) != k:
            raise ValueError(f"need {k} coordinates, got {len(cs)}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    @classmethod
    def basis(cls, k: int, e: int = 0) -> "GroupRingElement":
        coeffs = [_Q0] * k
        coeffs[e % k] = _Q1
        return cls(k, coeffs)

    def reduce(self) -> CycloElement:
        """Ring homomorphism onto Q(zeta_k) with x -> zeta_k."""
        F = _field(self.k)
        out = _raw_zero(F)
        for i, c in enumerate(self.coeffs):
            if c:
                _raw_add_scaled(out, F.rows[i], c)
        return CycloElement(self.k, out)

    def __add__(self, other):
        if not isinstance(other, GroupRingElement) or other.k != self.k:
            return NotImplemented
        return GroupRingElement(self.k, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingElement(self.k, [-a for a in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement) or other.k != self.k:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if is_rational(other):
            return GroupRingElement(self.k, [c * other for c in self.coeffs])
        if not isinstance(other, GroupRingElement) or other.k != self.k:
            return NotImplemented
        k = self.k
        out = [_Q0] * k
        for i, ai in enumerate(self.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(other.coeffs):
                if bj:
                    out[(i + j) % k] += ai * bj
        return GroupRingElement(k, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.k == other.k and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.coeffs))

    def __repr__(self):
        return f"GroupRingElement({self.k}, {[str(c) for c in self.coeffs]})"


# -- twisted Bernoulli coefficients beta_m ------------------------------------

_BETA_RAW: dict[tuple[int, int, int], tuple] = {}


def _raw_beta(k: int, m: int, j: int) -> tuple:
    """Canonical coordinates of beta_m(zeta_k^j), cached."""
    j %= k
    key = (k, m, j)
    val = _BETA_RAW.get(key)
    if val is None:
        F = _field(k)
        bvals = bernoulli_at_fractions(m, k)
        acc = _raw_zero(F)
        for i in range(k):
            b = bvals[i]
            if b:
                _raw_add_scaled(acc, F.rows[(i * j) % k], b)
        if m != 1:
            scale = Q(k) ** (m - 1)
            val = tuple(c * scale for c in acc)
        else:
            val = tuple(acc)
        _BETA_RAW[key] = val
    return val


def apostol_beta(m: int, j: int, k: int) -> CycloElement:
    """beta_m(zeta_k^j) from the Bernoulli-polynomial sum k^(m-1) sum_i xi^i B_m(i/k).

    Valid for every residue j, including j = 0 where the value is B_m.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    return CycloElement(k, _raw_beta(k, m, j))


def apostol_beta_stirling(m: int, xi: CycloElement) -> CycloElement:
    """beta_m(xi) from the Stirling partial-fraction form, for xi != 1.

    (-1)^(m-1) m sum_{j=1}^{m} {m,j} (j-1)! / (xi-1)^j.
    """
    if xi == 1:
        raise ValueError("the partial-fraction form needs xi != 1")
    inv = (xi - 1).inverse()
    total = CycloElement.zero(xi.k)
    invp = CycloElement.one(xi.k)
    for j in range(1, m + 1):
        invp = invp * inv
        total = total + stirling2(m, j) * factorial(j - 1) * invp
    sign = 1 if (m - 1) % 2 == 0 else -1
    return (sign * m) * total


def apostol_beta_variants(m: int, xi: CycloElement) -> tuple[CycloElement, CycloElement]:
    """The two Glaisher rearrangements of the partial-fraction form.

    Returns a pair: the first is valid for m >= 0,
        m sum_{j=1}^{m} {m-1,j-1} (-xi)^(j-1) (j-1)! / (xi-1)^j,
    the second for m >= 2,
        -m sum_{j=0}^{m-2} {m-2,j} xi^j j! (j+xi) / (1-xi)^(j+2).
    Both must reduce to the same canonical element as apostol_beta.
    """
    if xi == 1:
        raise ValueError("variants need xi != 1")
    if m < 2:
        raise ValueError("the second variant needs m >= 2")
    k = xi.k
    inv = (xi - 1).inverse()

    total2 = CycloElement.zero(k)
    power = inv  # (-xi)^(j-1) (j-1)! / (xi-1)^j at j = 1
    for j in range(1, m + 1):
        s = stirling2(m - 1, j - 1)
        if s:
            total2 = total2 + s * power
        power = power * (-xi) * j * inv
    second = m * total2

    inv1 = (1 - xi).inverse()
    total4 = CycloElement.zero(k)
    power = inv1 * inv1  # xi^j j! / (1-xi)^(j+2) at j = 0
    for j in range(0, m - 1):
        s = stirling2(m - 2, j)
        if s:
            total4 = total4 + s * (power * (j + xi))
        power = power * xi * (j + 1) * inv1
    fourth = (-m) * total4

    return second, fourth


def hurwitz_zeta(s: int, a: float, tol: float = 1e-12) -> float:
    """zeta(s, a) = sum (n+a)^(-s) for integer s >= 2, 0 < a <= 1.

    Direct summation of the first terms plus an Euler-Maclaurin tail with
    absolute error below tol.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    if not 0 < a <= 1:
        raise ValueError("need 0 < a <= 1")
    # sum n = 0..M-1 directly, then tail from x = M + a
    M = 25
    total = 0.0
    for n in range(M):
        total += (n + a) ** (-s)
    x = M + a
    # integral term + half endpoint + Bernoulli corrections
    total += x ** (1 - s) / (s - 1)
    total += 0.5 * x ** (-s)
    # correction j: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
    rising = float(s)
    xpow = x ** (-s - 1)
    j = 1
    while True:
        term = float(bernoulli(2 * j)) / factorial(2 * j) * rising * xpow
        total += term
        if abs(term) < tol:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        xpow /= x * x
        j += 1
        if j > 60:
            raise RuntimeError("Euler-Maclaurin tail failed to reach tolerance")
    return total


def hurwitz_beta_numeric(m: int, a: int, b: int) -> complex:
    """beta_m(e^(2 pi i a/b)) via Hurwitz zeta: -m!/(2 pi i)^m (zeta(m,1-a/b) + (-1)^m zeta(m,a/b)).

    Needs m >= 2 and 0 < a/b < 1.  Independent of the exact routes; used as a
    numeric cross-check.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if not 0 < a < b:
        raise ValueError("need 0 < a/b < 1")
    frac = a / b
    z1 = hurwitz_zeta(m, 1 - frac)
    z2 = hurwitz_zeta(m, frac)
    front = -factorial(m) / (2j * cmath.pi) ** m
    return front * (z1 + ((-1) ** m) * z2)
