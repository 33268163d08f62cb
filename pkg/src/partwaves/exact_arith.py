"""Exact integer and rational combinatorics used by every other module.

Conventions fixed here once and relied on everywhere:

* Bernoulli numbers use B_1 = -1/2 (the generating function z/(e^z - 1)).
* stirling1 is the *unsigned* first kind: x(x+1)...(x+n-1) = sum [n,m] x^m.
* stirling2 counts set partitions: x^n = sum {n,m} x(x-1)...(x-m+1).
* binomial(a, b) is defined for negative a through the reflection
  C(a, b) = (-1)^b C(b - a - 1, b), and is 0 for b < 0.
* power_sum(m, N) = 1^m + 2^m + ... + N^m with power_sum(m, 0) = 0.

All rationals are backend scalars (see _backend); all functions here are pure
and cache internally where growth is monotone.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from ._backend import Q, RATIONAL_TYPES, is_rational

__all__ = [
    "SequenceCache",
    "QPolynomial",
    "bernoulli",
    "bernoulli_poly",
    "bernoulli_at_fractions",
    "higher_bernoulli",
    "stirling1",
    "stirling2",
    "binomial",
    "factorial",
    "power_sum",
    "power_sum_poly",
    "restricted_power_sum",
    "mobius",
    "totient",
    "ramanujan_sum",
]

factorial = math.factorial
gcd = math.gcd

_Q0 = Q(0)
_Q1 = Q(1)


class SequenceCache:
    """Append-only memo for a sequence a_0, a_1, ... with a grow rule.

    ``grow(values)`` receives the internal list and must append at least one
    new element.  Indexing extends the sequence as far as needed; entries are
    never recomputed or invalidated.
    """

    __slots__ = ("_values", "_grow")

    def __init__(self, grow: Callable[[list], None], initial: Iterable = ()):
        self._values = list(initial)
        self._grow = grow

    def __getitem__(self, n: int):
        if n < 0:
            raise IndexError("sequence index must be nonnegative")
        values = self._values
        while len(values) <= n:
            before = len(values)
            self._grow(values)
            if len(values) <= before:
                raise RuntimeError("grow rule failed to extend the sequence")
        return values[n]

    def __len__(self) -> int:
        return len(self._values)

    def prefix(self, n: int) -> list:
        """First n entries as a fresh list."""
        if n > 0:
            self[n - 1]
        return self._values[:n]


def binomial(a: int, b: int) -> int:
    """C(a, b) for any integer a, zero for b < 0."""
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b) if b <= a else 0
    # reflection for negative upper index
    value = math.comb(b - a - 1, b)
    return -value if b & 1 else value


def _grow_bernoulli(values: list) -> None:
    n = len(values)
    # B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
    acc = _Q0
    for j, bj in enumerate(values):
        if bj:
            acc += math.comb(n + 1, j) * bj
    values.append(-acc / (n + 1))


_BERNOULLI = SequenceCache(_grow_bernoulli, initial=(_Q1,))


def bernoulli(n: int):
    """Bernoulli number B_n (B_1 = -1/2)."""
    return _BERNOULLI[n]


class QPolynomial:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are ascending (``coeffs[i]`` multiplies x**i), stored with no
    trailing zeros; the zero polynomial has an empty tuple.  Supports ring
    arithmetic with scalars and polynomials, exact divmod, Horner evaluation
    at any rational (or float/complex) point, derivative, and Taylor shift.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if is_rational(c) else Q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @classmethod
    def variable(cls) -> "QPolynomial":
        """The polynomial x."""
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int):
        """Coefficient of x**i (zero outside the stored range)."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _Q0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if is_rational(other):
            return self.coeffs == ((Q(other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "QPolynomial":
        if is_rational(other):
            other = QPolynomial((other,))
        elif not isinstance(other, QPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if is_rational(other):
            other = QPolynomial((other,))
        elif not isinstance(other, QPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            if not other:
                return QPolynomial()
            return QPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, QPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial()
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPolynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = QPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "QPolynomial"):
        """Exact (quotient, remainder) in Q[x]."""
        if not isinstance(other, QPolynomial):
            other = QPolynomial((other,))
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcoeffs = other.coeffs
        dn = len(dcoeffs) - 1
        lead_inv = _Q1 / dcoeffs[-1]
        quot = [_Q0] * max(0, len(rem) - dn)
        for i in range(len(rem) - 1, dn - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c * lead_inv
            quot[i - dn] = f
            for j in range(dn + 1):
                rem[i - dn + j] -= f * dcoeffs[j]
        return QPolynomial(quot), QPolynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "QPolynomial":
        return QPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def shifted(self, a) -> "QPolynomial":
        """The polynomial p(x + a)."""
        n = len(self.coeffs)
        out = [_Q0] * n
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            # c * (x + a)^j
            term = c
            for i in range(j, -1, -1):
                out[i] += term * math.comb(j, i)
                term *= a
        return QPolynomial(out)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = "x"
            else:
                mono = f"x^{i}"
            if c == 1 and mono:
                body = mono
            elif c == -1 and mono:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}" if mono else f"{c}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def bernoulli_poly(n: int) -> QPolynomial:
    """Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^(n-j)."""
    return QPolynomial([math.comb(n, i) * bernoulli(n - i) for i in range(n + 1)])


_BERN_FRACTIONS: dict[tuple[int, int], tuple] = {}


def bernoulli_at_fractions(m: int, k: int) -> tuple:
    """Cached tuple (B_m(0/k), B_m(1/k), ..., B_m((k-1)/k))."""
    key = (m, k)
    vals = _BERN_FRACTIONS.get(key)
    if vals is None:
        poly = bernoulli_poly(m)
        vals = tuple(poly(Q(j, k)) for j in range(k))
        _BERN_FRACTIONS[key] = vals
    return vals


# -- truncated power series on plain coefficient lists ------------------------
#
# These are internal helpers shared with the recursion modules.  A series is a
# list of rationals a[0..T-1] meaning sum a_i z^i + O(z^T).


def _series_mul(a: Sequence, b: Sequence, T: int) -> list:
    out = [_Q0] * T
    for i, ai in enumerate(a):
        if i >= T:
            break
        if not ai:
            continue
        top = T - i
        for j, bj in enumerate(b):
            if j >= top:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _series_exp(a: Sequence, T: int) -> list:
    """exp of a series with a[0] = 0, to order T."""
    if a and a[0]:
        raise ValueError("series exp needs zero constant term")
    out = [_Q0] * T
    if T == 0:
        return out
    out[0] = _Q1
    for n in range(1, T):
        acc = _Q0
        for m in range(1, min(n, len(a) - 1) + 1):
            am = a[m]
            if am:
                acc += m * am * out[n - m]
        out[n] = acc / n
    return out


def _series_inv(a: Sequence, T: int) -> list:
    """Reciprocal of a unit series (a[0] != 0), to order T."""
    c0 = a[0]
    inv0 = _Q1 / c0
    out = [_Q0] * T
    out[0] = inv0
    for n in range(1, T):
        acc = _Q0
        for m in range(1, min(n, len(a) - 1) + 1):
            am = a[m]
            if am:
                acc += am * out[n - m]
        out[n] = -inv0 * acc
    return out


def higher_bernoulli(n: int, order: int, t=0):
    """Higher-order Bernoulli B_n^(order)(t), from (z/(e^z-1))^order e^(tz).

    ``order`` may be negative, in which case ((e^z-1)/z)^(-order) is used.
    The default t = 0 gives the higher-order Bernoulli numbers.
    """
    T = n + 1
    if order >= 0:
        base = [bernoulli(j) / factorial(j) for j in range(T)]
        r = order
    else:
        base = [Q(1, factorial(j + 1)) for j in range(T)]
        r = -order
    # base^r via exp(r * log(base)); base[0] == 1 for both branches
    log_terms = [_Q0] * T
    # log via d/dz log(f) = f'/f, integrated
    deriv = [(j + 1) * base[j + 1] for j in range(T - 1)]
    ratio = _series_mul(deriv, _series_inv(base, T - 1), T - 1) if T > 1 else []
    for j, c in enumerate(ratio):
        log_terms[j + 1] = c / (j + 1)
    # exponent series: r*log(f) + t*z, since log(e^(tz)) = tz
    scaled = [r * c for c in log_terms]
    if t and T > 1:
        scaled[1] += t if is_rational(t) else Q(t)
    series = _series_exp(scaled, T)
    return series[n] * factorial(n)


_S1_ROWS: dict[int, tuple] = {0: (1,)}
_S2_ROWS: dict[int, tuple] = {0: (1,)}


def stirling1(n: int, m: int) -> int:
    """Unsigned Stirling number of the first kind [n, m]."""
    if m < 0 or m > n:
        return 0
    row = _S1_ROWS.get(n)
    if row is None:
        top = max(_S1_ROWS)
        row = _S1_ROWS[top]
        for nn in range(top + 1, n + 1):
            prev = row
            row = tuple(
                (prev[mm - 1] if mm >= 1 else 0)
                + (nn - 1) * (prev[mm] if mm < nn else 0)
                for mm in range(nn + 1)
            )
            _S1_ROWS[nn] = row
    return row[m]


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind {n, m}."""
    if m < 0 or m > n:
        return 0
    row = _S2_ROWS.get(n)
    if row is None:
        top = max(_S2_ROWS)
        row = _S2_ROWS[top]
        for nn in range(top + 1, n + 1):
            prev = row
            row = tuple(
                (prev[mm - 1] if mm >= 1 else 0)
                + mm * (prev[mm] if mm < nn else 0)
                for mm in range(nn + 1)
            )
            _S2_ROWS[nn] = row
    return row[m]


def power_sum(m: int, N: int):
    """s_m(N) = sum_{w=1}^{N} w^m, exactly (Faulhaber form)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if m == 0:
        return Q(N)
    if N == 0:
        return _Q0
    # (B_{m+1}(N+1) - B_{m+1}) / (m+1)
    poly = bernoulli_poly(m + 1)
    return (poly(N + 1) - bernoulli(m + 1)) / (m + 1)


def power_sum_poly(m: int) -> QPolynomial:
    """s_m as a polynomial in N: (B_{m+1}(N+1) - B_{m+1}) / (m+1).

    The Faulhaber identity starts the sum at w = 0, which only shows at
    m = 0; that case is handled apart so the polynomial matches power_sum.
    """
    if m == 0:
        return QPolynomial.variable()
    shifted = bernoulli_poly(m + 1).shifted(1)
    return (shifted - bernoulli(m + 1)) * Q(1, m + 1)


def restricted_power_sum(m: int, r: int, k: int, N: int) -> int:
    """Sum of w^m over 1 <= w <= N with w = r (mod k)."""
    return sum(w**m for w in range(1, N + 1) if w % k == r % k)


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    """Moebius function mu(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    for _, e in _factorize(n):
        if e > 1:
            return 0
        result = -result
    return result


def totient(n: int) -> int:
    """Euler totient phi(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    for p, _ in _factorize(n):
        result -= result // p
    return result


def ramanujan_sum(k: int, n: int) -> int:
    """c_k(n) = sum over d | gcd(k, n) of d * mu(k/d)."""
    g = gcd(k, n)
    total = 0
    for d in range(1, g + 1):
        if g % d == 0:
            total += d * mobius(k // d)
    return total
