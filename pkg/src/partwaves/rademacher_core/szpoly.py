"""Scaled near-top coefficient polynomials P_{01r} and their companions.

The coefficients C_{01(N-r)}(N) just below the top of the k = 1 tower become
polynomials in N after the scaling

    P_{01r}(N) = (-1)^N N! (-4)^r r! C_{01(N-r)}(N),

monic of degree 2r with roots at 0 and 1 for r >= 1.  sz_polynomial builds
P_{01r} in closed form from a Stirling-cycle sum against an exponential
series whose coefficients are themselves polynomials in x; sz_coeff_x and
sz_coeff_x2 are independent closed forms for the two lowest nonzero
coefficients (the linear one is negative, the quadratic one positive, for
every r checked).  M_{01r} is the simpler companion polynomial with the same
top half: replacing each c_i(x) bundle by its leading behavior collapses the
exponential sum to a product of quadratics x(x-1) + 4j.
"""

from __future__ import annotations

from .._backend import Q
from ..exact_arith import (
    QPolynomial,
    bernoulli,
    binomial,
    factorial,
    power_sum_poly,
    stirling1,
)

__all__ = [
    "m_polynomial",
    "m_second_derivative_half",
    "sz_coeff_x",
    "sz_coeff_x2",
    "sz_polynomial",
]

_Q0 = Q(0)
_Q1 = Q(1)


def _exp_series_poly(A: list[QPolynomial], T: int) -> list[QPolynomial]:
    """exp of a power series with polynomial coefficients and zero constant."""
    out = [QPolynomial((1,))]
    for n in range(1, T):
        acc = QPolynomial()
        for m in range(1, n + 1):
            if A[m]:
                acc = acc + (A[m] * out[n - m]) * Q(m)
        out.append(acc * Q(1, n))
    return out


def sz_polynomial(r: int) -> QPolynomial:
    """P_{01r} as an exact polynomial: monic, degree 2r, P(0) = P(1) = 0 for r >= 1.

    4^r sum_{m=0}^r (-1)^m [r, m] m! [z^m] exp(sum_i c_i(x) z^i) with
    c_i(x) = (-1)^(i-1) B_i (s_i(x) - x) / (i i!), where s_i is the degree
    i+1 power-sum polynomial; [r, m] are unsigned Stirling cycle numbers.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    T = r + 1
    x = QPolynomial.variable()
    A: list[QPolynomial] = [QPolynomial()]
    for i in range(1, T):
        b = bernoulli(i)
        if b:
            sign = 1 if (i - 1) % 2 == 0 else -1
            A.append((power_sum_poly(i) - x) * (Q(sign) * b / (i * factorial(i))))
        else:
            A.append(QPolynomial())
    E = _exp_series_poly(A, T)
    total = QPolynomial()
    for m in range(r + 1):
        s = stirling1(r, m)
        if s:
            sign = 1 if m % 2 == 0 else -1
            total = total + E[m] * Q(sign * s * factorial(m))
    return total * (Q(4) ** r)


def _weight(i: int):
    """(B_i / i)(1 - (-1)^i B_i), the per-index factor of the low coefficients."""
    b = bernoulli(i)
    return b / i * (1 - ((-1) ** i) * b)


def sz_coeff_x(r: int):
    """Closed form for the coefficient of x in P_{01r}: 4^r sum_i [r,i] w_i.

    Here w_i = (B_i/i)(1 - (-1)^i B_i).  Negative for every r >= 1 tested.
    """
    if r < 1:
        raise ValueError("r must be positive")
    total = _Q0
    for i in range(1, r + 1):
        s = stirling1(r, i)
        if s:
            total += s * _weight(i)
    return Q(4) ** r * total


def sz_coeff_x2(r: int):
    """Closed form for the coefficient of x^2 in P_{01r}.

    4^r ( [r,1]/4 - [r,2]/24 + (1/2) sum_{i <= r/2} [r,2i] binom(2i,i) w_i^2
          + sum_{i<j} [r,i+j] binom(i+j,i) w_i w_j ),
    with the same weights w_i as sz_coeff_x.  Positive for every r >= 1
    tested.
    """
    if r < 1:
        raise ValueError("r must be positive")
    total = Q(stirling1(r, 1), 4) - Q(stirling1(r, 2), 24)
    for i in range(1, r // 2 + 1):
        s = stirling1(r, 2 * i)
        if s:
            total += Q(s * binomial(2 * i, i), 2) * _weight(i) ** 2
    for i in range(1, r + 1):
        wi = _weight(i)
        if not wi:
            continue
        for j in range(i + 1, r + 1):
            s = stirling1(r, i + j)
            if s:
                total += s * binomial(i + j, i) * wi * _weight(j)
    return Q(4) ** r * total


def m_polynomial(r: int) -> QPolynomial:
    """M_{01r}(x) = prod_{j=0}^{r-1} (x(x-1) + 4j), the companion polynomial.

    Equal to 4^r sum_m [r, m] (x(x-1)/4)^m by the defining product of the
    Stirling cycle generating function; alternating in the sense that
    M(-x) has all positive coefficients.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    x = QPolynomial.variable()
    quad = x * x - x
    total = QPolynomial((1,))
    for j in range(r):
        total = total * (quad + Q(4 * j))
    return total


def m_second_derivative_half(r: int):
    """M''_{01r}(1/2) in closed form: 2 (1 - sum_a 1/(16a-1)) prod_j (4j - 1/4).

    The sum runs over 1 <= a <= r-1 and the product over 1 <= j <= r-1; both
    are empty at r = 1 where the value is 2.
    """
    if r < 1:
        raise ValueError("r must be positive")
    total = _Q1
    for a in range(1, r):
        total -= Q(1, 16 * a - 1)
    prod = _Q1
    for j in range(1, r):
        prod *= 4 * j - Q(1, 4)
    return 2 * total * prod
