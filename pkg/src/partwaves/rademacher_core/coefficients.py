"""Exact Rademacher coefficients of the restricted partition generating function.

The reciprocal of (1-q)(1-q^2)...(1-q^N) has only roots of unity as poles, so
it decomposes over the keys (h, k, l) with 0 <= h < k <= N, gcd(h, k) = 1 and
1 <= l <= floor(N/k) into terms C_{hkl}(N) / (q e^{-2 pi i h / k} - 1)^l.  The
coefficients C_{hkl}(N) live in Q(zeta_k), and the restricted partition count
is recovered as

    p_N(n) = sum C_{hkl}(N) binom(l-1+n, l-1) (-1)^l zeta_k^{-h(l+n)}.

Several structurally independent exact routes to the same canonical value are
implemented: a truncated-product convolution (c_direct), a column recursion in
N (c_recursive, with a full residue-vector variant e_recursion), a two-index
row recursion derived from a quasi-partial-fraction expansion (c_sz), a direct
sum over weighted part-multisets (c_andrews), and a power-series residue
extraction (c_residue, which also evaluates out-of-range l where every route
must vanish).  Route agreement is the main correctness argument; p_oracle and
the wave sums provide external checks.

A note on normalization used throughout: with rho = zeta_k^h,

    C_{hkl}(N) = ((-1)^N rho^l (l-1)! / N!) [z^{N-l}] S_l(z) F_1(z)...F_N(z),

where S_l(z) = sum_j {l+j, l} z^j / (l-1+j)! and F_w(z) = sum_j beta_j(rho^w)
(wz)^j / j!.  For k-divisible w the factor F_w is the rational Bernoulli
series; otherwise beta_0 vanishes and F_w = wz * (unit series), which is what
makes the truncation order floor(N/k) - l + 1 rather than N - l + 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from .._backend import Q
from ..cyclotomic import (
    CycloElement,
    _Field,
    _field,
    _raw_add_scaled,
    _raw_apply,
    _raw_beta,
    _raw_inv,
    _raw_mul,
    _raw_mul_table,
    _raw_mul_zeta,
    _raw_zero,
)
from ..exact_arith import (
    _series_exp,
    _series_inv,
    _series_mul,
    bernoulli,
    bernoulli_at_fractions,
    binomial,
    factorial,
    higher_bernoulli,
    ramanujan_sum,
    stirling2,
)
__all__ = [
    "BudgetExceededError",
    "CoeffKey",
    "DecompositionTable",
    "ETable",
    "DEFAULT_ANDREWS_BUDGET",
    "andrews_term_count",
    "c_andrews",
    "c_direct",
    "c_exp_form",
    "c_recursive",
    "c_residue",
    "c_sum_over_h",
    "c_sz",
    "decompose",
    "e_recursion",
    "hockey_stick_check",
    "p_from_decomposition",
]

_Q0 = Q(0)
_Q1 = Q(1)

DEFAULT_ANDREWS_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """Raised when a requested enumeration would exceed its term budget."""


@dataclass(frozen=True, order=True)
class CoeffKey:
    """Key (h, k, l, N) of one partial-fraction coefficient.

    Requires 0 <= h < k <= N with gcd(h, k) = 1 and l >= 1.  Keys with
    l > floor(N/k) are legal; every route returns zero for them.
    """

    h: int
    k: int
    l: int
    N: int

    def __post_init__(self):
        h, k, l, N = self.h, self.k, self.l, self.N
        if not (isinstance(h, int) and isinstance(k, int) and isinstance(l, int) and isinstance(N, int)):
            raise TypeError("CoeffKey fields must be integers")
        if not 0 <= h < k:
            raise ValueError(f"need 0 <= h < k, got h={h}, k={k}")
        if k > N:
            raise ValueError(f"need k <= N, got k={k}, N={N}")
        if gcd(h, k) != 1:
            raise ValueError(f"h={h} and k={k} must be coprime")
        if l < 1:
            raise ValueError(f"need l >= 1, got l={l}")

    @property
    def s(self) -> int:
        """floor(N/k), the pole order of the generating function at zeta_k^h."""
        return self.N // self.k

    def in_range(self) -> bool:
        return self.l <= self.s


def _as_key(key) -> CoeffKey:
    if isinstance(key, CoeffKey):
        return key
    return CoeffKey(*key)


def _prefactor(key: CoeffKey):
    """(-1)^N (l-1)! / N! as an exact rational."""
    sign = 1 if key.N % 2 == 0 else -1
    return Q(sign * factorial(key.l - 1), factorial(key.N))


def _wrap(key: CoeffKey, raw) -> CycloElement:
    """Multiply a raw value by the shared prefactor and rho^l, return element."""
    F = _field(key.k)
    out = _raw_mul_zeta(F, raw, (key.h * key.l) % key.k)
    pref = _prefactor(key)
    return CycloElement(key.k, [c * pref for c in out])


# -- series helpers over raw cyclotomic coefficient lists ----------------------


def _rs_scalar(F: _Field, series) -> list:
    """Lift a scalar power series to a raw-coefficient series."""
    out = []
    for c in series:
        row = _raw_zero(F)
        row[0] = Q(c)
        out.append(row)
    return out


def _rs_mul(F: _Field, A: list, B: list, T: int) -> list:
    out = [_raw_zero(F) for _ in range(T)]
    for i, ai in enumerate(A[:T]):
        if not any(ai):
            continue
        for j, bj in enumerate(B[: T - i]):
            if any(bj):
                _raw_add_scaled(out[i + j], _raw_mul(F, ai, bj), 1)
    return out


def _rs_mul_scalar_series(F: _Field, A: list, g, T: int) -> list:
    """Product of a raw series with a scalar series, truncated."""
    out = [_raw_zero(F) for _ in range(T)]
    for i, ai in enumerate(A[:T]):
        if not any(ai):
            continue
        for j, gj in enumerate(g[: T - i]):
            if gj:
                _raw_add_scaled(out[i + j], ai, gj)
    return out


def _rs_inv(F: _Field, A: list, T: int) -> list:
    """Inverse of a raw series whose constant term is a unit."""
    b0 = _raw_inv(F, A[0])
    out = [b0]
    for n in range(1, T):
        acc = _raw_zero(F)
        for i in range(1, n + 1):
            if i < len(A) and any(A[i]):
                _raw_add_scaled(acc, _raw_mul(F, A[i], out[n - i]), -1)
        out.append(_raw_mul(F, b0, acc))
    return out


# -- route 1: truncated-product convolution ------------------------------------


def _stirling_column(l: int, T: int) -> list:
    """Coefficients {l+j, l} / (l-1+j)! for j < T."""
    return [Q(stirling2(l + j, l), factorial(l - 1 + j)) for j in range(T)]


def _bernoulli_factor(w: int, T: int) -> list:
    """Scalar series sum_j B_j (wz)^j / j!, truncated."""
    out = [_Q0] * T
    wp = 1
    for j in range(T):
        b = bernoulli(j)
        if b:
            out[j] = b * wp / factorial(j)
        wp *= w
    return out


def c_direct(key) -> CycloElement:
    """C_{hkl}(N) by convolving the factor series at truncation order s - l + 1.

    Factors with k-divisible part size contribute rational Bernoulli series;
    the remaining factors contribute one power of z each, extracted up front
    together with their part sizes, leaving unit series with constant term
    beta_1(rho^w) = 1/(rho^w - 1).
    """
    key = _as_key(key)
    h, k, l, N = key.h, key.k, key.l, key.N
    if not key.in_range():
        return CycloElement.zero(k)
    T = key.s - l + 1

    scalar = _stirling_column(l, T)
    for w in range(k, N + 1, k):
        scalar = _series_mul(scalar, _bernoulli_factor(w, T), T)

    if k == 1:
        out = _raw_zero(_field(1))
        out[0] = scalar[T - 1]
        return _wrap(key, out)

    F = _field(k)
    acc = _rs_scalar(F, scalar)
    multiplier = 1
    for w in range(1, N + 1):
        if w % k == 0:
            continue
        multiplier *= w
        unit = []
        wp = 1
        for j in range(T):
            row = list(_raw_beta(k, j + 1, h * w))
            scale = Q(wp, factorial(j + 1))
            unit.append([c * scale for c in row])
            wp *= w
        acc = _rs_mul(F, acc, unit, T)
    return _wrap(key, [c * multiplier for c in acc[T - 1]])


# -- route 1b: k = 1 exponential form and its convolution rearrangements -------


def c_exp_form(l: int, N: int):
    """C_{01l}(N) from a single exponential generating series.

    Exponentiates z + sum_m (-1)^(m-1) B_m (s_m(N) + 1 - l) z^m / (m m!) where
    s_m(N) = 1^m + ... + N^m, then reads off the z^(N-l) coefficient times
    (-1)^N / N!.  Rational output; only defined for the k = 1 tower.
    """
    if l < 1 or N < 1:
        raise ValueError("need l >= 1 and N >= 1")
    if l > N:
        return _Q0
    T = N - l + 1
    expo = [_Q0] * T
    if T > 1:
        expo[1] = _Q1
    pows = [0] * T  # s_m(N) accumulated below
    for j in range(1, N + 1):
        jp = j
        for m in range(1, T):
            pows[m] += jp
            jp *= j
    for m in range(1, T):
        b = bernoulli(m)
        if b:
            sign = 1 if (m - 1) % 2 == 0 else -1
            expo[m] += Q(sign) * b * (pows[m] + 1 - l) / (m * factorial(m))
    series = _series_exp(expo, T)
    sign = 1 if N % 2 == 0 else -1
    return Q(sign, factorial(N)) * series[T - 1]


def _k1_bernoulli_product(N: int, T: int, alternate_first: bool = False) -> list:
    """Product of the N rational Bernoulli factor series, truncated.

    With alternate_first the w = 1 factor carries weight (-1)^j instead of 1.
    """
    prod = [_Q1] + [_Q0] * (T - 1)
    for w in range(1, N + 1):
        fac = _bernoulli_factor(w, T)
        if w == 1 and alternate_first:
            fac = [c if j % 2 == 0 else -c for j, c in enumerate(fac)]
        prod = _series_mul(prod, fac, T)
    return prod


def _c01_convolution_forms(l: int, N: int) -> tuple:
    """Four equivalent convolution sums for C_{01l}(N), returned as a tuple.

    In order: the padded form with an extra exp(z) column, the alternating
    form absorbing that column into the w = 1 factor, the higher-order
    Bernoulli form B_j^(1-l)(1), and the Stirling-ratio form {l+j, l}/(l-1+j)!.
    All four must agree with c_direct and c_exp_form; they exercise different
    helper identities, which is the point.
    """
    if not 1 <= l <= N:
        raise ValueError("need 1 <= l <= N")
    T = N - l + 1
    sign = 1 if N % 2 == 0 else -1
    pref = Q(sign * factorial(l - 1), factorial(N))

    base = _k1_bernoulli_product(N, T)

    exp_col = [Q(1, factorial(i)) for i in range(T)]
    low_col = [Q(stirling2(l - 1 + j, l - 1), factorial(l - 1 + j)) for j in range(T)]
    padded = pref * _series_mul(_series_mul(exp_col, low_col, T), base, T)[T - 1]

    alt = _k1_bernoulli_product(N, T, alternate_first=True)
    alternating = pref * _series_mul(low_col, alt, T)[T - 1]

    hb_col = [higher_bernoulli(j, 1 - l, 1) / factorial(j) for j in range(T)]
    higher = Q(sign, factorial(N)) * _series_mul(hb_col, base, T)[T - 1]

    ratio = pref * _series_mul(_stirling_column(l, T), base, T)[T - 1]

    return padded, alternating, higher, ratio


# -- route 2: column recursion in N --------------------------------------------

_STEP_VECS: dict[tuple[int, int], tuple] = {}


def _step_vec(k: int, a: int) -> tuple:
    """(k^(a-1)/a!) B_a(j/k) for j = 0..k-1."""
    vec = _STEP_VECS.get((k, a))
    if vec is None:
        scale = Q(k) ** (a - 1) / factorial(a)
        vec = tuple(scale * b for b in bernoulli_at_fractions(a, k))
        _STEP_VECS[(k, a)] = vec
    return vec


class ETable:
    """Residue-vector table E_{kl}(N, m; r) for one tower (k, l).

    Entirely rational: the root of unity is kept symbolic as the residue index
    r, so Galois conjugation and the Ramanujan-sum aggregation over h both act
    on the same table.  Rows are built on demand and kept for reuse.
    """

    def __init__(self, k: int, l: int):
        if k < 1 or l < 1:
            raise ValueError("need k >= 1 and l >= 1")
        self.k = k
        self.l = l
        self._rows: dict[tuple[int, int], tuple] = {}
        self._built = -1

    def _ensure(self, N: int) -> None:
        if N <= self._built:
            return
        k, l = self.k, self.l
        rows = self._rows
        for m in range(l, N + 1):
            if (0, m) not in rows:
                row = [_Q0] * k
                row[0] = Q(stirling2(m, l), factorial(m - 1))
                rows[(0, m)] = tuple(row)
        for n in range(1, N + 1):
            for m in range(l, N + 1):
                if (n, m) in rows:
                    continue
                acc = [_Q0] * k
                npow = 1
                for a in range(m - l + 1):
                    prev = rows[(n - 1, m - a)]
                    vec = _step_vec(k, a)
                    if any(prev):
                        for r in range(k):
                            conv = _Q0
                            for j in range(k):
                                pj = prev[(r - n * j) % k]
                                if pj:
                                    conv += pj * vec[j]
                            if conv:
                                acc[r] += npow * conv
                    npow *= n
                rows[(n, m)] = tuple(acc)
        self._built = N

    def value(self, N: int, m: int) -> tuple:
        """The length-k vector (E(N, m; 0), ..., E(N, m; k-1))."""
        if m < self.l:
            return tuple([_Q0] * self.k)
        self._ensure(max(N, m))
        return self._rows[(N, m)]

    def coefficient(self, h: int, N: int) -> CycloElement:
        """C_{hkl}(N) = ((-1)^N (l-1)!/N!) sum_r rho^(r+l) E(N, N; r)."""
        k, l = self.k, self.l
        if gcd(h, k) != 1 or not 0 <= h < k:
            raise ValueError("h must satisfy 0 <= h < k and gcd(h, k) = 1")
        F = _field(k)
        row = self.value(N, N)
        acc = _raw_zero(F)
        for r in range(k):
            if row[r]:
                _raw_add_scaled(acc, F.rows[(h * (r + l)) % k], row[r])
        key = CoeffKey(h, k, l, N)
        sign = 1 if N % 2 == 0 else -1
        pref = Q(sign * factorial(l - 1), factorial(N))
        return CycloElement(k, [c * pref for c in acc])

    def sum_over_h(self, N: int):
        """sum_h C_{hkl}(N) as a rational, via Ramanujan sums c_k(r + l)."""
        row = self.value(N, N)
        total = _Q0
        for r in range(self.k):
            if row[r]:
                total += row[r] * ramanujan_sum(self.k, r + self.l)
        sign = 1 if N % 2 == 0 else -1
        return Q(sign * factorial(self.l - 1), factorial(N)) * total


_E_TABLES: dict[tuple[int, int], ETable] = {}


def e_recursion(k: int, l: int, N: int) -> ETable:
    """The (k, l) residue-vector table, built at least through level N."""
    tab = _E_TABLES.get((k, l))
    if tab is None:
        tab = ETable(k, l)
        _E_TABLES[(k, l)] = tab
    tab._ensure(N)
    return tab


def c_sum_over_h(k: int, l: int, N: int):
    """Rational aggregate sum_h C_{hkl}(N) over all h coprime to k."""
    if l > N // k:
        return _Q0
    return e_recursion(k, l, N).sum_over_h(N)


def hockey_stick_check(j: int, r: int) -> bool:
    """Whether sum_{t=j}^{r-1} binom(t, j) equals binom(r, j+1)."""
    return sum(binomial(t, j) for t in range(j, r)) == binomial(r, j + 1)


class _DiagTable:
    """Banded recursion for D(n, m) = sum_r zeta_k^r E(n, m; r), one per (k, l).

    Carrying the projection to Q(zeta_k) instead of the full residue vector
    cuts the row work by a factor of k; h re-enters later by conjugation.  For
    conductors 1 and 2 the field is Q and everything stays scalar, with
    beta_a(-1) = (2^a - 1) B_a.  Only the diagonal values D(n, n) are kept
    after a level is consumed; the band floor m >= l + (n - n // k) reflects
    beta_0 vanishing at every part size not divisible by k.
    """

    __slots__ = ("k", "l", "cap", "diag", "_scalar")

    def __init__(self, k: int, l: int):
        self.k = k
        self.l = l
        self.cap = 0
        self.diag: dict[int, object] = {}
        self._scalar = _field(k).phi == 1

    def _beta_scalar(self, a: int, c: int):
        if c == 0:
            return bernoulli(a)
        return (2**a - 1) * bernoulli(a)  # k = 2, zeta = -1

    def _beta_table(self, a: int, c: int):
        """Multiplication table for beta_a(zeta_k^c), None when beta is zero.

        Shared across every tower of the same conductor; the recursion applies
        one such element to a whole level, so the table form is the difference
        between phi^2 and phi^3 work per step.
        """
        key = (self.k, a, c)
        try:
            return _BETA_MUL_TABLES[key]
        except KeyError:
            beta = _raw_beta(self.k, a, c)
            table = _raw_mul_table(_field(self.k), beta) if any(beta) else None
            _BETA_MUL_TABLES[key] = table
            return table

    def ensure(self, N: int, exact: bool = False) -> None:
        """Grow the table to cover level N.

        Growth doubles the cap so that incremental n, n+1, ... querying stays
        amortized; pass exact=True when the final level is known up front (a
        rebuild at the doubled cap can cost several times the needed one).
        """
        if N <= self.cap:
            return
        cap = N if exact else max(N, 2 * self.cap)
        k, l = self.k, self.l
        scalar = self._scalar
        F = None if scalar else _field(k)

        # level holds row n-1 as a list indexed by m - floor_prev; the factors
        # that depend only on (n, a) are hoisted out of the m loop, which is
        # what keeps the deep caps (several hundred) tractable
        if scalar:
            level = [Q(stirling2(m, l), factorial(m - 1)) for m in range(l, cap + 1)]
        else:
            level = []
            for m in range(l, cap + 1):
                row = _raw_zero(F)
                row[0] = Q(stirling2(m, l), factorial(m - 1))
                level.append(row)

        floor_prev = l
        for n in range(1, cap + 1):
            c = n % k
            floor_cur = l + (n - n // k)
            width = cap - floor_prev
            npow = 1
            if scalar:
                mults = []
                for a in range(width + 1):
                    b = self._beta_scalar(a, c)
                    mults.append(b * Q(npow, factorial(a)) if b else None)
                    npow *= n
                cur = []
                for m in range(floor_cur, cap + 1):
                    acc = _Q0
                    hi = m - floor_prev
                    for a in range(hi + 1):
                        mu = mults[a]
                        if mu is None:
                            continue
                        src = level[hi - a]
                        if src:
                            acc += src * mu
                    cur.append(acc)
            else:
                qnf = []
                tables = []
                for a in range(width + 1):
                    if c == 0:
                        b = bernoulli(a)
                        qnf.append(b * Q(npow, factorial(a)) if b else None)
                        tables.append(None)
                    else:
                        table = self._beta_table(a, c)
                        tables.append(table)
                        qnf.append(Q(npow, factorial(a)) if table is not None else None)
                    npow *= n
                live = [any(row) for row in level]
                cur = []
                for m in range(floor_cur, cap + 1):
                    acc = _raw_zero(F)
                    hi = m - floor_prev
                    for a in range(hi + 1):
                        mu = qnf[a]
                        if mu is None or not live[hi - a]:
                            continue
                        src = level[hi - a]
                        if c == 0:
                            _raw_add_scaled(acc, src, mu)
                        else:
                            _raw_add_scaled(acc, _raw_apply(tables[a], src), mu)
                    cur.append(acc)
            if floor_cur <= n:
                self.diag[n] = cur[n - floor_cur]
            level = cur
            floor_prev = floor_cur
        self.cap = cap

    def assemble(self, h: int, N: int) -> CycloElement:
        """C_{hkl}(N) from the cached diagonal, conjugated to the h-th root."""
        self.ensure(N)
        k, l = self.k, self.l
        key = CoeffKey(h, k, l, N)
        if not key.in_range():
            return CycloElement.zero(k)
        val = self.diag[N]
        if self._scalar:
            rot = val if (k == 1 or (h * l) % 2 == 0) else -val
            return CycloElement.from_rational(k, rot * _prefactor(key))
        F = _field(k)
        conj = _raw_zero(F)
        for i, vi in enumerate(val):
            if vi:
                _raw_add_scaled(conj, F.rows[(i * h) % k], vi)
        return _wrap(key, conj)


_DIAG_TABLES: dict[tuple[int, int], _DiagTable] = {}
_BETA_MUL_TABLES: dict[tuple[int, int, int], tuple | None] = {}


def _diag_table(k: int, l: int) -> _DiagTable:
    tab = _DIAG_TABLES.get((k, l))
    if tab is None:
        tab = _DiagTable(k, l)
        _DIAG_TABLES[(k, l)] = tab
    return tab


def c_recursive(key) -> CycloElement:
    """C_{hkl}(N) by the banded column recursion; the fast exact route.

    Levels are shared and cached per tower (k, l), so sweeps over N or h cost
    one recursion pass.  Matches c_direct term by term in exact arithmetic.
    """
    key = _as_key(key)
    return _diag_table(key.k, key.l).assemble(key.h, key.N)


# -- route 3: two-index row recursion ------------------------------------------

_SZ_T: dict[tuple[int, int], tuple] = {}


def _sz_t(k: int, c: int) -> tuple:
    """zeta_k^c / (1 - zeta_k^c) as a raw tuple, cached."""
    val = _SZ_T.get((k, c))
    if val is None:
        F = _field(k)
        one_minus = [-x for x in F.rows[c]]
        one_minus[0] = one_minus[0] + _Q1
        val = tuple(_raw_mul(F, F.rows[c], _raw_inv(F, one_minus)))
        _SZ_T[(k, c)] = val
    return val


def _sz_pole_prefactor(key: CoeffKey) -> CycloElement:
    """(-1)^s rho^l / (k^(2s) s!) times prod_{d=1}^{N mod k} 1/(1 - rho^d)."""
    h, k, l, N = key.h, key.k, key.l, key.N
    s = key.s
    F = _field(k)
    acc = _raw_zero(F)
    acc[0] = Q((-1) ** s) / (Q(k) ** (2 * s) * factorial(s))
    acc = _raw_mul_zeta(F, acc, (h * l) % k)
    for d in range(1, N - k * s + 1):
        one_minus = [-x for x in F.rows[(h * d) % k]]
        one_minus[0] = one_minus[0] + _Q1
        acc = _raw_mul(F, acc, _raw_inv(F, one_minus))
    return CycloElement(k, acc)


def c_sz(key) -> CycloElement:
    """C_{hkl}(N) from the Q(n, a) double recursion over weighted part counts.

    Q(n, a) = Q(n-1, a) + sum_b G(n, b) Q(n, a-b) with G(n, b) equal to
    -binom(n, b+1)/n at k-divisible n and (rho^n/(1-rho^n)) binom(n, b)
    otherwise; the answer is the pole prefactor times Q(N, s - l).
    """
    key = _as_key(key)
    h, k, l, N = key.h, key.k, key.l, key.N
    if not key.in_range():
        return CycloElement.zero(k)
    s = key.s
    amax = s - l
    pref = _sz_pole_prefactor(key)
    if amax == 0:
        return pref

    scalar = _field(k).phi == 1
    if scalar:
        prev = [_Q0] * (amax + 1)
        for n in range(1, N + 1):
            cur = [_Q1] + [_Q0] * amax
            if n % k == 0:
                g = [_Q0, *(Q(-binomial(n, b + 1), n) for b in range(1, amax + 1))]
            else:  # k = 2, odd n, rho^n/(1-rho^n) = -1/2
                g = [_Q0, *(Q(-binomial(n, b), 2) for b in range(1, amax + 1))]
            for a in range(1, amax + 1):
                acc = prev[a]
                for b in range(1, a + 1):
                    if g[b] and cur[a - b]:
                        acc += g[b] * cur[a - b]
                cur[a] = acc
            prev = cur
        return pref * CycloElement.from_rational(k, prev[amax])

    F = _field(k)
    prev = [_raw_zero(F) for _ in range(amax + 1)]
    one = _raw_zero(F)
    one[0] = _Q1
    for n in range(1, N + 1):
        cur = [list(one)] + [None] * amax
        c = (h * n) % k
        if n % k == 0:
            for a in range(1, amax + 1):
                acc = list(prev[a])
                for b in range(1, a + 1):
                    _raw_add_scaled(acc, cur[a - b], Q(-binomial(n, b + 1), n))
                cur[a] = acc
        else:
            t = _sz_t(k, c)
            for a in range(1, amax + 1):
                inner = _raw_zero(F)
                for b in range(1, a + 1):
                    _raw_add_scaled(inner, cur[a - b], binomial(n, b))
                acc = list(prev[a])
                _raw_add_scaled(acc, _raw_mul(F, inner, t), 1)
                cur[a] = acc
        prev = cur
    return pref * CycloElement(k, prev[amax])


# -- route 4: direct sum over weighted part-multisets --------------------------


def andrews_term_count(key) -> int:
    """Number of summands in the c_andrews enumeration for this key."""
    key = _as_key(key)
    if not key.in_range():
        return 0
    a = key.s - key.l
    return sum(
        binomial(a - 1, m - 1) * binomial(key.N + m - 1, m) for m in range(1, a + 1)
    )


def c_andrews(key, budget: int | None = None) -> CycloElement:
    """C_{hkl}(N) as an explicit finite sum over nondecreasing part tuples.

    Each summand is a product of G(r, i) weights over a tuple r_1 <= ... <= r_m
    with positive exponents i_1 + ... + i_m = s - l; ties in r carry their i's
    in tuple order, so equal parts with permuted exponents count separately.
    The enumeration size is checked against the budget (default 10^7) before
    any work happens, and BudgetExceededError names both numbers.  The deepest
    loop aggregates the final factor through suffix sums, which shrinks the
    visited tree well below the nominal term count.
    """
    key = _as_key(key)
    h, k, l, N = key.h, key.k, key.l, key.N
    if not key.in_range():
        return CycloElement.zero(k)
    limit = DEFAULT_ANDREWS_BUDGET if budget is None else budget
    count = andrews_term_count(key)
    if count > limit:
        raise BudgetExceededError(
            f"enumeration for {key} needs {count} terms, budget is {limit}"
        )
    pref = _sz_pole_prefactor(key)
    a = key.s - l
    if a == 0:
        return pref

    scalar = _field(k).phi == 1
    if scalar:
        G = [None] * (N + 1)
        for r in range(1, N + 1):
            if r % k == 0:
                G[r] = [_Q0, *(Q(-binomial(r, i + 1), r) for i in range(1, a + 1))]
            else:
                G[r] = [_Q0, *(Q(-binomial(r, i), 2) for i in range(1, a + 1))]
        suffix = [None] * (a + 1)
        for i in range(1, a + 1):
            tail = [_Q0] * (N + 2)
            for r in range(N, 0, -1):
                tail[r] = tail[r + 1] + G[r][i]
            suffix[i] = tail

        total = _Q0

        def walk(rem: int, rmin: int, prefix) -> None:
            nonlocal total
            total += prefix * suffix[rem][rmin]
            for i in range(1, rem):
                for r in range(rmin, N + 1):
                    g = G[r][i]
                    if g:
                        walk(rem - i, r, prefix * g)

        walk(a, 1, _Q1)
        return pref * CycloElement.from_rational(k, total)

    F = _field(k)
    G = [None] * (N + 1)
    for r in range(1, N + 1):
        if r % k == 0:
            row0 = _raw_zero(F)
            grow = []
            for i in range(1, a + 1):
                e = _raw_zero(F)
                e[0] = Q(-binomial(r, i + 1), r)
                grow.append(e)
            G[r] = [row0] + grow
        else:
            t = _sz_t(k, (h * r) % k)
            G[r] = [_raw_zero(F)] + [
                [c * binomial(r, i) for c in t] for i in range(1, a + 1)
            ]
    suffix = [None] * (a + 1)
    for i in range(1, a + 1):
        tail = [_raw_zero(F) for _ in range(N + 2)]
        for r in range(N, 0, -1):
            row = list(tail[r + 1])
            _raw_add_scaled(row, G[r][i], 1)
            tail[r] = row
        suffix[i] = tail

    total = _raw_zero(F)

    def walk_raw(rem: int, rmin: int, prefix) -> None:
        _raw_add_scaled(total, _raw_mul(F, prefix, suffix[rem][rmin]), 1)
        for i in range(1, rem):
            for r in range(rmin, N + 1):
                g = G[r][i]
                if any(g):
                    walk_raw(rem - i, r, _raw_mul(F, prefix, g))

    start = _raw_zero(F)
    start[0] = _Q1
    walk_raw(a, 1, start)
    return pref * CycloElement(k, total)


# -- route 5: power-series residue extraction ----------------------------------


def c_residue(key) -> CycloElement:
    """C_{hkl}(N) as rho^l times the z = 0 residue of an explicit kernel.

    The kernel e^z (e^z - 1)^(l-1) / prod_w (1 - rho^w e^(wz)) acquires a pole
    of order s = floor(N/k) from the k-divisible factors only, so the residue
    is a z^(s-1) coefficient after pulling those zeros out.  Works unchanged
    for l > s, where the zero of order l - 1 wins and the residue vanishes;
    this is the route used to confirm out-of-range keys die.
    """
    key = _as_key(key)
    h, k, l, N = key.h, key.k, key.l, key.N
    s = key.s
    T = s

    # e^z (e^z - 1)^(l-1), truncated; valuation l - 1 may already kill it
    kernel = [Q(1, factorial(i)) for i in range(T)]
    em1 = [_Q0] + [Q(1, factorial(i)) for i in range(1, T)]
    for _ in range(l - 1):
        kernel = _series_mul(kernel, em1, T)
    # unit parts of the k-divisible factors, inverted: (e^(jkz)-1)/(jkz)
    for j in range(1, s + 1):
        w = j * k
        unit = [Q(w**i, factorial(i + 1)) for i in range(T)]
        kernel = _series_mul(kernel, _series_inv(unit, T), T)

    sign = 1 if s % 2 == 0 else -1
    pref = Q(sign) / (Q(k) ** s * factorial(s))
    if k == 1:
        return CycloElement.from_rational(1, kernel[T - 1] * pref)

    F = _field(k)
    acc = _rs_scalar(F, kernel)
    for w in range(1, N + 1):
        if w % k == 0:
            continue
        fac = []
        wp = 1
        for i in range(T):
            row = [-c * Q(wp, factorial(i)) for c in F.rows[(h * w) % k]]
            if i == 0:
                row[0] += _Q1
            fac.append(row)
            wp *= w
        acc = _rs_mul(F, acc, _rs_inv(F, fac, T), T)
    out = _raw_mul_zeta(F, acc[T - 1], (h * l) % k)
    return CycloElement(k, [c * pref for c in out])


# -- full decomposition and reconstruction -------------------------------------


@dataclass
class DecompositionTable:
    """All coefficients C_{hkl}(N) for one N, keyed and exactly serializable."""

    N: int
    entries: dict[CoeffKey, CycloElement] = field(default_factory=dict)

    def value(self, key) -> CycloElement:
        return self.entries[_as_key(key)]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "entries": [
                {"h": key.h, "k": key.k, "l": key.l, "value": val.to_dict()}
                for key, val in self.entries.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "DecompositionTable":
        N = int(data["N"])
        table = cls(N)
        for row in data["entries"]:
            key = CoeffKey(int(row["h"]), int(row["k"]), int(row["l"]), N)
            table.entries[key] = CycloElement.from_dict(row["value"])
        return table

    @classmethod
    def from_json(cls, text: str) -> "DecompositionTable":
        return cls.from_dict(json.loads(text))

    def csv_rows(self):
        """Numeric rows (h, k, l, re, im) at 15 significant digits.

        Values use the standard embedding zeta_k = e^(2 pi i / k); the h
        dependence is already baked into the stored element.
        """
        for key, val in self.entries.items():
            z = val.embed()
            yield key.h, key.k, key.l, f"{z.real:.15g}", f"{z.imag:.15g}"


def decompose(N: int) -> DecompositionTable:
    """Every coefficient for the level-N generating function, exactly.

    Keys run over k <= N, l <= floor(N/k) and h coprime to k, ordered by
    (k, l, h).  Each tower (k, l) costs one shared recursion pass; the h's
    are Galois conjugates of each other.
    """
    if N < 1:
        raise ValueError("N must be positive")
    table = DecompositionTable(N)
    for k in range(1, N + 1):
        for l in range(1, N // k + 1):
            tab = _diag_table(k, l)
            tab.ensure(N)
            for h in range(k):
                if gcd(h, k) == 1:
                    table.entries[CoeffKey(h, k, l, N)] = tab.assemble(h, N)
    return table


def p_from_decomposition(table: DecompositionTable, n: int) -> int:
    """Reconstruct p_N(n) from a decomposition table; must come out integral.

    Sums C_{hkl}(N) binom(l-1+n, l-1) (-1)^l zeta_k^{-h(l+n)} per conductor,
    checks each conductor's aggregate is rational (the h-sum is Galois
    stable), and checks the grand total is an integer.  A failure of either
    check means a coefficient is wrong, so it raises instead of rounding.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    per_k: dict[int, list] = {}
    for key, val in table.entries.items():
        F = _field(key.k)
        acc = per_k.get(key.k)
        if acc is None:
            acc = _raw_zero(F)
            per_k[key.k] = acc
        sign = -1 if key.l % 2 else 1
        weight = sign * binomial(key.l - 1 + n, key.l - 1)
        rot = _raw_mul_zeta(F, val.coeffs, (-key.h * (key.l + n)) % key.k)
        _raw_add_scaled(acc, rot, weight)
    total = _Q0
    for k, acc in per_k.items():
        if any(acc[1:]):
            raise ArithmeticError(f"conductor {k} aggregate is not rational: {acc}")
        total += acc[0]
    num, den = total.numerator, total.denominator
    if den != 1:
        raise ArithmeticError(f"reconstruction gave non-integer {total}")
    return int(num)
