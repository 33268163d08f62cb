"""Growth constants, the dilogarithm, and the numeric comparison tables."""

import cmath
import math

import mpmath
import pytest

from partwaves.asymptotics import (
    TABLE2_KEYS,
    AsymptoticConstants,
    TableRow,
    dilog,
    figure_series,
    find_w0,
    main_term_011,
    main_term_121,
    table1,
    table2,
)


def test_dilog_special_values():
    pi2 = math.pi**2
    assert dilog(1) == pytest.approx(pi2 / 6, rel=1e-14)
    assert dilog(-1) == pytest.approx(-pi2 / 12, rel=1e-14)
    assert dilog(0.5) == pytest.approx(pi2 / 12 - math.log(2) ** 2 / 2, rel=1e-14)
    assert dilog(0) == 0


def test_dilog_against_mpmath_grid():
    # sample every region of the evaluation strategy, |z| <= 2
    pts = []
    for rad in (0.2, 0.45, 0.7, 0.9, 1.0, 1.3, 1.7, 2.0):
        for deg in range(0, 360, 30):
            pts.append(rad * cmath.exp(1j * math.radians(deg)))
    worst = 0.0
    for z in pts:
        if abs(z - 1) < 1e-9 and abs(z) > 1:
            continue
        ref = complex(mpmath.polylog(2, complex(z)))
        got = dilog(z)
        err = abs(got - ref) / max(1.0, abs(ref))
        worst = max(worst, err)
    assert worst < 1e-12


def test_dilog_real_axis_branch():
    # just above and below the cut [1, oo)
    for x in (1.5, 3.0):
        up = dilog(complex(x, 1e-9))
        dn = dilog(complex(x, -1e-9))
        assert up.imag > 0 > dn.imag
        assert abs(up - complex(mpmath.polylog(2, complex(x, 1e-9)))) < 1e-9


def test_branch_point_constants():
    c = find_w0()
    assert isinstance(c, AsymptoticConstants)
    assert c.w0.real == pytest.approx(0.916197816207, abs=1e-9)
    assert c.w0.imag == pytest.approx(0.182458897207, abs=1e-9)
    assert c.z0.real == pytest.approx(1.18147496973, abs=1e-9)
    assert c.z0.imag == pytest.approx(-0.255527646418, abs=1e-9)
    assert c.U == pytest.approx(0.06807616208, abs=1e-10)
    assert c.V == pytest.approx(-0.1965761263, abs=1e-10)
    assert c.alpha == pytest.approx(5.395321882, abs=1e-8)
    assert c.beta == pytest.approx(1.927918898, abs=1e-8)
    assert c.alpha1 == pytest.approx(4.511294406, abs=1e-8)
    assert c.beta1 == pytest.approx(-1.300590874, abs=1e-8)
    assert c.alpha2 == pytest.approx(3.118322316, abs=1e-8)
    assert c.beta2 == pytest.approx(-1.028468575, abs=1e-8)


def test_oscillation_period():
    c = find_w0()
    assert -2 * math.pi / c.V == pytest.approx(31.9631, abs=1e-3)


def test_main_terms_at_200():
    assert main_term_011(200) == pytest.approx(33.8689, rel=2e-3)
    assert main_term_121(200) == pytest.approx(-0.0680541, rel=2e-3)


def test_main_term_real_form():
    # alpha sin(beta + N V) e^{N U} / N^2 is the same number as the
    # complex-power form used in the implementation
    c = find_w0()
    for N in (50, 137, 300):
        real_form = (c.alpha * math.sin(c.beta + N * c.V)
                     * math.exp(N * c.U) / N**2)
        assert main_term_011(N) == pytest.approx(real_form, rel=1e-12)


def test_figure_one_fixed_points():
    rows = dict((N, (s, m)) for N, s, m in figure_series("fig1", range(100, 104)))
    assert rows[100][0] == pytest.approx(1.42646, rel=2e-3)
    assert rows[100][1] == pytest.approx(4.85601, rel=2e-3)
    assert rows[103][0] == pytest.approx(-0.195683, rel=2e-3)


def test_figure_two_fixed_points():
    rows = dict((N, (s, m)) for N, s, m in figure_series("fig2", range(250, 501, 250)))
    assert rows[250][0] == pytest.approx(-0.0983738, rel=2e-3)
    assert rows[250][1] == pytest.approx(-1.40597, rel=2e-3)
    assert rows[500][0] == pytest.approx(0.364028, rel=2e-3)
    assert rows[500][1] == pytest.approx(0.289531, rel=2e-3)


def test_table2_keys_and_closed_forms():
    assert len(TABLE2_KEYS) == 8
    assert TABLE2_KEYS[0] == (0, 1, 1)
    from partwaves.asymptotics import _C_INF
    c011 = _C_INF[(0, 1, 1)]
    assert c011.real == pytest.approx(-6 / 25 - 12 * math.sqrt(3) / (125 * math.pi),
                                      rel=1e-12)
    c121 = _C_INF[(1, 2, 1)]
    want = (math.sqrt(3) - 3) / 25 + 12 * (math.sqrt(3) + 3) / (125 * math.pi)
    assert c121.real == pytest.approx(want, rel=1e-12)


def test_table1_row_400():
    rows = {(r.label, r.N): r for r in table1([400])}
    r011 = rows[("C011", 400)]
    assert f"{r011.exact_value:.6g}" == "-2.16712e+07"
    assert r011.main_term == pytest.approx(-2.17937e7, rel=2e-3)
    r121 = rows[("C121", 400)]
    assert f"{r121.exact_value:.6g}" == "-7.89072"
    assert r121.main_term == pytest.approx(-7.60602, rel=2e-3)


def test_figure_one_far_point():
    rows = dict((N, (s, m)) for N, s, m in figure_series("fig1", range(300, 301)))
    assert rows[300][0] == pytest.approx(-2.57232, rel=2e-3)
    assert rows[300][1] == pytest.approx(-2.56889, rel=2e-3)


def test_exact_values_match_recursion():
    # the table/figure exact values go through the wave shortcut; pin it to
    # the banded recursion at a mid-size N for each conductor
    from partwaves.asymptotics import _exact_011, _exact_121
    from partwaves.rademacher_core import c_recursive

    assert _exact_011(60) == float(c_recursive((0, 1, 1, 60)).rational_value())
    assert _exact_121(61) == float(c_recursive((1, 2, 1, 61)).rational_value())


@pytest.mark.slow
def test_table1_far_rows():
    expect = {
        ("C011", 600): ("-1.77255e+12", -1.80284e12),
        ("C121", 600): ("1838.23", 1963.12),
        ("C011", 800): ("3.71444e+18", 3.72536e18),
        ("C121", 800): ("2.91228e+06", 2.93686e6),
        ("C011", 1000): ("2.5407e+23", 2.58000e23),
        ("C121", 1000): ("1.77778e+09", 1.7713e9),
    }
    rows = {(r.label, r.N): r for r in table1([600, 800, 1000])}
    for key, (exact_str, main) in expect.items():
        assert f"{rows[key].exact_value:.6g}" == exact_str
        assert rows[key].main_term == pytest.approx(main, rel=2e-3)
