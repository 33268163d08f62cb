"""Backend selection and the rational scalar contract."""

import subprocess
import sys

from partwaves._backend import BACKEND, Q, as_int_ratio, is_rational


def test_q_arithmetic_lowest_terms():
    assert Q(2, 4) == Q(1, 2)
    assert Q(1, 3) + Q(1, 6) == Q(1, 2)
    assert Q(-3, 9) * Q(3) == Q(-1)
    assert Q(7, 2) / Q(7) == Q(1, 2)
    assert as_int_ratio(Q(-6, 4)) == (-3, 2)
    assert as_int_ratio(5) == (5, 1)


def test_is_rational():
    assert is_rational(3)
    assert is_rational(Q(1, 2))
    assert not is_rational(0.5)
    assert not is_rational("1/2")


def test_backend_is_one_of_the_two():
    assert BACKEND in ("gmpy2", "fractions")


def test_fractions_override_subprocess():
    out = subprocess.run(
        [sys.executable, "-c", "from partwaves._backend import BACKEND, Q; "
                               "print(BACKEND, Q(10, 4))"],
        capture_output=True, text=True,
        env={"PATH": "/usr/bin:/bin", "PARTWAVES_BACKEND": "fractions"},
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["fractions", "5/2"]


def test_bogus_override_rejected():
    out = subprocess.run(
        [sys.executable, "-c", "import partwaves._backend"],
        capture_output=True, text=True,
        env={"PATH": "/usr/bin:/bin", "PARTWAVES_BACKEND": "decimal"},
    )
    assert out.returncode != 0
    assert "PARTWAVES_BACKEND" in out.stderr
