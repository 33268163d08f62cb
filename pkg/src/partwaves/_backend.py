"""Exact rational scalar backend.

Every exact computation in this package runs on one scalar type ``Q``:
arbitrary-precision rationals, always in lowest terms with positive
denominator.  Two interchangeable implementations exist:

* ``gmpy2.mpq`` -- GMP-backed, several times faster on the dense recursions;
* ``fractions.Fraction`` -- stdlib, always available.

gmpy2 is picked automatically when importable.  Set the environment variable
``PARTWAVES_BACKEND`` to ``gmpy2`` or ``fractions`` to force a choice
(forcing gmpy2 when it is not installed raises ImportError at import time).
"""

from __future__ import annotations

import os

__all__ = ["Q", "BACKEND", "RATIONAL_TYPES", "is_rational", "as_int_ratio"]

_choice = os.environ.get("PARTWAVES_BACKEND", "").strip().lower()

if _choice not in ("", "gmpy2", "fractions"):
    raise ImportError(f"PARTWAVES_BACKEND must be 'gmpy2' or 'fractions', got {_choice!r}")

if _choice in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Q

        BACKEND = "gmpy2"
    except ImportError:
        if _choice == "gmpy2":
            raise
        from fractions import Fraction as Q

        BACKEND = "fractions"
else:
    from fractions import Fraction as Q

    BACKEND = "fractions"

#: Types accepted wherever an exact rational is expected.
RATIONAL_TYPES = (int, type(Q(0)))


def is_rational(x) -> bool:
    """True if x is an exact rational scalar (int or backend rational)."""
    return isinstance(x, RATIONAL_TYPES)


def as_int_ratio(x) -> tuple[int, int]:
    """(numerator, denominator) of an exact rational as plain ints, lowest terms."""
    if isinstance(x, int):
        return x, 1
    return int(x.numerator), int(x.denominator)
