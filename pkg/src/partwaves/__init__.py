"""Exact partial-fraction structure of the restricted partition function.

The generating function 1 / ((1-q)(1-q^2)...(1-q^N)) of partitions into parts
of size at most N splits over the complex roots of unity; this package
computes the coefficients of that splitting exactly (as cyclotomic rationals),
resums them into the Sylvester wave decomposition p_N(n) = W_1 + W_2 + ...,
and evaluates the large-N asymptotics of the k = 1, 2 coefficients.

Subpackages and modules:

* ``exact_arith``     -- rationals, Bernoulli/Stirling machinery, Q[x]
* ``cyclotomic``      -- the fields Q(zeta_k) and twisted Bernoulli sums
* ``rademacher_core`` -- the coefficients, four independent algorithms, waves
* ``asymptotics``     -- saddle-point constants, main terms, table/figure data
* ``cli``             -- the ``partwaves`` command
"""

from ._backend import BACKEND, Q

__version__ = "0.1.0"

__all__ = ["BACKEND", "Q", "__version__"]
