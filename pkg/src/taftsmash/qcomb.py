"""q-integers, q-factorials and Gaussian binomials.

Every function accepts either a concrete scalar (a root of unity in some
cyclotomic field) or a symbolic :class:`LaurentQ` such as ``q`` or ``q**k``.
Binomials at a scalar are always formed symbolically first and substituted
afterwards, so vanishing factors never meet in a 0/0.
"""

from fractions import Fraction
from functools import lru_cache

from .exactfield import CycloElem, LaurentQ


def _one_like(lam):
    if isinstance(lam, LaurentQ):
        return LaurentQ.constant(lam.conductor, 1)
    if isinstance(lam, CycloElem):
        return CycloElem.rational(lam.conductor, 1)
    return Fraction(1)


def q_int(n, lam):
    """[n]_lam = 1 + lam + ... + lam^(n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    one = _one_like(lam)
    total = one - one
    power = one
    for _ in range(n):
        total = total + power
        power = power * lam
    return total


def q_factorial(n, lam):
    """[n]_lam! = [1]_lam [2]_lam ... [n]_lam; the empty product is 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = _one_like(lam)
    for i in range(1, n + 1):
        result = result * q_int(i, lam)
    return result


@lru_cache(maxsize=None)
def gaussian_binomial(k, i, conductor=1):
    """The Gaussian binomial [k, i] as a polynomial in a symbolic q.

    Computed as the exact quotient [k]_q! / ([i]_q! [k-i]_q!).
    """
    if i < 0 or i > k:
        return LaurentQ(conductor)
    q = LaurentQ.q(conductor)
    num = q_factorial(k, q)
    den = q_factorial(i, q) * q_factorial(k - i, q)
    return num.exact_div(den)


def q_binomial(k, i, lam):
    """The Gaussian binomial [k, i] evaluated at lam (scalar or LaurentQ)."""
    if k < 0 or i < 0 or i > k:
        raise ValueError("need 0 <= i <= k")
    conductor = getattr(lam, "conductor", 1)
    poly = gaussian_binomial(k, i, conductor)
    if isinstance(lam, (int, Fraction)):
        lam = CycloElem.rational(1, lam)
    return poly.subs(lam)


def check_pascal_identity(k, conductor=1):
    """Check [k,1]_{q^2} + q [k,2]_q == [k+1,2]_q as Laurent polynomials."""
    if k < 2:
        raise ValueError("k must be at least 2")
    q = LaurentQ.q(conductor)
    lhs = q_binomial(k, 1, q * q) + q * q_binomial(k, 2, q)
    return lhs == q_binomial(k + 1, 2, q)
