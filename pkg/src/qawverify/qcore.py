"""q-combinatorial primitives: Pochhammer symbols, Gaussian binomials and friends.

Everything returns a LaurentPoly.  Results are memoized; LaurentPoly is
immutable and hashable, and ``functools.lru_cache`` is thread-safe, so the
caches are transparent to concurrent callers.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from .exact.laurent import ONE, ZERO, LaurentPoly, as_poly, exact_div, var

Q = var("q")


def _exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    out = exact_div(p, d)
    if out is None:
        raise ArithmeticError(f"inexact division ({p}) / ({d})")
    return out


@lru_cache(maxsize=None)
def _poch(arg: LaurentPoly, base: LaurentPoly, n: int) -> LaurentPoly:
    if n == 0:
        return ONE
    return _poch(arg, base, n - 1) * (1 - arg * base ** (n - 1))


def poch(arg, base=None, n: int = 0) -> LaurentPoly:
    """(arg; base)_n = prod_{j<n} (1 - arg * base^j); base defaults to q."""
    if n < 0:
        raise ValueError("poch needs n >= 0")
    return _poch(as_poly(arg), Q if base is None else as_poly(base), n)


def poch_multi(args: Sequence, n: int, base=None) -> LaurentPoly:
    """(a1, a2, ...; base)_n."""
    out = ONE
    for a in args:
        out = out * poch(a, base, n)
    return out


def qint(m: int, q=None) -> LaurentPoly:
    """[m]_q = 1 + q + ... + q^{m-1} for m >= 0."""
    q = Q if q is None else as_poly(q)
    out = ZERO
    for j in range(m):
        out = out + q ** j
    return out


@lru_cache(maxsize=None)
def _qbinom(n: int, k: int, q: LaurentPoly) -> LaurentPoly:
    num = ONE
    den = ONE
    for j in range(k):
        num = num * (1 - q ** (n - j))
        den = den * (1 - q ** (j + 1))
    return _exact(num, den)


def qbinom(n: int, k, q=None) -> LaurentPoly:
    """Gaussian binomial; zero outside 0 <= k <= n and for non-integer k."""
    if k != int(k):
        return ZERO
    k = int(k)
    if n < 0 or k < 0 or k > n:
        return ZERO
    return _qbinom(n, min(k, n - k), Q if q is None else as_poly(q))


def qmultinom(n: int, parts: Sequence[int], q=None) -> LaurentPoly:
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ValueError(f"parts {list(parts)} do not form a composition of {n}")
    out = ONE
    left = n
    for p in parts:
        out = out * qbinom(left, p, q)
        left -= p
    return out


@lru_cache(maxsize=None)
def q_odd_double_factorial(n: int) -> LaurentPoly:
    """[1]_q [3]_q ... [2n-1]_q."""
    out = ONE
    for j in range(1, n + 1):
        out = out * qint(2 * j - 1)
    return out


def qbinom2(k: int) -> int:
    """binom(k, 2) for any integer k, as used in q^{binom(k,2)}."""
    return k * (k - 1) // 2


def _ballot(n: int, j: int) -> int:
    # binom(n, j) - binom(n, j-1) with binom = 0 outside the range
    def c(a, b):
        return comb(a, b) if 0 <= b <= a else 0

    return c(n, j) - c(n, j - 1)


@lru_cache(maxsize=None)
def opbar(n: int, m: int) -> LaurentPoly:
    """Mixed-moment kernel of the continuous q-Hermite functional, as a finite sum."""
    if n < m or (n - m) % 2:
        return ZERO
    out = ZERO
    for k in range(m, n + 1, 2):
        j = (k - m) // 2
        w = _ballot(n, (n - k) // 2)
        if w == 0:
            continue
        out = out + w * (-1) ** j * Q ** qbinom2(j + 1) * qbinom((k + m) // 2, j)
    return out
