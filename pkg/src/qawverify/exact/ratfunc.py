"""Rational functions num/den over LaurentPoly.

Reduction policy: monomial and rational-content factors are always cleared
from the denominator.  A true gcd is only taken when the denominator is
univariate (the common case: products of (1 - q^j) factors); otherwise we
settle for an exact-divisibility check.  Equality always goes through
cross-multiplication, so unreduced forms are never a correctness issue.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Union

from .laurent import ONE, VAR_INDEX, ZERO, LaurentPoly, Scalar, as_poly, exact_div

Upoly = List[Fraction]  # dense, index = exponent


def _to_upoly(p: LaurentPoly, name: str) -> Upoly:
    coeffs = p.coefficients_in(name)
    deg = max(coeffs)
    out = [Fraction(0)] * (deg + 1)
    for e, c in coeffs.items():
        out[e] = Fraction(c.constant_value())
    return out


def _from_upoly(u: Upoly, name: str) -> LaurentPoly:
    out = ZERO
    for e, c in enumerate(u):
        if c:
            out = out + LaurentPoly.monomial({name: e}, c)
    return out


def _strip(u: Upoly) -> Upoly:
    while u and u[-1] == 0:
        u.pop()
    return u


def _umod(a: Upoly, b: Upoly) -> Upoly:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        _strip(a)
    return a


def ugcd(a: Upoly, b: Upoly) -> Upoly:
    """Monic gcd of two dense univariate polynomials over Q."""
    a = _strip(list(a))
    b = _strip(list(b))
    while b:
        a, b = b, _strip(_umod(a, b))
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def _univariate_var(p: LaurentPoly) -> str | None:
    vs = p.variables()
    if len(vs) == 1:
        return next(iter(vs))
    return None


def _gcd_with_univariate(den: LaurentPoly, num: LaurentPoly, name: str) -> LaurentPoly:
    """gcd(den, num) where den is a univariate polynomial in ``name``."""
    g = _to_upoly(den, name)
    # gcd with every coefficient of num viewed as a polynomial over the other variables
    buckets: Dict[tuple, Dict[int, Fraction]] = {}
    idx = VAR_INDEX[name]
    for exps, c in num.terms():
        rest = exps[:idx] + (0,) + exps[idx + 1:]
        buckets.setdefault(rest, {})[exps[idx]] = Fraction(c)
    for coeffs in buckets.values():
        if len(g) <= 1:
            break
        lo = min(coeffs)
        hi = max(coeffs)
        u = [Fraction(0)] * (hi - lo + 1)
        for e, c in coeffs.items():
            u[e - lo] = c
        g = ugcd(g, u)
    return _from_upoly(g, name) if len(g) > 1 else ONE


class RatFunc:
    """Immutable quotient of two Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduce: bool = True):
        num = as_poly(num)
        den = ONE if den is None else as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if _reduce:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        return cls(as_poly(v), ONE, _reduce=False)

    # inspection ---------------------------------------------------------

    def is_poly(self) -> bool:
        return self.den == ONE

    def as_poly(self) -> LaurentPoly:
        """Return the polynomial value, raising if the denominator does not divide."""
        if self.den == ONE:
            return self.num
        q = exact_div(self.num, self.den)
        if q is None:
            raise ArithmeticError(f"not a polynomial: ({self.num})/({self.den})")
        return q

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _c(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return RatFunc.of(other)
        return NotImplemented

    def __add__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return RatFunc(self.num + other.num, d1)
        if d2 == ONE:
            return RatFunc(self.num + other.num * d1, d1, _reduce=False)
        if d1 == ONE:
            return RatFunc(self.num * d2 + other.num, d2, _reduce=False)
        v1, v2 = _univariate_var(d1), _univariate_var(d2)
        if v1 is not None and v1 == v2:
            g = _gcd_with_univariate(d1, d2, v1)
            m1 = exact_div(d2, g)
            m2 = exact_div(d1, g)
            return RatFunc(self.num * m1 + other.num * m2, d1 * m1)
        m = exact_div(d1, d2)
        if m is not None:
            return RatFunc(self.num + other.num * m, d1)
        m = exact_div(d2, d1)
        if m is not None:
            return RatFunc(self.num * m + other.num, d2)
        return RatFunc(self.num * d2 + other.num * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduce=False)

    def __sub__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.of(ZERO)
        if self.den == ONE and other.den == ONE:
            return RatFunc(self.num * other.num, ONE, _reduce=False)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    # comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._c(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # only meaningful for polynomial values; RatFuncs are compared, not hashed
        return hash((self.num, self.den))

    # substitution -------------------------------------------------------

    def subs(self, bindings: Mapping[str, Union["RatFunc", LaurentPoly, Scalar]]) -> "RatFunc":
        return substitute(self.num, bindings) / substitute(self.den, bindings)

    def __repr__(self) -> str:
        if self.den == ONE:
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    __str__ = __repr__


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        return num * den.inverse_monomial(), ONE
    # move monomial factor of den into num, clear rational content
    m = den.min_monomial()
    if m != ONE:
        inv = m.inverse_monomial()
        den = den * inv
        num = num * inv
    lead = den.sorted_terms()[0][1]
    c = den.content()
    if lead < 0:
        c = -c
    if c != 1:
        den = den.div_scalar(c)
        num = num.div_scalar(c)
    v = _univariate_var(den)
    if v is not None:
        g = _gcd_with_univariate(den, num, v)
        if g != ONE:
            return _normalize(exact_div(num, g), exact_div(den, g))
        return num, den
    q = exact_div(num, den)
    if q is not None:
        return q, ONE
    return num, den


def substitute(p: LaurentPoly, bindings: Mapping[str, Union[RatFunc, LaurentPoly, Scalar]]) -> RatFunc:
    """Image of ``p`` under a substitution whose values may be rational functions."""
    poly_bind: Dict[str, LaurentPoly] = {}
    rat_bind: Dict[str, RatFunc] = {}
    for k, v in bindings.items():
        if isinstance(v, RatFunc) and not v.is_poly():
            rat_bind[k] = v
            continue
        pv = v.num if isinstance(v, RatFunc) else as_poly(v)
        if pv.is_monomial() or p.is_zero() or p.min_degree(k) >= 0:
            poly_bind[k] = pv
        else:
            rat_bind[k] = RatFunc.of(pv)
    p = p.subs(poly_bind)
    if not rat_bind:
        return RatFunc.of(p)
    names = list(rat_bind)
    groups: Dict[tuple, LaurentPoly] = {}
    for exps, c in p.terms():
        key = tuple(exps[VAR_INDEX[n]] for n in names)
        rest = list(exps)
        for n in names:
            rest[VAR_INDEX[n]] = 0
        groups[key] = groups.get(key, ZERO) + LaurentPoly.from_terms([(tuple(rest), c)])
    result = RatFunc.of(ZERO)
    for key, rest in groups.items():
        term = RatFunc.of(rest)
        for n, e in zip(names, key):
            if e:
                val = rat_bind[n]
                if e < 0 and val.is_zero():
                    raise ZeroDivisionError(f"substituting 0 for {n} with negative exponent")
                term = term * (val ** e)
        result = result + term
    return result
