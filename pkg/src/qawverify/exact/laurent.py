"""Multivariate Laurent polynomials with exact rational coefficients.

Variables come from a fixed, ordered alphabet (``VARS``); there is no dynamic
symbol creation.  A monomial's exponent vector is packed into a single Python
integer (16 bits per variable, biased so negative exponents are allowed), which
makes monomial multiplication a single integer addition.

Coefficients are ``int`` where possible and ``fractions.Fraction`` otherwise.
Zero coefficients are never stored, so equality is plain dict equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

VARS: Tuple[str, ...] = ("q", "s", "z", "t", "a", "b", "c", "d", "x", "y", "I")
VAR_INDEX: Dict[str, int] = {v: i for i, v in enumerate(VARS)}
NVARS = len(VARS)

_BITS = 16
_MASK = (1 << _BITS) - 1
_HALF = 1 << (_BITS - 1)
# packed key of the monomial 1
_ONE = sum(_HALF << (_BITS * i) for i in range(NVARS))

Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _clear_denominators(terms: Dict[int, Coeff]) -> Tuple[int, Dict[int, int]]:
    """(L, terms * L) with L the lcm of the coefficient denominators."""
    lcm = 1
    for c in terms.values():
        if type(c) is not int:
            d = c.denominator
            if lcm % d:
                lcm = lcm * d // math.gcd(lcm, d)
    if lcm == 1:
        return 1, terms
    return lcm, {k: int(c * lcm) for k, c in terms.items()}


def pack(exps: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not -_HALF < e < _HALF:
            raise OverflowError(f"exponent {e} out of range")
        key |= (e + _HALF) << (_BITS * i)
    return key


def unpack(key: int) -> Tuple[int, ...]:
    return tuple(((key >> (_BITS * i)) & _MASK) - _HALF for i in range(NVARS))


def _exp_of(key: int, idx: int) -> int:
    return ((key >> (_BITS * idx)) & _MASK) - _HALF


def _with_exp(key: int, idx: int, e: int) -> int:
    shift = _BITS * idx
    return (key & ~(_MASK << shift)) | ((e + _HALF) << shift)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over Q in the fixed alphabet."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None, _trusted: bool = False):
        if terms is None:
            self._terms: Dict[int, Coeff] = {}
        elif _trusted:
            self._terms = terms  # type: ignore[assignment]
        else:
            self._terms = {k: _norm(v) for k, v in terms.items() if v != 0}
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({_ONE: c}, _trusted=True) if c != 0 else cls()

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls.monomial({name: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Scalar = 1) -> "LaurentPoly":
        key = _ONE
        for name, e in exps.items():
            idx = VAR_INDEX[name]
            key = _with_exp(key, idx, _exp_of(key, idx) + e)
        return cls({key: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Tuple[int, ...], Scalar]]) -> "LaurentPoly":
        out: Dict[int, Coeff] = {}
        for exps, c in terms:
            k = pack(exps)
            out[k] = out.get(k, 0) + c
        return cls(out)

    # inspection ---------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Tuple[int, ...], Coeff]]:
        for k, c in self._terms.items():
            yield unpack(k), c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ONE in self._terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self._terms.get(_ONE, 0)

    def constant_term(self) -> Coeff:
        return self._terms.get(_ONE, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> frozenset:
        used = set()
        for k in self._terms:
            for i in range(NVARS):
                if _exp_of(k, i) != 0:
                    used.add(VARS[i])
        return frozenset(used)

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; raises on the zero polynomial."""
        idx = VAR_INDEX[name]
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return max(_exp_of(k, idx) for k in self._terms)

    def min_degree(self, name: str) -> int:
        idx = VAR_INDEX[name]
        if not self._terms:
            raise ValueError("degree of zero polynomial")
        return min(_exp_of(k, idx) for k in self._terms)

    def coefficients_in(self, name: str) -> Dict[int, "LaurentPoly"]:
        """Split by the power of ``name``: {e: coefficient of name**e}."""
        idx = VAR_INDEX[name]
        buckets: Dict[int, Dict[int, Coeff]] = {}
        for k, c in self._terms.items():
            e = _exp_of(k, idx)
            buckets.setdefault(e, {})[_with_exp(k, idx, 0)] = c
        return {e: LaurentPoly(d, _trusted=True) for e, d in buckets.items()}

    def coeff(self, name: str, e: int) -> "LaurentPoly":
        idx = VAR_INDEX[name]
        out = {}
        for k, c in self._terms.items():
            if _exp_of(k, idx) == e:
                out[_with_exp(k, idx, 0)] = c
        return LaurentPoly(out, _trusted=True)

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        from math import gcd

        num = 0
        den = 1
        for c in self._terms.values():
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def min_monomial(self) -> "LaurentPoly":
        """The monomial x^m with m the componentwise minimum exponent vector."""
        if not self._terms:
            return ONE
        mins = [min(_exp_of(k, i) for k in self._terms) for i in range(NVARS)]
        return LaurentPoly({pack(mins): 1}, _trusted=True)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = _norm(v)
                else:
                    del out[k]
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return LaurentPoly({k: _norm(c * other) for k, c in self._terms.items()}, _trusted=True)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((kb, cb),) = b.items()
            off = kb - _ONE
            if cb == 1:
                return LaurentPoly({ka + off: ca for ka, ca in a.items()}, _trusted=True)
            return LaurentPoly({ka + off: _norm(ca * cb) for ka, ca in a.items()}, _trusted=True)
        # multiply over the integers, rescale each output term once
        la, a = _clear_denominators(a)
        lb, b = _clear_denominators(b)
        out: Dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            off = kb - _ONE
            for ka, ca in a.items():
                k = ka + off
                out[k] = get(k, 0) + ca * cb
        den = la * lb
        if den == 1:
            return LaurentPoly({k: v for k, v in out.items() if v}, _trusted=True)
        return LaurentPoly({k: _norm(Fraction(v, den)) for k, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("negative power of a non-monomial")
            return self.inverse_monomial() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are units")
        ((k, c),) = self._terms.items()
        return LaurentPoly({2 * _ONE - k: _norm(Fraction(1) / c)}, _trusted=True)

    def scale(self, c: Scalar) -> "LaurentPoly":
        return self * c

    def div_scalar(self, c: Scalar) -> "LaurentPoly":
        if c == 0:
            raise ZeroDivisionError("division by zero scalar")
        return LaurentPoly({k: _norm(Fraction(v) / c) for k, v in self._terms.items()}, _trusted=True)

    def __truediv__(self, other):
        """Division by a scalar or a monomial (units of the Laurent ring)."""
        if isinstance(other, (int, Fraction)):
            return self.div_scalar(other)
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                return self * other.inverse_monomial()
            q = exact_div(self, other)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            return q
        return NotImplemented

    # comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution -------------------------------------------------------

    def subs(self, bindings: Mapping[str, "LaurentPoly | Scalar"]) -> "LaurentPoly":
        """Ring-homomorphic image under ``bindings``.

        A variable occurring with a negative exponent must be bound to a unit
        (nonzero scalar or monomial); use :func:`qawverify.exact.substitute`
        for general rational images.
        """
        if not bindings or not self._terms:
            return self
        idxs = []
        for name, val in bindings.items():
            if not isinstance(val, LaurentPoly):
                val = LaurentPoly.const(val)
            idxs.append((VAR_INDEX[name], val))
        powers: Dict[Tuple[int, int], LaurentPoly] = {}

        def power(i: int, val: LaurentPoly, e: int) -> LaurentPoly:
            p = powers.get((i, e))
            if p is None:
                if e < 0 and val.is_zero():
                    raise ZeroDivisionError(f"substituting 0 for {VARS[i]} with negative exponent")
                p = val ** e
                powers[(i, e)] = p
            return p

        # group terms by the exponents of the bound variables
        groups: Dict[Tuple[int, ...], Dict[int, Coeff]] = {}
        for k, c in self._terms.items():
            es = tuple(_exp_of(k, i) for i, _ in idxs)
            kk = k
            for i, _ in idxs:
                kk = _with_exp(kk, i, 0)
            groups.setdefault(es, {})[kk] = c
        result = ZERO
        for es, rest in groups.items():
            factor = ONE
            for (i, val), e in zip(idxs, es):
                if e:
                    factor = factor * power(i, val, e)
            result = result + LaurentPoly(rest, _trusted=True) * factor
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> "LaurentPoly":
        return self.subs(point)

    # display ------------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in canonical graded-lexicographic order (descending)."""
        items = [(unpack(k), c) for k, c in self._terms.items()]
        items.sort(key=lambda kc: (sum(kc[0]), kc[0]), reverse=True)
        return items

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                (VARS[i] if e == 1 else f"{VARS[i]}^{e}") for i, e in enumerate(exps) if e
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly({_ONE: 1}, _trusted=True)


def var(name: str) -> LaurentPoly:
    return LaurentPoly.var(name)


def as_poly(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        return v
    return LaurentPoly.const(v)


def _leading(terms: Dict[int, Coeff]) -> Tuple[Tuple[int, ...], int, Coeff]:
    # lex order over the alphabet, largest first
    best = max(terms, key=unpack)
    return unpack(best), best, terms[best]


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Return p/d if d divides p in the Laurent ring, else None."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return ZERO
    if d.is_monomial():
        return p * d.inverse_monomial()
    # strip monomial factors so both sides are honest polynomials
    dm = d.min_monomial()
    pm = p.min_monomial()
    dd = d * dm.inverse_monomial()
    rem = dict((p * pm.inverse_monomial())._terms)
    d_terms = dd._terms
    lexp, lkey, lc = _leading(d_terms)
    quot: Dict[int, Coeff] = {}
    while rem:
        rexp, rkey, rc = _leading(rem)
        if any(re < le for re, le in zip(rexp, lexp)):
            return None
        qk = rkey - lkey + _ONE
        qc = _norm(Fraction(rc) / lc)
        quot[qk] = qc
        off = qk - _ONE
        for k, c in d_terms.items():
            kk = k + off
            v = rem.get(kk, 0) - qc * c
            if v:
                rem[kk] = _norm(v)
            else:
                rem.pop(kk, None)
    q = LaurentPoly(quot, _trusted=True)
    return q * pm * dm.inverse_monomial()


def gaussian_reduce(p: LaurentPoly) -> LaurentPoly:
    """Rewrite I**2 -> -1 so that the result has I-degree at most 1."""
    idx = VAR_INDEX["I"]
    out: Dict[int, Coeff] = {}
    for k, c in p._terms.items():
        e = _exp_of(k, idx)
        if e < 0:
            raise ValueError("negative exponent on I")
        sign = -1 if (e // 2) % 2 else 1
        kk = _with_exp(k, idx, e % 2)
        v = out.get(kk, 0) + sign * c
        if v:
            out[kk] = _norm(v)
        else:
            out.pop(kk, None)
    return LaurentPoly(out, _trusted=True)
