"""Formal power series in t, truncated at a fixed order N.

Coefficients are RatFunc values in the remaining variables; ``t`` itself must
never occur inside a coefficient.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

from .laurent import ONE, ZERO, LaurentPoly
from .ratfunc import RatFunc


def _rf(v) -> RatFunc:
    return RatFunc.of(v)


class TruncSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        cs = [_rf(c) for c in coeffs]
        for c in cs:
            if "t" in c.num.variables() or "t" in c.den.variables():
                raise ValueError("series coefficients must not contain t")
        cs = cs[: order + 1]
        cs += [RatFunc.of(ZERO)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs: List[RatFunc] = cs

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls([ONE], order)

    @classmethod
    def from_poly_in_t(cls, p: LaurentPoly, order: int) -> "TruncSeries":
        parts = p.coefficients_in("t")
        if parts and min(parts) < 0:
            raise ValueError("negative power of t")
        return cls([parts.get(k, ZERO) for k in range(order + 1)], order)

    def __getitem__(self, k: int) -> RatFunc:
        return self.coeffs[k]

    def _check(self, other: "TruncSeries") -> int:
        if not isinstance(other, TruncSeries):
            raise TypeError("expected TruncSeries")
        return min(self.order, other.order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._check(other)
        return TruncSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._check(other)
        return TruncSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.order)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries([x * c for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        n = self._check(other)
        out = []
        for k in range(n + 1):
            acc = RatFunc.of(ZERO)
            for i in range(k + 1):
                a = self.coeffs[i]
                if a.is_zero():
                    continue
                b = other.coeffs[k - i]
                if b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._check(other)
        lead = other.coeffs[0]
        if not (lead.is_poly() and lead.num.is_monomial()):
            raise ArithmeticError("series divisor needs a unit constant term")
        inv_lead = RatFunc.of(lead.num.inverse_monomial())
        out: List[RatFunc] = []
        for k in range(n + 1):
            acc = self.coeffs[k]
            for i in range(1, k + 1):
                b = other.coeffs[i]
                if not b.is_zero():
                    acc = acc - b * out[k - i]
            out.append(acc * inv_lead)
        return TruncSeries(out, n)

    def subs(self, bindings) -> "TruncSeries":
        return TruncSeries([c.subs(bindings) for c in self.coeffs], self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(n + 1))

    def first_mismatch(self, other: "TruncSeries") -> int | None:
        n = min(self.order, other.order)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order}, {self.coeffs!r})"


def series_mul(s: TruncSeries, r: TruncSeries) -> TruncSeries:
    return s * r


def series_div(s: TruncSeries, r: TruncSeries) -> TruncSeries:
    return s / r


def series_from_coeffs(coeffs: Sequence, order: int) -> TruncSeries:
    return TruncSeries(coeffs, order)
