"""Infinite products and generating functions as truncated series in t."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from ..exact.laurent import ONE, ZERO, LaurentPoly, as_poly, var
from ..exact.ratfunc import RatFunc
from ..exact.series import TruncSeries
from ..ortho import ASC, BIG, DUAL, QHERMITE, FamilySpec, family_poly
from ..qcore import poch, qbinom, qbinom2

q, x, z, t = var("q"), var("x"), var("z"), var("t")
X_OF_Z = (z + z ** -1) * Fraction(1, 2)


@dataclass(frozen=True)
class Factor:
    """(c t^e; base)_inf, or its reciprocal; base is q or q^2."""

    coeff: LaurentPoly
    t_power: int = 1
    base_power: int = 1
    inverse: bool = False

    def __post_init__(self):
        if self.t_power not in (1, 2) or self.base_power not in (1, 2):
            raise ValueError("only t, t^2 and bases q, q^2 are supported")


@dataclass(frozen=True)
class InfProductSpec:
    factors: Tuple[Factor, ...] = ()

    @classmethod
    def of(cls, numerator: Sequence = (), denominator: Sequence = ()) -> "InfProductSpec":
        """Shorthand: entries are coefficients c (meaning (ct)_inf) or Factor objects."""

        def lift(f, inverse):
            if isinstance(f, Factor):
                return Factor(f.coeff, f.t_power, f.base_power, inverse)
            return Factor(as_poly(f), 1, 1, inverse)

        return cls(tuple(lift(f, False) for f in numerator) + tuple(lift(f, True) for f in denominator))


def factor_series(f: Factor, order: int) -> TruncSeries:
    """q-binomial expansion of a single factor."""
    base = q ** f.base_power
    coeffs = [RatFunc.of(ZERO)] * (order + 1)
    k = 0
    while f.t_power * k <= order:
        den = poch(base, base, k)
        if f.inverse:
            num = f.coeff ** k
        else:
            num = (-f.coeff) ** k * base ** qbinom2(k)
        coeffs[f.t_power * k] = RatFunc(num, den)
        k += 1
    return TruncSeries(coeffs, order)


def product_series(spec: InfProductSpec, order: int) -> TruncSeries:
    out = TruncSeries.one(order)
    for f in spec.factors:
        out = out * factor_series(f, order)
    return out


def z_form(p: LaurentPoly) -> LaurentPoly:
    """Replace x by (z + 1/z)/2."""
    return p.subs({"x": X_OF_Z})


def gf_family_series(spec: FamilySpec, order: int, in_z: bool = True) -> TruncSeries:
    """sum_n p_n t^n / (q)_n, with x = (z + 1/z)/2 by default."""
    coeffs = []
    for n in range(order + 1):
        p = family_poly(spec, n)
        coeffs.append(RatFunc(z_form(p) if in_z else p, poch(q, q, n)))
    return TruncSeries(coeffs, order)


def poly_series_in_t(p: LaurentPoly, order: int) -> TruncSeries:
    return TruncSeries.from_poly_in_t(p, order)


def shift(s: TruncSeries, k: int) -> TruncSeries:
    """t^k * s."""
    return TruncSeries([RatFunc.of(ZERO)] * k + list(s.coeffs[: s.order + 1 - k]), s.order)


_EITHETA = (z, z ** -1)


# --- named identities -------------------------------------------------------


@dataclass
class GFCheck:
    name: str
    order: int
    equal: bool
    first_mismatch: int | None = None


def _compare(name: str, lhs: TruncSeries, rhs: TruncSeries, order: int) -> GFCheck:
    bad = lhs.first_mismatch(rhs)
    return GFCheck(name, order, bad is None, bad)


def divided_product(numerator: Sequence = (), denominator: Sequence = (), order: int = 8, qv=q) -> List[LaurentPoly]:
    """Coefficients c_n with prod (c t)_inf / prod (c t)_inf = sum c_n t^n/(q)_n.

    In this normalization every factor has polynomial coefficients and a
    product is a q-binomial convolution, so no rational arithmetic is needed.
    """
    out = [ONE] + [ZERO] * order
    for c in numerator:
        c = as_poly(c)
        out = divided_mul(out, [(-c) ** k * qv ** qbinom2(k) for k in range(order + 1)], qv)
    for c in denominator:
        c = as_poly(c)
        out = divided_mul(out, [c ** k for k in range(order + 1)], qv)
    return out


def divided_mul(f: Sequence[LaurentPoly], g: Sequence[LaurentPoly], qv=q) -> List[LaurentPoly]:
    order = min(len(f), len(g)) - 1
    return [sum((qbinom(n, k, qv) * f[k] * g[n - k] for k in range(n + 1)), ZERO) for n in range(order + 1)]


def _dual_q_hahn_lhs(order: int) -> List[LaurentPoly]:
    """(abct)_inf sum_k p_k(x; a,b,c) t^k/(q, abct)_k, in the divided normalization.

    (abct)_inf/(abct)_k = (abc q^k t)_inf, whose t^j/(q)_j coefficient is (-abc q^k)^j q^C(j,2).
    """
    a, b, c = var("a"), var("b"), var("c")
    abc = a * b * c
    spec = FamilySpec.make(DUAL)
    out = []
    for n in range(order + 1):
        acc = ZERO
        for k in range(n + 1):
            j = n - k
            acc = acc + qbinom(n, k) * z_form(family_poly(spec, k)) * (-abc * q ** k) ** j * q ** qbinom2(j)
        out.append(acc)
    return out


def _first_mismatch(lhs: Sequence, rhs: Sequence) -> int | None:
    return next((n for n, (l, r) in enumerate(zip(lhs, rhs)) if l != r), None)


def dual_q_hahn_eq3(N: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the finite identity behind the dual q-Hahn generating function, times (q)_N."""
    a, b, c = var("a"), var("b"), var("c")
    asc_bc = FamilySpec.make(ASC, a=b, b=c)
    dual = FamilySpec.make(DUAL)
    lhs = ZERO
    rhs = ZERO
    for n in range(N + 1):
        w = qbinom(N, n) * q ** qbinom2(N - n)
        lhs = lhs + w * (-a) ** (N - n) * family_poly(asc_bc, n)
        rhs = rhs + w * (-a * b * c * q ** n) ** (N - n) * family_poly(dual, n)
    return lhs, rhs


def q_vandermonde_step(N: int, k: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """The terminating summation that reduces eq3 to connection coefficients, cleared by (q)_N (bc)_k.

    sum_{n=k}^N (bc)_n [n,k] a^{N-k} (-1)^{N-n} q^C(N-n,2) / ((q)_n (bc)_k (q)_{N-n})
        = (-abc q^k)^{N-k} q^C(N-k,2) / ((q)_k (q)_{N-k})
    """
    a, b, c = var("a"), var("b"), var("c")
    bc = b * c
    lhs = ZERO
    for n in range(k, N + 1):
        lhs = lhs + (poch(bc, q, n) * qbinom(N, n) * qbinom(n, k) * a ** (N - k)
                     * (-1) ** (N - n) * q ** qbinom2(N - n))
    rhs = (-a * b * c * q ** k) ** (N - k) * q ** qbinom2(N - k) * qbinom(N, k) * poch(bc, q, k)
    return lhs, rhs


def asc1_base(n: int) -> LaurentPoly:
    """x^n (1/x)_n = prod_{j<n} (x - q^j)."""
    out = ONE
    for j in range(n):
        out = out * (x - q ** j)
    return out


def asc2_base(n: int) -> LaurentPoly:
    """prod_{j<n} (q^{-j} - x), the polynomials with sum q^C(n,2) p_n t^n/(q)_n = (xt)_inf/(t)_inf."""
    out = ONE
    for j in range(n):
        out = out * (q ** -j - x)
    return out


def series_coefficients(s: TruncSeries, weight: Callable[[int], RatFunc]) -> List[LaurentPoly]:
    """Undo a per-degree normalization: coefficient n divided by weight(n), as polynomials."""
    return [(s[n] / weight(n)).as_poly() for n in range(s.order + 1)]


def asc1_from_gf(order: int) -> List[LaurentPoly]:
    """U_n^(a)(x) from sum U_n t^n/(q)_n = (t)_inf (at)_inf / (xt)_inf."""
    a = var("a")
    return divided_product([ONE, a], [x], order)


def asc2_from_gf(order: int) -> List[LaurentPoly]:
    """V_n^(a)(x) from sum (-1)^n q^C(n,2) V_n t^n/(q)_n = (xt)_inf / ((t)_inf (at)_inf)."""
    a = var("a")
    cs = divided_product([x], [ONE, a], order)
    return [(-1) ** n * q ** -qbinom2(n) * c for n, c in enumerate(cs)]


def asc2_base_from_gf(order: int) -> List[LaurentPoly]:
    cs = divided_product([x], [ONE], order)
    return [q ** -qbinom2(n) * c for n, c in enumerate(cs)]


GF_NAMES = ("gf_hermite", "gf_big_hermite", "gf_asc", "dual_q_hahn", "dual_q_hahn_eq3", "asc1_gf", "asc2_gf")


def verify_gf_identity(name: str, order: int = 8) -> GFCheck:
    a, b, c = var("a"), var("b"), var("c")
    theta = list(_EITHETA)
    if name == "gf_hermite":
        return _compare(name, gf_family_series(FamilySpec.make(QHERMITE), order),
                        product_series(InfProductSpec.of([], theta), order), order)
    if name == "gf_big_hermite":
        return _compare(name, gf_family_series(FamilySpec.make(BIG), order),
                        product_series(InfProductSpec.of([a], theta), order), order)
    if name == "gf_asc":
        return _compare(name, gf_family_series(FamilySpec.make(ASC), order),
                        product_series(InfProductSpec.of([a, b], theta), order), order)
    if name == "dual_q_hahn":
        bad = _first_mismatch(_dual_q_hahn_lhs(order), divided_product([a, b, c], theta, order))
        return GFCheck(name, order, bad is None, bad)
    if name == "dual_q_hahn_eq3":
        for N in range(order + 1):
            lhs, rhs = dual_q_hahn_eq3(N)
            if lhs != rhs:
                return GFCheck(name, order, False, N)
            for k in range(N + 1):
                vl, vr = q_vandermonde_step(N, k)
                if vl != vr:
                    return GFCheck(name, order, False, N)
        return GFCheck(name, order, True)
    if name == "asc1_gf":
        from .synth import convolve_p1_base
        want = convolve_p1_base([asc1_base(n) for n in range(order + 1)])
        got = asc1_from_gf(order)
        bad = next((n for n in range(order + 1) if got[n] != want[n].subs({"y": a})), None)
        return GFCheck(name, order, bad is None, bad)
    if name == "asc2_gf":
        from .synth import convolve_p2_base
        want = convolve_p2_base([asc2_base(n) for n in range(order + 1)])
        got = asc2_from_gf(order)
        bad = next(
            (n for n in range(order + 1) if got[n] != (-1) ** n * want[n].subs({"y": -a})), None
        )
        return GFCheck(name, order, bad is None, bad)
    raise ValueError(f"unknown generating-function identity {name!r}")
