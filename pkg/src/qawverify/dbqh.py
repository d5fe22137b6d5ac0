"""Discrete big q-Hermite polynomials h_n(x, y; q) and their companions.

h_n is generated by (t^2; q^2)_inf (yt)_inf / (xt)_inf.  It satisfies a 4-term
recurrence in x, so it is 2-fold multiple orthogonal: there are functionals
L0, L1 with L_i(h_m) = delta_{mi}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List

from .exact.laurent import ONE, ZERO, LaurentPoly, gaussian_reduce, var
from .exact.ratfunc import RatFunc
from .genfun.products import divided_mul, divided_product
from .ortho import DQH1, DQH2, FamilySpec, basis_expand, family_poly, mixed_moment_oracle
from .qcore import poch, q_odd_double_factorial, qbinom, qbinom2

q, x, y, a, t, I = var("q"), var("x"), var("y"), var("a"), var("t"), var("I")


def _shifted_power(n: int) -> LaurentPoly:
    """x^n (y/x; q)_n = prod_{j<n} (x - y q^j)."""
    out = ONE
    for j in range(n):
        out = out * (x - y * q ** j)
    return out


def _even_factor(c: LaurentPoly, order: int, inverse: bool) -> List[LaurentPoly]:
    """(c t^2; q^2)_inf or its reciprocal, as coefficients of t^n/(q)_n.

    (q)_{2m}/(q^2;q^2)_m = (q;q^2)_m keeps everything polynomial.
    """
    out = [ZERO] * (order + 1)
    for m in range(order // 2 + 1):
        base = poch(q, q ** 2, m)
        out[2 * m] = c ** m * base if inverse else (-c) ** m * q ** (2 * qbinom2(m)) * base
    return out


# --- the polynomials ------------------------------------------------------------


@lru_cache(maxsize=None)
def h_explicit(n: int) -> LaurentPoly:
    out = ZERO
    for k in range(n // 2 + 1):
        out = out + (qbinom(n, 2 * k) * poch(q, q ** 2, k) * q ** (2 * qbinom2(k)) * (-1) ** k
                     * _shifted_power(n - 2 * k))
    return out


_REC: List[LaurentPoly] = [ONE]


def h_recurrence(n: int) -> LaurentPoly:
    """h_{n+1} = (x - y q^n) h_n - q^{n-1}(1-q^n) h_{n-1} + y q^{n-2}(1-q^n)(1-q^{n-1}) h_{n-2}."""
    while len(_REC) <= n:
        m = len(_REC) - 1
        h = _REC
        nxt = (x - y * q ** m) * h[m]
        if m >= 1:
            nxt = nxt - q ** (m - 1) * (1 - q ** m) * h[m - 1]
        if m >= 2:
            nxt = nxt + y * q ** (m - 2) * (1 - q ** m) * (1 - q ** (m - 1)) * h[m - 2]
        _REC.append(nxt)
    return _REC[n]


def h_from_gf(order: int) -> List[LaurentPoly]:
    """Coefficients of (t^2;q^2)_inf (yt)_inf/(xt)_inf in the t^n/(q)_n normalization."""
    return divided_mul(_even_factor(ONE, order, False), divided_product([y], [x], order))


def hstar(n: int) -> LaurentPoly:
    out = ZERO
    for k in range(n // 2 + 1):
        out = out + ((-1) ** k * q ** (2 * qbinom2(k)) * q_odd_double_factorial(k) * qbinom(n, 2 * k)
                     * _shifted_power(n - 2 * k))
    return out


def hstar_scaling_check(n: int) -> bool:
    """The degree n-2k part of h_n is (1-q)^k times that of hstar_n, i.e. hstar_n = (1-q)^{-n/2} h_n(x r, y r) with r^2 = 1-q."""
    hp = h_explicit(n).subs({"x": x * t, "y": y * t}).coefficients_in("t")
    sp = hstar(n).subs({"x": x * t, "y": y * t}).coefficients_in("t")
    if set(hp) != set(sp):
        return False
    return all(hp[d] == (1 - q) ** ((n - d) // 2) * sp[d] and (n - d) % 2 == 0 for d in hp)


# --- moment functionals ---------------------------------------------------------


def _h_basis(n: int) -> List[LaurentPoly]:
    return [h_explicit(k) for k in range(n + 1)]


def dual_moments_oracle(n: int, i: int) -> LaurentPoly:
    """L_i(x^n) with L_i(h_m) = delta_{mi}: the h_i coordinate of x^n."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if n < i:
        return ZERO
    return basis_expand(None, x ** n, _h_basis(n))[i].as_poly()


def dual_moments_closed(n: int, i: int) -> LaurentPoly:
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if i == 0:
        return sum((qbinom(n, 2 * k) * poch(q, q ** 2, k) * y ** (n - 2 * k) for k in range(n // 2 + 1)), ZERO)
    if n == 0:
        return ZERO
    inner = sum((qbinom(n - 1, 2 * k) * poch(q, q ** 2, k) * y ** (n - 2 * k - 1) for k in range((n - 1) // 2 + 1)), ZERO)
    return (1 - q ** n) * inner


def xnh_closed(n: int, m: int) -> LaurentPoly:
    """L_h(x^n h_m(x;q)) for the discrete q-Hermite I functional."""
    if m > n or (n - m) % 2:
        return ZERO
    return RatFunc(q ** qbinom2(m) * poch(q, q, n), poch(q ** 2, q ** 2, (n - m) // 2)).as_poly()


def lh_monomial(k: int) -> LaurentPoly:
    return ZERO if k % 2 else poch(q, q ** 2, k // 2)


def hermite_norm(k: int) -> LaurentPoly:
    return q ** qbinom2(k) * poch(q, q, k)


def op_mop_bootstrap(n: int, i: int) -> LaurentPoly:
    """L_i(x^n) = sum_k L_h(x^n h_k)/L_h(h_k^2) d_{k,i}, with h_k(x;q) = sum_m [k,m] y^{k-m} h_m(x,y;q)."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    total = RatFunc.of(ZERO)
    for k in range(i, n + 1):
        ratio = RatFunc(xnh_closed(n, k), hermite_norm(k))
        total = total + ratio * RatFunc.of(qbinom(k, i) * y ** (k - i))
    return total.as_poly()


def connection_to_big(k: int) -> LaurentPoly:
    """sum_m [k,m] y^{k-m} h_m(x,y;q), which should be h_k(x;q)."""
    return sum((qbinom(k, m) * y ** (k - m) * h_explicit(m) for m in range(k + 1)), ZERO)


def xnh_oracle(n: int, m: int) -> LaurentPoly:
    return mixed_moment_oracle(FamilySpec.make(DQH1), n, m).as_poly()


# --- identities ----------------------------------------------------------------


def y_recurrence_check(n: int) -> bool:
    """y q^n h_n = -h_{n+1} + sum_k (q^n;q^-1)_k (-1)^k h_{n-k} * (x if k even else 1)."""
    rhs = -h_explicit(n + 1)
    for k in range(n + 1):
        rhs = rhs + poch(q ** n, q ** -1, k) * (-1) ** k * h_explicit(n - k) * (x if k % 2 == 0 else ONE)
    return y * q ** n * h_explicit(n) == rhs


def hermite2_series(order: int) -> List[LaurentPoly]:
    """h-hat_n from sum h-hat_n q^C(n,2) t^n/(q)_n = (-xt)_inf / ((-t^2;q^2)_inf (-yt)_inf)."""
    cs = divided_mul(_even_factor(-ONE, order, True), divided_product([-x], [-y], order))
    return [q ** -qbinom2(n) * c for n, c in enumerate(cs)]


def hermite2(n: int) -> LaurentPoly:
    return hermite2_series(n)[n]


def relation_check(n: int) -> bool:
    """h-hat_n(x, y; q) = i^-n h_n(ix, iy; 1/q)."""
    turned = h_explicit(n).subs({"x": I * x, "y": I * y, "q": q ** -1})
    return gaussian_reduce(I ** ((-n) % 4) * turned) == hermite2(n)


def hermite2_degeneration_check(n: int) -> bool:
    return hermite2(n).subs({"y": ZERO}) == family_poly(FamilySpec.make(DQH2), n)


# --- addition theorem -----------------------------------------------------------


def _a_pair_product(m: int) -> LaurentPoly:
    """a^{2m} (1/a^2; q^2)_m = prod_{j<m} (a^2 - q^{2j})."""
    out = ONE
    for j in range(m):
        out = out * (a ** 2 - q ** (2 * j))
    return out


def p_addition(tdeg: int, yv=None, av=None) -> LaurentPoly:
    """p_t(y, a; q); y and a stay symbolic unless values are given."""
    out = sum(
        (qbinom(tdeg, 2 * m) * poch(q, q ** 2, m) * _a_pair_product(m) * y ** (tdeg - 2 * m) * q ** qbinom2(tdeg - 2 * m)
         for m in range(tdeg // 2 + 1)),
        ZERO,
    )
    bindings = {k: v for k, v in (("y", yv), ("a", av)) if v is not None}
    return out.subs(bindings) if bindings else out


def _scaled_hermite(k: int) -> LaurentPoly:
    """a^k h_k(x/a, 0; q), built by homogenizing in a so that a never has a negative exponent."""
    parts = h_explicit(k).subs({"y": ZERO}).coefficients_in("x")
    return sum((c * x ** d * a ** (k - d) for d, c in parts.items()), ZERO)


def addition_check(n: int) -> bool:
    rhs = ZERO
    for k in range(n + 1):
        rhs = rhs + qbinom(n, k) * (-1) ** k * _scaled_hermite(k) * p_addition(n - k)
    return h_explicit(n) == (-1) ** n * rhs


def factorization_check(order: int = 6) -> bool:
    """G(x,y,-t) = G(x/a,0,-at) F(y,a,t) as series in t to the given order.

    Both sides use the t^n/(q)_n normalization; the t -> -t and t -> -at
    rescalings become (-1)^n and (-a)^n on coefficients.
    """
    g = divided_mul(_even_factor(ONE, order, False), divided_product([y], [x], order))
    lhs = [(-1) ** n * c for n, c in enumerate(g)]
    # G(x/a, 0, -at) = (a^2 t^2; q^2)_inf / (-xt)_inf
    g0 = divided_mul(_even_factor(a ** 2, order, False), divided_product([], [-x], order))
    f = divided_mul(divided_mul(_even_factor(ONE, order, False), _even_factor(a ** 2, order, True)),
                    divided_product([-y], [], order))
    return lhs == divided_mul(g0, f)


def p_addition_from_gf(order: int) -> List[LaurentPoly]:
    """Coefficients of F(y, a, w) = (w^2;q^2)_inf (-yw)_inf / (a^2 w^2;q^2)_inf."""
    return divided_mul(divided_mul(_even_factor(ONE, order, False), _even_factor(a ** 2, order, True)),
                       divided_product([-y], [], order))


# --- multiple orthogonality ---------------------------------------------------


@dataclass
class MultipleOrthogonality:
    ok: bool
    checked: int
    failure: tuple | None = None


def multiple_orthogonality_check(nmax: int) -> MultipleOrthogonality:
    """L_i(h_m h_n) = 0 for m > 2n+i and nonzero for m = 2n+i, with L_i the h_i coordinate."""
    top = 2 * nmax
    basis = _h_basis(top)
    checked = 0
    for n in range(nmax + 1):
        for m in range(nmax + 1):
            coords = basis_expand(None, basis[m] * basis[n], basis[: m + n + 1])
            for i in (0, 1):
                zero = coords[i].is_zero()
                checked += 1
                if m > 2 * n + i and not zero:
                    return MultipleOrthogonality(False, checked, (i, m, n))
                if m == 2 * n + i and zero:
                    return MultipleOrthogonality(False, checked, (i, m, n))
    return MultipleOrthogonality(True, checked)
