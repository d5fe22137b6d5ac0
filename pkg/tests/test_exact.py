from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qawverify.exact import (
    EQUAL,
    INCONCLUSIVE,
    ONE,
    UNEQUAL,
    ZERO,
    RatFunc,
    TruncSeries,
    dumps_poly,
    exact_div,
    gaussian_reduce,
    loads_poly,
    parse_poly,
    poly_from_obj,
    poly_to_obj,
    random_rational_probe,
    series_div,
    series_mul,
    substitute,
    var,
)

from .conftest import laurent_polys, nonzero_fraction

q, a, x, y, z, t, I = (var(n) for n in "q a x y z t I".split())


# --- Laurent polynomials ----------------------------------------------------------


def test_two_factor_expansion():
    assert (1 - a) * (1 - a * q) == 1 - a - a * q + a ** 2 * q


def test_additive_inverse():
    p = 3 * a * q ** -2 - x
    assert (p + (-p)).is_zero()


def test_laurent_square():
    assert (z + z ** -1) ** 2 == z ** 2 + 2 + z ** -2


def test_no_zero_coefficients_stored():
    p = (x + y) - y
    assert p == x
    assert len(list(p.terms())) == 1


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(p, r, s):
    assert (p * r) * s == p * (r * s)
    assert p * (r + s) == p * r + p * s
    assert p + r == r + p
    assert p * r == r * p
    assert (p - p).is_zero()
    assert p * ONE == p


@given(laurent_polys(), laurent_polys())
def test_exact_div_recovers_factor(p, r):
    if r.is_zero():
        return
    assert exact_div(p * r, r) == p


# --- substitution -------------------------------------------------------------------


def test_substitute_monomial_image():
    assert substitute(q ** 2 * x, {"q": q ** -1, "x": I * x}) == RatFunc.of(q ** -2 * I * x)


def test_substitute_cosine_variable():
    half = (z + z ** -1) * Fraction(1, 2)
    assert substitute(x, {"x": half}) == RatFunc.of(half)


def test_substitute_rational_value():
    assert substitute(1 - q, {"q": Fraction(3, 5)}) == RatFunc.of(Fraction(2, 5))


def test_substitute_zero_into_negative_exponent():
    with pytest.raises(ZeroDivisionError):
        substitute(q ** -1 * x, {"q": 0})


@given(laurent_polys(), laurent_polys(), nonzero_fraction, st.sampled_from(["q", "a", "x"]))
def test_substitution_is_multiplicative(p, r, value, name):
    bind = {name: value, "y": a + 1}
    assert substitute(p * r, bind) == substitute(p, bind) * substitute(r, bind)
    assert substitute(p + r, bind) == substitute(p, bind) + substitute(r, bind)


# --- rational functions ---------------------------------------------------------------


def test_ratfunc_reduction_and_sign():
    r = RatFunc(q - 1, 2 - 2 * q ** 2)
    assert r == RatFunc(Fraction(-1, 2), 1 + q)
    assert r.den == 1 + q


def test_ratfunc_zero_is_canonical():
    r = RatFunc(x - x, 1 + q)
    assert r.is_zero() and r.den == ONE


@given(laurent_polys(), laurent_polys())
def test_ratfunc_inverse(p, r):
    if p.is_zero() or r.is_zero():
        return
    f = RatFunc(p, r)
    assert f * f.inverse() == RatFunc.of(1)


# --- Gaussian reduction -----------------------------------------------------------------


def test_gaussian_examples():
    assert gaussian_reduce(I ** 2) == -ONE
    assert gaussian_reduce(I ** 3 * x) == -I * x
    assert gaussian_reduce((1 + I) * (1 - I)) == 2 * ONE


def test_gaussian_negative_exponent():
    with pytest.raises(ValueError):
        gaussian_reduce(I ** -1)


def _with_i(p, k):
    return p * I ** k


@given(laurent_polys(), laurent_polys(), st.integers(0, 5), st.integers(0, 5))
def test_gaussian_idempotent_and_multiplicative(p, r, j, k):
    u, v = _with_i(p, j) + 1, _with_i(r, k) - I
    once = gaussian_reduce(u)
    assert gaussian_reduce(once) == once
    assert once.degree("I") <= 1
    assert gaussian_reduce(u * v) == gaussian_reduce(gaussian_reduce(u) * gaussian_reduce(v))


# --- truncated series ----------------------------------------------------------------------


def test_series_identity():
    s = TruncSeries([1, q, a], 4)
    assert series_mul(s, TruncSeries.one(4)) == s


def test_geometric_telescoping():
    one_minus_t = TruncSeries([1, -1], 3)
    geometric = TruncSeries([1, 1, 1, 1], 3)
    assert series_mul(one_minus_t, geometric) == TruncSeries.one(3)


def test_series_self_division():
    s = TruncSeries([1, q, a * q, x], 3)
    assert series_div(s, s) == TruncSeries.one(3)


def test_series_divisor_needs_unit():
    with pytest.raises(ArithmeticError):
        series_div(TruncSeries.one(2), TruncSeries([1 - q, 1], 2))


def test_series_rejects_t_in_coefficients():
    with pytest.raises(ValueError):
        TruncSeries([t], 2)


def test_series_order_is_kept():
    s = TruncSeries([1, 1, 1, 1, 1], 4)
    assert series_mul(s, s).order == 4


@given(st.lists(laurent_polys(max_terms=2), min_size=1, max_size=4), st.lists(laurent_polys(max_terms=2), max_size=3))
def test_series_div_undoes_mul(s_coeffs, r_tail):
    order = 3
    s = TruncSeries(s_coeffs, order)
    r = TruncSeries([ONE] + r_tail, order)
    assert series_div(series_mul(s, r), r) == s


# --- probe -------------------------------------------------------------------------------------


def test_probe_syntactic_equality():
    res = random_rational_probe(1 + a * q, 1 + a * q, trials=1)
    assert res.verdict == EQUAL and res.trials == 1


def test_probe_factorization():
    assert random_rational_probe(1 - q ** 2, (1 - q) * (1 + q), trials=5).verdict == EQUAL


def test_probe_first_trial_mismatch():
    res = random_rational_probe(1 - q, 1 + q, seed=1)
    assert res.verdict == UNEQUAL and res.trials == 1
    assert res.counterexample["q"] != 0


def test_probe_inconclusive_when_always_singular():
    def singular(point):
        raise ZeroDivisionError

    res = random_rational_probe(singular, RatFunc.of(1), variables=["q"], trials=3, max_discards=4)
    assert res.verdict == INCONCLUSIVE


def test_probe_is_seeded():
    lhs = RatFunc(1 - a * q, 1 - q)
    r1 = random_rational_probe(lhs, lhs, trials=5, seed=7)
    r2 = random_rational_probe(lhs, lhs, trials=5, seed=7)
    assert r1.points == r2.points


TRUE_IDENTITIES = [
    (1 - q ** 3, (1 - q) * (1 + q + q ** 2)),
    (RatFunc(1 - a ** 2 * q ** 2, 1 - a * q), 1 + a * q),
    ((x + y) ** 3, x ** 3 + 3 * x ** 2 * y + 3 * x * y ** 2 + y ** 3),
    (RatFunc(ONE, 1 - q) - RatFunc(q, 1 - q), ONE),
]


@given(st.integers(0, 10 ** 6), st.sampled_from(TRUE_IDENTITIES))
def test_probe_never_rejects_true_identities(seed, pair):
    assert random_rational_probe(pair[0], pair[1], trials=3, seed=seed).verdict == EQUAL


# --- interchange --------------------------------------------------------------------------------


def test_interchange_format():
    obj = poly_to_obj(parse_poly("1 - a*q^2 + 3/4*x"))
    assert obj == {"vars": ["q", "a", "x"], "terms": [
        {"coeff": "-1/1", "exps": [2, 1, 0]},
        {"coeff": "3/4", "exps": [0, 0, 1]},
        {"coeff": "1/1", "exps": [0, 0, 0]},
    ]}


@given(laurent_polys())
def test_interchange_round_trip(p):
    text = dumps_poly(p)
    assert loads_poly(text) == p
    assert dumps_poly(loads_poly(text)) == text
    assert poly_from_obj(poly_to_obj(p)) == p


def test_zero_round_trip():
    assert loads_poly(dumps_poly(ZERO)) == ZERO
