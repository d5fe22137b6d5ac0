from fractions import Fraction

import pytest

from qawverify.exact import ONE, ZERO, RatFunc, var
from qawverify.ortho import (
    ASC,
    AW,
    BIG,
    DQH1,
    DUAL,
    QHERMITE,
    FamilySpec,
    aw_moment_v1,
    aw_moment_v2,
    basis_expand,
    bootstrap_mixed_moment,
    closed_mixed_moment,
    closed_norm,
    connection_coeffs,
    connection_oracle_check,
    degeneration_chain,
    family_poly,
    mixed_moment_oracle,
    verify_norms,
)

q, a, b, c, x = (var(n) for n in "q a b c x".split())


def test_family_poly_examples():
    assert family_poly(FamilySpec.make(QHERMITE), 2) == 4 * x ** 2 - (1 - q)
    assert family_poly(FamilySpec.make(AW), 0) == ONE
    assert family_poly(FamilySpec.make(DQH1), 2) == x ** 2 - (1 - q)


def test_family_degrees():
    for tag in (QHERMITE, BIG, ASC, DUAL, AW, DQH1):
        spec = FamilySpec.make(tag)
        for n in range(4):
            assert family_poly(spec, n).degree("x") == n


def test_unknown_family():
    with pytest.raises(ValueError):
        FamilySpec.make("Laguerre")


def test_basis_expand_examples():
    big = FamilySpec.make(BIG)
    exp = basis_expand(big, x)
    assert exp.coefficients == (RatFunc(a, 2), RatFunc.of(Fraction(1, 2)))
    p3 = family_poly(big, 3)
    assert basis_expand(big, p3).coefficients == tuple(RatFunc.of(v) for v in (0, 0, 0, 1))
    assert basis_expand(big, ONE).coefficients == (RatFunc.of(1),)


def test_basis_expand_reconstructs():
    spec = FamilySpec.make(ASC)
    target = x ** 4 - a * x + 3
    exp = basis_expand(spec, target)
    total = sum((exp[k] * RatFunc.of(family_poly(spec, k)) for k in range(len(exp))), RatFunc.of(0))
    assert total == RatFunc.of(target)
    assert len(exp) == 5


def test_mixed_moment_oracle_examples():
    assert mixed_moment_oracle(FamilySpec.make(QHERMITE), 2, 0) == RatFunc(1 - q, 4)
    assert mixed_moment_oracle(FamilySpec.make(BIG), 1, 0) == RatFunc(a, 2)
    for tag in (QHERMITE, BIG, ASC):
        assert mixed_moment_oracle(FamilySpec.make(tag), 0, 2).is_zero()


def test_norm_examples():
    assert closed_norm(FamilySpec.make(QHERMITE), 2) == RatFunc.of((1 - q) * (1 - q ** 2))
    assert verify_norms(FamilySpec.make(ASC), 1)[1].value.is_zero()
    dual = closed_norm(FamilySpec.make(DUAL), 1)
    assert dual == RatFunc.of((1 - q) * (1 - a * b) * (1 - a * c) * (1 - b * c))


def test_norms_small_families():
    for tag in (QHERMITE, BIG, ASC, DQH1):
        assert all(chk.ok for chk in verify_norms(FamilySpec.make(tag), 3)), tag


def test_connection_examples():
    cc0 = connection_coeffs(FamilySpec.make(QHERMITE), FamilySpec.make(BIG), 2)
    assert cc0 == [RatFunc.of(a ** 2), RatFunc.of((1 + q) * a), RatFunc.of(1)]
    ccab = connection_coeffs(FamilySpec.make(ASC), FamilySpec.make(DUAL), 1)
    assert ccab == [RatFunc.of((1 - a * b) * c), RatFunc.of(1)]


def test_connection_unsupported_pair():
    with pytest.raises(ValueError):
        connection_coeffs(FamilySpec.make(BIG), FamilySpec.make(QHERMITE), 2)


@pytest.mark.parametrize("src,dst", [(QHERMITE, BIG), (BIG, ASC), (ASC, DUAL)])
def test_connection_against_polynomials(src, dst):
    for n in range(5):
        assert connection_oracle_check(FamilySpec.make(src), FamilySpec.make(dst), n)


def test_aw_connection_numeric():
    point = {"q": Fraction(2, 7), "a": Fraction(3, 5), "b": Fraction(5, 4), "c": Fraction(1, 3), "d": Fraction(7, 2)}
    aw = FamilySpec.make(AW, **point)
    dual = FamilySpec.make(DUAL, q=point["q"], a=point["b"], b=point["c"], c=point["d"])
    for n in range(5):
        assert connection_oracle_check(dual, aw, n)
        assert connection_oracle_check(aw.with_values(a=Fraction(9, 4)), aw, n, Fraction(9, 4))


def test_bootstrap_examples():
    big = FamilySpec.make(BIG)
    assert bootstrap_mixed_moment(FamilySpec.make(QHERMITE), big, 1, 0) == RatFunc(a, 2)
    asc = FamilySpec.make(ASC)
    assert bootstrap_mixed_moment(big, asc, 0, 0) == RatFunc.of(1)
    assert bootstrap_mixed_moment(big, asc, 2, 1) == mixed_moment_oracle(asc, 2, 1)


@pytest.mark.parametrize("tag", [BIG, ASC, DUAL])
def test_bootstrap_equals_oracle(tag):
    spec = FamilySpec.make(tag)
    nmax = 7 if tag != DUAL else 5
    for n in range(nmax + 1):
        for m in range(n + 1):
            assert bootstrap_mixed_moment(None, spec, n, m) == mixed_moment_oracle(spec, n, m), (n, m)


def test_closed_moment_examples():
    assert closed_mixed_moment("big", 1, 0) == RatFunc(a, 2)
    assert closed_mixed_moment("asc", 1, 0) == RatFunc(a + b, 2)
    assert closed_mixed_moment("aw", 0, 0) == RatFunc.of(1)


def test_aw_moment_examples():
    assert aw_moment_v1(0) == RatFunc.of(1) == aw_moment_v2(0)
    assert aw_moment_v2(2, {"d": ZERO}) == closed_mixed_moment("dualqhahn", 2, 0)
    point = {"q": Fraction(1, 3), "a": Fraction(2, 3), "b": Fraction(3, 4), "c": Fraction(5, 2), "d": Fraction(1, 7)}
    assert aw_moment_v1(1, point) == aw_moment_v2(1, point)


def test_degeneration_chain():
    for n in range(5):
        assert degeneration_chain(n).ok, n
