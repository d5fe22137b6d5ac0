from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qawverify.dbqh import h_explicit
from qawverify.exact import ONE, RatFunc, var
from qawverify.genfun import (
    REFERENCE,
    GF_NAMES,
    GIS_RECURRENCE,
    InfProductSpec,
    convolve_p1,
    convolve_p2,
    degrees,
    dual_q_hahn_eq3,
    expected_depth_p1,
    expected_depth_p2,
    gf_family_series,
    gis_polys,
    order_probe,
    predicted_tail,
    product_series,
    synth_from_family,
    synth_p1,
    synth_p2,
    verify_gf_identity,
    verify_recurrence,
)
from qawverify.genfun.products import divided_product
from qawverify.ortho import ASC, BIG, CUSTOM, DQH1, DQH2, DUAL, QHERMITE, FamilySpec, RecurrenceFamily, family_poly

q, s, x, y, z, a, b = (var(n) for n in "q s x y z a b".split())


# --- products and generating functions ------------------------------------------


def test_empty_product_is_one():
    ser = product_series(InfProductSpec.of(), 4)
    assert ser.coeffs == [RatFunc.of(1)] + [RatFunc.of(0)] * 4


def test_plain_product_coefficients():
    ser = product_series(InfProductSpec.of([ONE]), 2)
    assert ser[1] == RatFunc(-ONE, 1 - q)
    assert ser[2] == RatFunc(q, (1 - q) * (1 - q ** 2))


def test_divided_normalization_of_plain_product():
    assert divided_product([ONE], [], 3) == [ONE, -ONE, q, -(q ** 3)]


def test_hermite_product_linear_term():
    ser = product_series(InfProductSpec.of([], [z, z ** -1]), 2)
    assert ser[1] == RatFunc(z + z ** -1, 1 - q)


def test_hermite_gf_series():
    ser = gf_family_series(FamilySpec.make(QHERMITE), 3)
    assert ser[0] == RatFunc.of(1)
    assert ser[1] == RatFunc(z + z ** -1, 1 - q)


def test_big_hermite_gf_order_three():
    lhs = gf_family_series(FamilySpec.make(BIG), 3)
    assert lhs == product_series(InfProductSpec.of([a], [z, z ** -1]), 3)


@pytest.mark.parametrize("name", GF_NAMES)
def test_named_identities_to_order_eight(name):
    res = verify_gf_identity(name, 8)
    assert res.equal, res


def test_dual_q_hahn_low_orders():
    assert verify_gf_identity("dual_q_hahn", 0).equal
    lhs, rhs = dual_q_hahn_eq3(3)
    assert lhs == rhs


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_gf_identity("nope")


# --- convolutions -------------------------------------------------------------------


def test_convolve_p1_examples():
    assert convolve_p1(FamilySpec.make(QHERMITE), 1) == [ONE, 2 * x - y]
    h2 = convolve_p1(FamilySpec.make(DQH1), 2)[2]
    assert h2 == x ** 2 - (1 + q) * x * y + q * y ** 2 - (1 - q)
    assert h2 == h_explicit(2)


def test_convolve_p2_examples():
    polys = convolve_p2(FamilySpec.make(DQH2), 4)
    assert polys[0] == ONE
    # 1/(-yt)_inf has t^1/(q)_1 coefficient -y, so P2_1 = p_1 - y
    assert polys[1] == x - y
    spec = FamilySpec.make(DQH2)
    assert [p.subs({"y": 0}) for p in polys] == [family_poly(spec, n) for n in range(5)]


# --- reference recurrences -------------------------------------------------------------


def _synth(name):
    spec = FamilySpec.make({"qhermite": QHERMITE, "big": BIG, "asc": ASC, "dqh1": DQH1, "dqh2": DQH2}[name])
    return synth_from_family(spec.recurrence, flipped=name == "dqh2")


@pytest.mark.parametrize("name", ["qhermite", "big", "asc", "dqh1", "dqh2"])
def test_synthesized_matches_display(name):
    rec = _synth(name)
    assert (rec.A, rec.coeffs) == (REFERENCE[name].A, REFERENCE[name].coeffs)


def test_qhermite_first_coefficient_uses_q_to_the_n():
    # P_1 = 2x - y forces C_0 = y at n = 0
    rec = _synth("qhermite")
    assert rec.coeffs[0] == y * s
    assert verify_recurrence(convolve_p1(FamilySpec.make(QHERMITE), 10), rec).equal


def test_al_salam_chihara_display():
    rec = _synth("big")
    assert rec.coeffs == ((a + y) * s, (1 - s) * (1 - a * y * s / q))


def test_asc_four_term_tail():
    rec = _synth("asc")
    assert rec.depth == 4
    assert rec.coeffs[2] == a * b * y * s * q ** -2 * (1 - s) * (1 - s / q)


def test_al_salam_carlitz_fixtures():
    rec1 = synth_p1(1, [0, 1], []).subs({"y": a})
    assert rec1.coeffs == REFERENCE["asc1"].coeffs
    rec2 = synth_p2(-1, [0, -1], []).sign_flipped().subs({"y": -a})
    assert (rec2.A, rec2.coeffs) == (1, REFERENCE["asc2"].coeffs)


def test_degenerate_p2_input():
    assert synth_p2(1, [], []).depth == 2


def test_p2_rejects_constant_lambda_term():
    with pytest.raises(ValueError):
        synth_p2(1, [], [1])


def test_y_dependent_data_rejected():
    with pytest.raises(ValueError):
        synth_p1(1, [y], [])


def test_dual_q_hahn_depth():
    spec = FamilySpec.make(DUAL)
    rec = synth_from_family(spec.recurrence)
    assert rec.depth == 6
    assert expected_depth_p1(*degrees(spec.recurrence)) == 6


# --- order probe ---------------------------------------------------------------------


def test_order_probe_examples():
    big = convolve_p1(FamilySpec.make(BIG), 7)
    assert order_probe(big, 3).feasible
    hermite = [family_poly(FamilySpec.make(QHERMITE), n) for n in range(6)]
    assert not order_probe(hermite, 2).feasible
    assert order_probe(hermite, 3).minimal_depth == 3


def test_gis_recurrence():
    polys = gis_polys(10)
    assert verify_recurrence(polys, GIS_RECURRENCE).equal
    assert order_probe(polys, 5).feasible
    assert not order_probe(polys, 4).feasible


# --- random recurrence data -----------------------------------------------------------

small_ints = st.integers(-2, 2)
coeff_lists = st.lists(small_ints, max_size=3)


def _custom(A, c, d, flipped=False):
    var_s = s ** -1 if flipped else s
    b_of_s = sum((cj * var_s ** j for j, cj in enumerate(c)), 0 * ONE)
    lam = (1 - s) * sum((dj * var_s ** j for j, dj in enumerate(d)), 0 * ONE)
    return RecurrenceFamily(Fraction(A), b_of_s, lam)


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


@given(st.sampled_from([1, 2]), coeff_lists, coeff_lists)
def test_p1_synthesis_random_families(A, c, d):
    c, d = _trim(c), _trim(d)
    fam = _custom(A, c, d)
    rec = synth_from_family(fam)
    # depth is exactly max(r + 2, s + 3), so the tail never cancels
    assert rec.depth == expected_depth_p1(*degrees(fam))
    if rec.depth > 2:
        assert rec.coeffs[-1] == predicted_tail(c, d)
    # y = 0 gives back the input recurrence
    base = rec.subs({"y": 0})
    assert base.coeffs[0] == fam.b_of_s
    assert (base.coeffs[1] if len(base.coeffs) > 1 else 0 * ONE) == fam.lambda_of_s
    assert all(cf.is_zero() for cf in base.coeffs[2:])
    polys = convolve_p1(FamilySpec.make(CUSTOM, custom=fam), 6)
    assert verify_recurrence(polys, rec).equal


@given(st.sampled_from([1, -1]), coeff_lists, coeff_lists)
def test_p2_synthesis_random_families(A, c, d):
    c, d = _trim(c), _trim([0] + d[1:])
    fam = _custom(A, c, d, flipped=True)
    rec = synth_from_family(fam, flipped=True)
    assert rec.depth == expected_depth_p2(*degrees(fam, flipped=True))
    base = rec.subs({"y": 0})
    assert base.coeffs[0] == fam.b_of_s
    assert (base.coeffs[1] if len(base.coeffs) > 1 else 0 * ONE) == fam.lambda_of_s
    polys = convolve_p2(FamilySpec.make(CUSTOM, custom=fam), 6)
    assert verify_recurrence(polys, rec).equal
