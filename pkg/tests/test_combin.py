import pytest
from hypothesis import given
from hypothesis import strategies as st

from qawverify import combin, dbqh
from qawverify.combin import GImage, Matching
from qawverify.exact import ONE, ZERO, var
from qawverify.qcore import q_odd_double_factorial

q, x, y = var("q"), var("x"), var("y")


def test_fbm_counts():
    assert [len(list(combin.enumerate_fbm(n))) for n in range(6)] == [1, 2, 5, 14, 43, 142]


def test_enumeration_bound():
    with pytest.raises(ValueError):
        list(combin.enumerate_fbm(11))
    with pytest.raises(ValueError):
        list(combin.enumerate_fbm(-1))


def test_weight_examples():
    assert combin.weight(Matching(2, ((1, 2),))) == -ONE
    assert combin.weight(Matching(2, (), ((1, "y"), (2, "y")))) == q * y ** 2
    assert combin.weight(Matching(1, (), ((1, "x"),))) == x


def test_weight_sum_examples():
    assert combin.fbm_weight_sum(0) == ONE
    assert combin.fbm_weight_sum(1) == x - y
    assert combin.fbm_weight_sum(2) == x ** 2 - (1 + q) * x * y + q * y ** 2 - 1


def test_weight_sum_is_hstar():
    for n in range(9):
        assert combin.fbm_weight_sum(n) == dbqh.hstar(n), n


def test_statistics_partition_pairs():
    for m in combin.enumerate_fbm(6):
        st_ = combin.stats(m)
        k = len(m.edges)
        assert st_.cro + st_.nes + st_.ali == k * (k - 1) // 2
        assert len(m.edges) * 2 + len(m.colors) == m.n


def test_complete_matchings():
    weights = sorted((combin.stats(m).cro for m in combin.enumerate_cm(4)))
    assert weights == [0, 0, 1]
    assert len(list(combin.enumerate_cm(6))) == 15
    for n in range(6):
        assert combin.cm_distribution_checks(n).ok, n
    assert q_odd_double_factorial(2) == 1 + q + q ** 2


def test_bijection_edge_case():
    img = combin.bijection_g(Matching(2, ((1, 2),)))
    assert img == GImage(1, "00", ((1, 2),), ())


def test_bijection_small_n():
    for n in range(7):
        chk = combin.bijection_check(n)
        assert chk.ok, chk


@given(st.integers(0, 6), st.data())
def test_bijection_round_trip(n, data):
    items = list(combin.enumerate_fbm(n))
    m = data.draw(st.sampled_from(items))
    img = combin.bijection_g(m)
    assert combin.bijection_g_inverse(img) == m
    assert combin.factorized_weight(img) == combin.weight(m)


def test_w_decomposition_examples():
    assert combin.w_decomposition(1) == (ZERO, x, -y)
    assert combin.w_decomposition(2)[0] == -ONE


def test_w_claims():
    for n in range(9):
        assert combin.w_claims_check(n).ok, n


def test_motzkin_examples():
    paths0 = {"".join(p.steps) for p in combin.enumerate_motzkin2(2, 0)}
    assert paths0 == {"UD", "HH"}
    assert combin.motzkin_sum(2, 0) == y ** 2 + 1 - q
    assert combin.motzkin_sum(1, 1) == ONE
    assert combin.motzkin_sum(2, 1) == y * (1 + q)


def test_motzkin_paths_stay_above_axis():
    for p in combin.enumerate_motzkin2(7, 0):
        assert min(p.heights) >= 0 and p.heights[-1] == 0


def test_motzkin_sums_match_functionals():
    for n in range(11):
        assert combin.motzkin_sum(n, 0) == dbqh.dual_moments_oracle(n, 0) == dbqh.dual_moments_closed(n, 0)
        assert combin.motzkin_sum(n, 1) == dbqh.dual_moments_oracle(n, 1)


def test_dump_lines_sorted_and_stable():
    lines = combin.dump_lines(combin.enumerate_fbm(2))
    assert lines == sorted(lines) and len(lines) == 5
    assert lines == combin.dump_lines(combin.enumerate_fbm(2))
