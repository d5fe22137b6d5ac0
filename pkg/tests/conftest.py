from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qawverify.exact import ZERO, LaurentPoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_VARS = ("q", "a", "x", "y")

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
terms = st.tuples(
    st.dictionaries(st.sampled_from(SMALL_VARS), st.integers(min_value=-2, max_value=3), max_size=3),
    coefficients,
)


@st.composite
def laurent_polys(draw, max_terms=4):
    out = ZERO
    for exps, c in draw(st.lists(terms, max_size=max_terms)):
        out = out + LaurentPoly.monomial(exps, c)
    return out


@st.composite
def polys_in_q(draw, max_deg=4):
    cs = draw(st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=max_deg + 1))
    return sum((LaurentPoly.monomial({"q": k}, c) for k, c in enumerate(cs)), ZERO)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import CRITERIA_LINES

    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


nonzero_fraction = st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9)
