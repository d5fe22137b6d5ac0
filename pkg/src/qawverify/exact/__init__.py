"""Exact arithmetic: Laurent polynomials, rational functions, truncated series."""

from .interchange import dumps_poly, loads_poly, parse_poly, parse_ratfunc, poly_from_obj, poly_to_obj
from .laurent import ONE, VARS, ZERO, LaurentPoly, as_poly, exact_div, gaussian_reduce, var
from .probe import EQUAL, INCONCLUSIVE, UNEQUAL, ProbeResult, random_rational_probe
from .ratfunc import RatFunc, substitute
from .series import TruncSeries, series_div, series_mul

poly_substitute = substitute

__all__ = [
    "EQUAL", "INCONCLUSIVE", "ONE", "UNEQUAL", "VARS", "ZERO",
    "LaurentPoly", "ProbeResult", "RatFunc", "TruncSeries",
    "as_poly", "dumps_poly", "exact_div", "gaussian_reduce", "loads_poly",
    "parse_poly", "parse_ratfunc", "poly_from_obj", "poly_substitute", "poly_to_obj",
    "random_rational_probe", "series_div", "series_mul", "substitute", "var",
]
