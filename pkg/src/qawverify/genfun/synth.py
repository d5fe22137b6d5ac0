"""Recurrences for the polynomials P^(1), P^(2) obtained by multiplying a
generating function by (yt)_inf or 1/(-yt)_inf.

The synthesizer works on an abstract sequence symbol: a term keyed (k, e)
stands for P_{n+k}(x, y q^e) and carries a coefficient in s = q^n, y, q and
the family parameters.  Starting from the mixed-argument relation for
P_{n+1}, every argument is moved to a common y-power using

    P_m(Y) = P_m(Yq) - Y (1 - q^m) P_{m-1}(Yq),

and the recurrence is read off.  Concrete polynomials only appear in
``verify_recurrence`` and ``order_probe``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from ..exact.laurent import ONE, ZERO, LaurentPoly, as_poly, var
from ..exact.ratfunc import RatFunc
from ..ortho import FamilySpec, RecurrenceFamily, basis_expand, bind, family_poly
from ..qcore import poch, qbinom, qbinom2
from .products import divided_mul, divided_product

q, s, x, y = var("q"), var("s"), var("x"), var("y")
u = s ** -1


# --- convolutions -------------------------------------------------------------


def convolve_p1_base(polys: Sequence[LaurentPoly], qv=q) -> List[LaurentPoly]:
    """P1_n(x, y) = sum_k qbinom(n,k) (-1)^k y^k q^C(k,2) p_{n-k}(x)."""
    out = []
    for n in range(len(polys)):
        acc = ZERO
        for k in range(n + 1):
            acc = acc + qbinom(n, k, qv) * (-y) ** k * qv ** qbinom2(k) * polys[n - k]
        out.append(acc)
    return out


def convolve_p2_base(polys: Sequence[LaurentPoly], qv=q) -> List[LaurentPoly]:
    """P2_n from sum P2_n q^C(n,2) t^n/(q)_n = (1/(-yt)_inf) sum p_n q^C(n,2) t^n/(q)_n."""
    order = len(polys) - 1
    base = [p * qv ** qbinom2(n) for n, p in enumerate(polys)]
    prod = divided_mul(divided_product([], [-y], order, qv), base, qv)
    return [c * qv ** -qbinom2(n) for n, c in enumerate(prod)]


def convolve_p1(spec: FamilySpec, N: int) -> List[LaurentPoly]:
    return convolve_p1_base([family_poly(spec, n) for n in range(N + 1)], spec.env["q"])


def convolve_p2(spec: FamilySpec, N: int) -> List[LaurentPoly]:
    return convolve_p2_base([family_poly(spec, n) for n in range(N + 1)], spec.env["q"])


# --- recurrences --------------------------------------------------------------


@dataclass(frozen=True)
class SynthRecurrence:
    """P_{n+1} = (A x - C_0) P_n - C_1 P_{n-1} - ... - C_{d-2} P_{n-d+2}, with s = q^n in the C_i."""

    A: Fraction
    coeffs: Tuple[LaurentPoly, ...]

    @property
    def depth(self) -> int:
        return len(self.coeffs) + 1

    def at(self, n: int, env: Mapping[str, LaurentPoly] | None = None) -> List[LaurentPoly]:
        qv = env["q"] if env else q
        vals = [c.subs({"s": qv ** n}) for c in self.coeffs]
        return [bind(v, env) for v in vals] if env else vals

    def subs(self, bindings) -> "SynthRecurrence":
        return SynthRecurrence(self.A, tuple(c.subs(bindings) for c in self.coeffs))

    def sign_flipped(self) -> "SynthRecurrence":
        """Recurrence of (-1)^n P_n."""
        cs = [(-1) ** (i + 1) * c for i, c in enumerate(self.coeffs)]
        return SynthRecurrence(-self.A, tuple(cs))

    def __str__(self) -> str:
        parts = [f"P[n+1] = ({self.A}*x - ({self.coeffs[0]}))*P[n]"]
        for i, c in enumerate(self.coeffs[1:], start=1):
            if not c.is_zero():
                parts.append(f" - ({c})*P[n-{i}]")
        return "".join(parts)


def _strip(coeffs: List[LaurentPoly]) -> Tuple[LaurentPoly, ...]:
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def _read_off(A: Fraction, terms: Dict[Tuple[int, int], LaurentPoly], e0: int) -> Tuple[LaurentPoly, ...]:
    if any(e != e0 for _, e in terms if not terms[(_, e)].is_zero()):
        raise AssertionError("rewriting left mixed y-arguments")
    top = terms.get((1, e0), ZERO)
    if top != ONE:
        raise AssertionError(f"leading coefficient {top} != 1")
    c0 = terms.get((0, e0), ZERO) + A * x
    if "x" in c0.variables():
        raise AssertionError("C_0 still depends on x")
    lowest = min(k for k, _ in terms)
    coeffs = [c0] + [terms.get((-i, e0), ZERO) for i in range(1, -lowest + 1)]
    return _strip(coeffs)


def _add(terms, key, val):
    if val.is_zero():
        return
    v = terms.get(key, ZERO) + val
    if v.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = v


def coefficients_of(p: LaurentPoly, name: str = "s", negate_exponents: bool = False) -> List[LaurentPoly]:
    """Dense coefficient list of p in name (or in name^-1)."""
    parts = as_poly(p).coefficients_in(name)
    if not parts:
        return []
    if negate_exponents:
        parts = {-e: c for e, c in parts.items()}
    if min(parts) < 0:
        raise ValueError(f"not a polynomial in {'1/' if negate_exponents else ''}{name}")
    return [parts.get(j, ZERO) for j in range(max(parts) + 1)]


def synth_p1(A, c: Sequence, d: Sequence) -> SynthRecurrence:
    """Recurrence for P^(1) when b_k = sum c_j q^{kj} and lambda_k/(1-q^k) = sum d_j q^{kj}."""
    A = Fraction(A)
    c = [as_poly(v) for v in c]
    d = [as_poly(v) for v in d]
    for v in list(c) + list(d):
        if "y" in v.variables():
            raise ValueError("recurrence data must not depend on y")
    terms: Dict[Tuple[int, int], LaurentPoly] = {}
    # 0 = -P_{n+1}(y) + (Ax - y) P_n(yq) - sum c_j s^j P_n(yq^{1-j}) - (1-s) sum d_j s^j P_{n-1}(yq^{1-j}),
    # stored with the opposite sign
    _add(terms, (1, 0), ONE)
    _add(terms, (0, 1), -(A * x - y))
    for j, cj in enumerate(c):
        _add(terms, (0, 1 - j), cj * s ** j)
    for j, dj in enumerate(d):
        _add(terms, (-1, 1 - j), (1 - s) * dj * s ** j)
    while True:
        low = [key for key in terms if key[1] < 1]
        if not low:
            break
        e_min = min(e for _, e in low)
        for key in sorted(k for k in low if k[1] == e_min):
            k, e = key
            K = terms.pop(key)
            _add(terms, (k, e + 1), K)
            _add(terms, (k - 1, e + 1), -K * y * q ** e * (1 - s * q ** k))
    coeffs = _read_off(A, terms, 1)
    return SynthRecurrence(A, tuple(cf.subs({"y": y * q ** -1}) for cf in coeffs))


def synth_p2(A, c: Sequence, d: Sequence) -> SynthRecurrence:
    """Recurrence for P^(2) when b_k = sum c_j q^{-kj} and lambda_k/(1-q^k) = sum d_j q^{-kj}, d_0 = 0."""
    A = Fraction(A)
    c = [as_poly(v) for v in c]
    d = [as_poly(v) for v in d]
    if d and not d[0].is_zero():
        raise ValueError("the constant term of lambda_k/(1-q^k) in q^-k must vanish")
    for v in list(c) + list(d):
        if "y" in v.variables():
            raise ValueError("recurrence data must not depend on y")
    terms: Dict[Tuple[int, int], LaurentPoly] = {}
    # 0 = -P_{n+1}(yq) + (Ax - yq) P_n(y) - sum c_j u^j P_n(yq^j) - (1-s) sum d_j u^j P_{n-1}(yq^{j-1})
    _add(terms, (1, 1), ONE)
    _add(terms, (0, 0), -(A * x - y * q))
    for j, cj in enumerate(c):
        _add(terms, (0, j), cj * u ** j)
    for j, dj in enumerate(d):
        if j:
            _add(terms, (-1, j - 1), (1 - s) * dj * u ** j)
    while True:
        high = [key for key in terms if key[1] > 0]
        if not high:
            break
        e_max = max(e for _, e in high)
        for key in sorted(k for k in high if k[1] == e_max):
            k, e = key
            K = terms.pop(key)
            # P_{n+k}(Yq) = P_{n+k}(Y) + Y q^{1-n-k} (1 - q^{n+k}) P_{n+k-1}(Y), Y = y q^{e-1}
            _add(terms, (k, e - 1), K)
            _add(terms, (k - 1, e - 1), K * y * q ** (e - 1) * q ** (1 - k) * u * (1 - s * q ** k))
    return SynthRecurrence(A, _read_off(A, terms, 0))


def synth_from_family(rec: RecurrenceFamily, flipped: bool = False) -> SynthRecurrence:
    """Feed a three-term family to synth_p1 (polynomial in q^k) or synth_p2 (in q^-k)."""
    c = coefficients_of(rec.b_of_s, negate_exponents=flipped)
    d = coefficients_of(rec.lambda_reduced(), negate_exponents=flipped)
    return synth_p2(rec.A, c, d) if flipped else synth_p1(rec.A, c, d)


def degrees(rec: RecurrenceFamily, flipped: bool = False) -> Tuple[int | None, int | None]:
    """(r, s): degrees of b and lambda/(1-q^k) in q^k (or q^-k); None for the zero polynomial."""

    def deg(p):
        cs = coefficients_of(p, negate_exponents=flipped)
        return len(cs) - 1 if cs else None

    return deg(rec.b_of_s), deg(rec.lambda_reduced())


def expected_depth_p1(r: int | None, sd: int | None) -> int:
    return max(2 if r is None else r + 2, 2 if sd is None else sd + 3)


def expected_depth_p2(r: int | None, sd: int | None) -> int:
    # the y-shift in the b-part costs one extra index
    return max(2 if r is None else r + 2, 2 if sd is None else sd + 2)


def predicted_tail(c: Sequence, d: Sequence) -> LaurentPoly:
    """Tail coefficient C_{d-2} of synth_p1 predicted from the leading data c_r, d_s alone."""
    c = [as_poly(v) for v in c]
    d = [as_poly(v) for v in d]
    r = len(c) - 1 if c else None
    sd = len(d) - 1 if d else None
    T = max(-1 if r is None else r, -1 if sd is None else sd + 1)
    if T <= 0:
        raise ValueError("no tail beyond P_n")
    total = ZERO
    if r == T:
        total = total - c[r] * s ** r * (-1) ** r * poch(s, q ** -1, r) * y ** r * q ** (-qbinom2(r))
    if sd is not None and sd + 1 == T:
        total = total - (1 - s) * d[sd] * s ** sd * (-1) ** sd * poch(s * q ** -1, q ** -1, sd) * y ** sd * q ** (
            -qbinom2(sd)
        )
    return (-total).subs({"y": y * q ** -1})


# --- checking against concrete polynomials ----------------------------------------


@dataclass
class RecurrenceCheck:
    equal: bool
    checked: int
    first_failure: int | None = None


def verify_recurrence(polys: Sequence[LaurentPoly], rec: SynthRecurrence, env=None) -> RecurrenceCheck:
    """Check P_{n+1} = (A x - C_0(n)) P_n - sum C_i(n) P_{n-i} for every n with P_{n+1} available."""
    for n in range(len(polys) - 1):
        cs = rec.at(n, env)
        rhs = (rec.A * x - cs[0]) * polys[n]
        for i in range(1, len(cs)):
            if n - i >= 0 and not cs[i].is_zero():
                rhs = rhs - cs[i] * polys[n - i]
        if rhs != polys[n + 1]:
            return RecurrenceCheck(False, n, n)
    return RecurrenceCheck(True, len(polys) - 1)


@dataclass
class OrderProbe:
    depth: int
    feasible: bool
    required: Dict[int, int] = field(default_factory=dict)

    @property
    def minimal_depth(self) -> int:
        return max(self.required.values(), default=2)


def order_probe(polys: Sequence[LaurentPoly], depth: int, A=None) -> OrderProbe:
    """Is P_{n+1} - A x P_n in the span of P_n, ..., P_{n-d+2} for every n in the window?

    Coordinates in the basis P_0..P_n are unique (P_k has degree k), so the
    least depth that works at n is n - (lowest nonzero index) + 2.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2")
    if A is None:
        A = RatFunc(polys[1].coeff("x", 1), polys[0].coeff("x", 0)).as_poly().constant_value()
    required: Dict[int, int] = {}
    for n in range(len(polys) - 1):
        resid = polys[n + 1] - A * x * polys[n]
        if resid.is_zero():
            required[n] = 2
            continue
        coords = basis_expand(None, resid, polys[: n + 1]).coefficients
        low = next(k for k, v in enumerate(coords) if not v.is_zero())
        required[n] = max(2, n - low + 2)
    return OrderProbe(depth, all(v <= depth for v in required.values()), required)


# --- fixtures -------------------------------------------------------------------

a, b = var("a"), var("b")

# Known recurrences for the worked families.  For q-Hermite, P_1 = 2x - y
# forces C_0 = y q^n.
REFERENCE: Dict[str, SynthRecurrence] = {
    "qhermite": SynthRecurrence(Fraction(2), (y * s, 1 - s)),
    "big": SynthRecurrence(Fraction(2), ((a + y) * s, (1 - s) * (1 - a * y * s / q))),
    "asc": SynthRecurrence(
        Fraction(2),
        ((a + b + y) * s, (1 - s) * (1 - (a * b + a * y + b * y) * s / q), a * b * y * s / q ** 2 * (1 - s) * (1 - s / q)),
    ),
    "dqh1": SynthRecurrence(Fraction(1), (y * s, s / q * (1 - s), -y * s / q ** 2 * (1 - s) * (1 - s / q))),
    "dqh2": SynthRecurrence(Fraction(1), (y * u, q * u ** 2 * (1 - s), y * q ** 3 * u ** 3 * (1 - s) * (1 - s / q))),
    # Al-Salam-Carlitz I and II, in the variable a
    "asc1": SynthRecurrence(Fraction(1), ((1 + a) * s, -a * s / q * (1 - s))),
    "asc2": SynthRecurrence(Fraction(1), ((1 + a) * u, a * q * u ** 2 * (1 - s))),
}

GIS_RECURRENCE = SynthRecurrence(
    Fraction(2),
    (ZERO, -(s ** 2 + s ** 2 / q - s / q - 1), ZERO, -(s / q ** 2) * (1 - s) * (1 - s / q) * (1 - s / q ** 2)),
)


def gis_polys(N: int) -> List[LaurentPoly]:
    """H-hat_n from sum H-hat_n t^n/(q)_n = (t^2; q)_inf sum H_n t^n/(q)_n."""
    from ..ortho import QHERMITE

    # (t^2; q)_inf = sum_k (-1)^k q^C(k,2) t^{2k}/(q)_k, rescaled to the t^n/(q)_n normalization
    factor = [ZERO] * (N + 1)
    for k in range(N // 2 + 1):
        factor[2 * k] = (-1) ** k * q ** qbinom2(k) * poch(q ** (k + 1), q, k)
    return divided_mul(factor, [family_poly(FamilySpec.make(QHERMITE), n) for n in range(N + 1)])
