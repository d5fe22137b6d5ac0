"""Orthogonal families of the Askey-Wilson hierarchy and their moment functionals.

The moment functional of a family is *defined* by L(p_0) = 1, L(p_k) = 0 for
k > 0 and realized by exact triangular expansion in the family basis.  The
closed-form moment, norm and connection formulas are kept separate from that
oracle and only ever compared against it.

Parameter values live in an environment attached to a ``FamilySpec``: by
default each of q, a, b, c, d is its own symbol, but any of them may be bound
to a number (probe mode) or to another polynomial (e.g. the dual q-Hahn
family with parameters (b, c, d)).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .exact.laurent import ONE, ZERO, LaurentPoly, as_poly, exact_div, var
from .exact.ratfunc import RatFunc
from .qcore import opbar, poch, qbinom, qbinom2, qmultinom

PARAMS = ("q", "a", "b", "c", "d")
_q, _s, _x = var("q"), var("s"), var("x")
_a, _b, _c, _d = var("a"), var("b"), var("c"), var("d")

QHERMITE = "QHermite"
BIG = "BigQHermite"
ASC = "ASC"
DUAL = "DualQHahn"
AW = "AskeyWilson"
DQH1 = "DiscreteQHermiteI"
DQH2 = "DiscreteQHermiteII"
CUSTOM = "Custom"

FAMILY_TAGS = (QHERMITE, BIG, ASC, DUAL, AW, DQH1, DQH2, CUSTOM)


@dataclass(frozen=True)
class RecurrenceFamily:
    """p_{n+1} = (A x - b_n) p_n - lambda_n p_{n-1}, with b_n, lambda_n given in s = q^n."""

    A: Fraction
    b_of_s: LaurentPoly
    lambda_of_s: LaurentPoly
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.lambda_of_s.subs({"s": 1}).is_zero():
            raise ValueError("lambda must vanish at s = 1")

    def lambda_reduced(self) -> LaurentPoly:
        """lambda(s) / (1 - s)."""
        out = exact_div(self.lambda_of_s, 1 - _s)
        if out is None:
            raise ArithmeticError("lambda(s) is not divisible by 1 - s")
        return out


_DQH_B = (_a + _b + _c) * _s + _a * _b * _c * _s / _q - _a * _b * _c * _s ** 2 - _a * _b * _c * _s ** 2 / _q

RECURRENCES: Dict[str, RecurrenceFamily] = {
    QHERMITE: RecurrenceFamily(Fraction(2), ZERO, 1 - _s),
    BIG: RecurrenceFamily(Fraction(2), _a * _s, 1 - _s, ("a",)),
    ASC: RecurrenceFamily(Fraction(2), (_a + _b) * _s, (1 - _s) * (1 - _a * _b * _s / _q), ("a", "b")),
    DUAL: RecurrenceFamily(
        Fraction(2),
        _DQH_B,
        (1 - _s) * (1 - _a * _b * _s / _q) * (1 - _b * _c * _s / _q) * (1 - _c * _a * _s / _q),
        ("a", "b", "c"),
    ),
    DQH1: RecurrenceFamily(Fraction(1), ZERO, _s / _q * (1 - _s)),
    DQH2: RecurrenceFamily(Fraction(1), ZERO, _q * _s ** -2 * (1 - _s)),
}

FAMILY_PARAMS = {
    QHERMITE: (), BIG: ("a",), ASC: ("a", "b"), DUAL: ("a", "b", "c"),
    AW: ("a", "b", "c", "d"), DQH1: (), DQH2: (),
}


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    bindings: Tuple[Tuple[str, LaurentPoly], ...] = ()
    custom: RecurrenceFamily | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family {self.tag!r}")
        if (self.tag == CUSTOM) != (self.custom is not None):
            raise ValueError("Custom families need a RecurrenceFamily, others must not carry one")

    @classmethod
    def make(cls, tag: str, custom: RecurrenceFamily | None = None, **values) -> "FamilySpec":
        return cls(tag, tuple(sorted((k, as_poly(v)) for k, v in values.items())), custom)

    def with_values(self, **values) -> "FamilySpec":
        merged = dict(self.bindings)
        merged.update({k: as_poly(v) for k, v in values.items()})
        return FamilySpec(self.tag, tuple(sorted(merged.items())), self.custom)

    @property
    def env(self) -> Dict[str, LaurentPoly]:
        out = {p: var(p) for p in PARAMS}
        out.update(dict(self.bindings))
        return out

    @property
    def recurrence(self) -> RecurrenceFamily | None:
        if self.tag == CUSTOM:
            return self.custom
        return RECURRENCES.get(self.tag)

    @property
    def A(self) -> Fraction:
        if self.tag == AW:
            return Fraction(2)
        return self.recurrence.A


def bind(p: LaurentPoly, env: Mapping[str, LaurentPoly]) -> LaurentPoly:
    """Apply the parameter bindings of ``env`` that differ from the plain symbols."""
    moved = {k: v for k, v in env.items() if v != var(k)}
    return p.subs(moved) if moved else p


# --- polynomials ----------------------------------------------------------


class _Growing:
    """Per-family list that is extended on demand; readers only see complete prefixes."""

    def __init__(self, step):
        self._step = step
        self._data: Dict[FamilySpec, list] = {}
        self._lock = threading.RLock()

    def upto(self, spec: FamilySpec, n: int) -> list:
        with self._lock:
            seq = self._data.setdefault(spec, [])
            while len(seq) <= n:
                seq.append(self._step(spec, seq))
            return seq


def _recurrence_step(spec: FamilySpec, seq: list) -> LaurentPoly:
    if not seq:
        return ONE
    rec = spec.recurrence
    env = spec.env
    n = len(seq) - 1
    sn = env["q"] ** n
    bn = bind(rec.b_of_s, env).subs({"s": sn})
    ln = bind(rec.lambda_of_s, env).subs({"s": sn})
    prev = seq[-2] if n else ZERO
    return (rec.A * _x - bn) * seq[-1] - ln * prev


def aw_poly(n: int, env: Mapping[str, LaurentPoly]) -> LaurentPoly:
    """Askey-Wilson p_n from the terminating 4phi3, denominators cleared."""
    q, a, b, c, d = (env[k] for k in PARAMS)
    abcd = a * b * c * d
    out = ZERO
    theta = ONE  # prod_{j<k} (1 - 2 a x q^j + a^2 q^{2j})
    for k in range(n + 1):
        if k:
            theta = theta * (1 - 2 * a * _x * q ** (k - 1) + a * a * q ** (2 * k - 2))
        term = qbinom(n, k, q) * (-1) ** k * q ** (qbinom2(k) - n * k + k)
        term = term * poch(abcd * q ** (n - 1), q, k)
        term = term * poch(a * b * q ** k, q, n - k) * poch(a * c * q ** k, q, n - k) * poch(a * d * q ** k, q, n - k)
        out = out + term * theta
    if n == 0:
        return out
    if a.is_monomial():
        return out * a.inverse_monomial() ** n
    res = exact_div(out, a ** n)
    if res is None:
        raise ArithmeticError("AW polynomial not divisible by a^n")
    return res


_POLYS = _Growing(lambda spec, seq: aw_poly(len(seq), spec.env) if spec.tag == AW else _recurrence_step(spec, seq))


def family_sequence(spec: FamilySpec, n: int) -> Tuple[LaurentPoly, ...]:
    """p_0 .. p_n."""
    return tuple(_POLYS.upto(spec, n)[: n + 1])


def family_poly(spec: FamilySpec, n: int) -> LaurentPoly:
    return _POLYS.upto(spec, n)[n]


def leading_coefficient(spec: FamilySpec, n: int) -> LaurentPoly:
    return family_poly(spec, n).coeff("x", n)


# --- basis expansion --------------------------------------------------------


@dataclass(frozen=True)
class BasisExpansion:
    coefficients: Tuple[RatFunc, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> RatFunc:
        return self.coefficients[k] if k < len(self.coefficients) else RatFunc.of(ZERO)


def _unit_inverse(c: LaurentPoly) -> LaurentPoly | None:
    if c.is_monomial():
        return c.inverse_monomial()
    return None


def basis_expand(spec: FamilySpec, target: LaurentPoly, basis: Sequence[LaurentPoly] | None = None) -> BasisExpansion:
    """Solve target = sum_k c_k p_k by back-substitution from the top degree."""
    target = as_poly(target)
    deg = target.degree("x") if not target.is_zero() else 0
    if basis is None:
        basis = family_sequence(spec, deg)
    coeffs: List = [None] * (deg + 1)
    lcs = [basis[k].coeff("x", k) for k in range(deg + 1)]
    if all(_unit_inverse(lc) is not None for lc in lcs):
        resid = target
        for k in range(deg, -1, -1):
            r = resid.coeff("x", k)
            if r.is_zero():
                coeffs[k] = RatFunc.of(ZERO)
                continue
            ck = r * _unit_inverse(lcs[k])
            coeffs[k] = RatFunc.of(ck)
            resid = resid - ck * basis[k]
        assert resid.is_zero(), "basis expansion left a residual"
        return BasisExpansion(tuple(coeffs))
    # common-denominator path: value = num / den
    num, den = target, ONE
    for k in range(deg, -1, -1):
        lc = lcs[k]
        assert not lc.is_zero(), "zero leading coefficient in basis"
        r = num.coeff("x", k)
        if r.is_zero():
            coeffs[k] = RatFunc.of(ZERO)
            continue
        coeffs[k] = RatFunc(r, den * lc)
        num = num * lc - r * basis[k]
        den = den * lc
    assert num.is_zero(), "basis expansion left a residual"
    return BasisExpansion(tuple(coeffs))


def _x_row(spec: FamilySpec, rows: list) -> Tuple[RatFunc, ...]:
    # rows expand A*x*p_k, which keeps recurrence families integral
    k = len(rows)
    basis = family_sequence(spec, k + 1)
    return basis_expand(spec, spec.A * _x * basis[k], basis).coefficients


_XROWS = _Growing(_x_row)


def x_table(spec: FamilySpec, upto: int) -> list:
    """Row k holds the basis coefficients of A*x*p_k, each from a triangular solve."""
    return _XROWS.upto(spec, upto)


def times_ax(spec: FamilySpec, vec: Sequence[RatFunc]) -> List[RatFunc]:
    """Coefficient vector of A*x * sum_k vec[k] p_k."""
    table = x_table(spec, len(vec) - 1)
    out = [RatFunc.of(ZERO)] * (len(vec) + 1)
    for k, ck in enumerate(vec):
        if ck.is_zero():
            continue
        for j, t in enumerate(table[k]):
            if not t.is_zero():
                out[j] = out[j] + ck * t
    return out


def mixed_moment_vector(spec: FamilySpec, n: int, m: int) -> List[RatFunc]:
    """Basis coefficients of x^n p_m, by n multiplications with the x-table."""
    vec = [RatFunc.of(ZERO)] * m + [RatFunc.of(ONE)]
    for _ in range(n):
        vec = times_ax(spec, vec)
    scale = Fraction(1) / spec.A ** n
    return [c * scale for c in vec]


@lru_cache(maxsize=4096)
def mixed_moment_oracle(spec: FamilySpec, n: int, m: int) -> RatFunc:
    """L(x^n p_m): the p_0-coefficient of x^n p_m in the family basis."""
    if m > n:
        return RatFunc.of(ZERO)
    return mixed_moment_vector(spec, n, m)[0]


def mixed_moment_direct(spec: FamilySpec, n: int, m: int) -> RatFunc:
    """Same value by one triangular solve of x^n p_m (slow; used to cross-check)."""
    return basis_expand(spec, _x ** n * family_poly(spec, m))[0]


def functional(spec: FamilySpec, target: LaurentPoly, m: int = 0) -> RatFunc:
    """L(target * p_m), using L(x^j p_m) for each power of x in target."""
    total = RatFunc.of(ZERO)
    for j, cj in as_poly(target).coefficients_in("x").items():
        if j < 0:
            raise ValueError("negative power of x")
        mom = mixed_moment_oracle(spec, j, m)
        if not mom.is_zero():
            total = total + mom * cj
    return total


# --- closed norms -----------------------------------------------------------


def closed_norm(spec: FamilySpec, n: int) -> RatFunc:
    env = spec.env
    q, a, b, c, d = (env[k] for k in PARAMS)
    qn = poch(q, q, n)
    if spec.tag in (QHERMITE, BIG):
        return RatFunc.of(qn)
    if spec.tag == ASC:
        return RatFunc.of(qn * poch(a * b, q, n))
    if spec.tag == DUAL:
        return RatFunc.of(qn * poch(a * b, q, n) * poch(a * c, q, n) * poch(b * c, q, n))
    if spec.tag == AW:
        num = qn
        for u in (a * b, a * c, a * d, b * c, b * d, c * d, a * b * c * d * q ** (n - 1)):
            num = num * poch(u, q, n)
        return RatFunc(num, poch(a * b * c * d, q, 2 * n))
    if spec.tag == DQH1:
        return RatFunc.of(q ** qbinom2(n) * qn)
    raise ValueError(f"no closed norm for {spec.tag}")


def norm_oracle(spec: FamilySpec, n: int, m: int) -> RatFunc:
    """L(p_n p_m)."""
    return functional(spec, family_poly(spec, n), m)


@dataclass
class NormCheck:
    n: int
    m: int
    ok: bool
    value: RatFunc
    expected: RatFunc


def verify_norms(spec: FamilySpec, nmax: int) -> List[NormCheck]:
    out = []
    for n in range(nmax + 1):
        for m in range(nmax + 1):
            got = norm_oracle(spec, n, m)
            want = closed_norm(spec, n) if n == m else RatFunc.of(ZERO)
            out.append(NormCheck(n, m, got == want, got, want))
    return out


# --- connection coefficients -------------------------------------------------

PAIRS = {(QHERMITE, BIG): "cc0", (BIG, ASC): "cca", (ASC, DUAL): "ccab", (DUAL, AW): "ccabc", (AW, AW): "cc"}


def dual_source(target: FamilySpec) -> FamilySpec:
    """The dual q-Hahn family with parameters (b, c, d) of an Askey-Wilson target."""
    env = target.env
    return FamilySpec.make(DUAL, q=env["q"], a=env["b"], b=env["c"], c=env["d"])


def connection_coeffs(src: FamilySpec, dst: FamilySpec, n: int, A=None) -> List[RatFunc]:
    """c_{n,k}, k = 0..n, with src_n = sum_k c_{n,k} dst_k.

    For the (AskeyWilson, AskeyWilson) pair the source carries parameter A in
    place of a; pass it explicitly or bind ``a`` differently in ``src``.
    """
    kind = PAIRS.get((src.tag, dst.tag))
    if kind is None:
        raise ValueError(f"no connection formula from {src.tag} to {dst.tag}")
    env = dst.env
    q, a, b, c, d = (env[k] for k in PARAMS)
    out: List[RatFunc] = []
    for k in range(n + 1):
        qb = qbinom(n, k, q)
        if kind == "cc0":
            out.append(RatFunc.of(qb * a ** (n - k)))
        elif kind == "cca":
            out.append(RatFunc.of(qb * b ** (n - k)))
        elif kind == "ccab":
            out.append(RatFunc.of(qb * poch(a * b * q ** k, q, n - k) * c ** (n - k)))
        else:
            abcd = a * b * c * d
            num = qb * poch(b * c * q ** k, q, n - k) * poch(b * d * q ** k, q, n - k) * poch(c * d * q ** k, q, n - k)
            den = poch(abcd * q ** (k - 1), q, k) * poch(abcd * q ** (2 * k), q, n - k)
            if kind == "ccabc":
                num = num * a ** (n - k)
            else:
                big_a = src.env["a"] if A is None else as_poly(A)
                # a^{n-k} (A/a)_{n-k} written without dividing by a
                shift = ONE
                for j in range(n - k):
                    shift = shift * (a - big_a * q ** j)
                num = num * shift * poch(big_a * b * c * d * q ** (n - 1), q, k)
            out.append(RatFunc(num, den))
    return out


def connection_oracle_check(src: FamilySpec, dst: FamilySpec, n: int, A=None) -> bool:
    """src_n == sum_k c_{n,k} dst_k as an exact identity."""
    cs = connection_coeffs(src, dst, n, A)
    lhs = RatFunc.of(family_poly(src, n))
    rhs = RatFunc.of(ZERO)
    for k, ck in enumerate(cs):
        rhs = rhs + ck * family_poly(dst, k)
    return lhs == rhs


def _pair_source(dst: FamilySpec) -> FamilySpec:
    env = dst.env
    if dst.tag == BIG:
        return FamilySpec.make(QHERMITE, q=env["q"])
    if dst.tag == ASC:
        return FamilySpec.make(BIG, q=env["q"], a=env["a"])
    if dst.tag == DUAL:
        return FamilySpec.make(ASC, q=env["q"], a=env["a"], b=env["b"])
    if dst.tag == AW:
        return dual_source(dst)
    raise ValueError(f"{dst.tag} has no predecessor in the chain")


def bootstrap_mixed_moment(R: FamilySpec | None, S: FamilySpec, n: int, m: int) -> RatFunc:
    """sum_k L_R(x^n R_k)/L_R(R_k^2) * c_{k,m} * L_S(S_m^2), from oracles and closed norms."""
    if R is None:
        R = _pair_source(S)
    total = RatFunc.of(ZERO)
    for k in range(m, n + 1):
        mom = mixed_moment_oracle(R, n, k)
        if mom.is_zero():
            continue
        ckm = connection_coeffs(R, S, k)[m]
        total = total + mom / closed_norm(R, k) * ckm
    return total * closed_norm(S, m)


# --- closed mixed moments -------------------------------------------------------


def _qsym(p: LaurentPoly, env) -> LaurentPoly:
    """Evaluate a polynomial in q alone under env."""
    return bind(p, {"q": env["q"]})


def _env_of(spec_or_env) -> Dict[str, LaurentPoly]:
    if isinstance(spec_or_env, FamilySpec):
        return spec_or_env.env
    env = {p: var(p) for p in PARAMS}
    if spec_or_env:
        env.update({k: as_poly(v) for k, v in spec_or_env.items()})
    return env


def closed_mixed_moment(family: str, n: int, m: int, env=None) -> RatFunc:
    """The closed multi-sums for L(x^n p_m); family in {big, asc, dualqhahn, aw}."""
    env = _env_of(env)
    q, a, b, c, d = (env[k] for k in PARAMS)
    total = ZERO
    if family == "big":
        for al in range(n - m + 1):
            total = total + _qsym(opbar(n, al + m) * qbinom(al + m, m), env) * a ** al
        return RatFunc.of(total * poch(q, q, m)) / 2 ** n
    if family == "asc":
        for al in range(n - m + 1):
            for be in range(n - m - al + 1):
                w = opbar(n, al + be + m)
                if w.is_zero():
                    continue
                total = total + _qsym(w * qmultinom(al + be + m, [al, be, m]), env) * a ** al * b ** be
        return RatFunc.of(total * poch(q, q, m) * poch(a * b, q, m)) / 2 ** n
    if family == "dualqhahn":
        for al in range(n - m + 1):
            for be in range(n - m - al + 1):
                for ga in range(n - m - al - be + 1):
                    w = opbar(n, al + be + ga + m)
                    if w.is_zero():
                        continue
                    term = _qsym(w * qmultinom(al + be + ga + m, [al, be, ga, m]), env)
                    total = total + term * a ** al * b ** be * c ** ga * poch(a * b, q, ga + m)
        pre = poch(q, q, m) * poch(a * c, q, m) * poch(b * c, q, m)
        return RatFunc.of(total * pre) / 2 ** n
    if family == "aw":
        return _aw_closed(n, m, env)
    raise ValueError(f"unknown family {family!r}")


def _quad_indices(n: int):
    for al in range(n + 1):
        for be in range(n - al + 1):
            for ga in range(n - al - be + 1):
                for de in range(n - al - be - ga + 1):
                    if (n - al - be - ga - de) % 2 == 0:
                        yield al, be, ga, de


def _quad_weight(n, al, be, ga, de, env) -> LaurentPoly:
    tot = al + be + ga + de
    w = opbar(n, tot)
    if w.is_zero():
        return ZERO
    a, b, c, d = (env[k] for k in "abcd")
    return _qsym(w * qmultinom(tot, [al, be, ga, de]), env) * a ** al * b ** be * c ** ga * d ** de


def _aw_closed(n: int, m: int, env) -> RatFunc:
    q, a, b, c, d = (env[k] for k in PARAMS)
    abcd = a * b * c * d
    total = RatFunc.of(ZERO)
    for al, be, ga, de in _quad_indices(n):
        if al < m:
            continue  # (q^alpha; q^-1)_m vanishes
        w = _quad_weight(n, al, be, ga, de, env)
        if w.is_zero():
            continue
        num = w * poch(b * d, q, al) * poch(c * d, q, al) * poch(b * c, q, al + de)
        num = num * poch(a * b, q, m) * poch(a * c, q, m) * poch(a * d, q, m) * poch(q ** al, q ** -1, m)
        den = poch(abcd, q, al) * poch(abcd * q ** al, q, m)
        total = total + RatFunc(num, den)
    if m:
        total = total / RatFunc.of(a ** m)
    return total / 2 ** n


def aw_moment_v2(n: int, env=None) -> RatFunc:
    """L(x^n) for Askey-Wilson, (bd)_al (cd)_al (bc)_{al+de} / (abcd)_al form."""
    env = _env_of(env)
    q, a, b, c, d = (env[k] for k in PARAMS)
    total = RatFunc.of(ZERO)
    for al, be, ga, de in _quad_indices(n):
        w = _quad_weight(n, al, be, ga, de, env)
        if w.is_zero():
            continue
        num = w * poch(b * d, q, al) * poch(c * d, q, al) * poch(b * c, q, al + de)
        total = total + RatFunc(num, poch(a * b * c * d, q, al))
    return total / 2 ** n


def aw_moment_v1(n: int, env=None) -> RatFunc:
    """L(x^n) for Askey-Wilson, (bc)_{al+de} (bd)_al (ac)_de / (abcd)_{al+de} form."""
    env = _env_of(env)
    q, a, b, c, d = (env[k] for k in PARAMS)
    total = RatFunc.of(ZERO)
    for al, be, ga, de in _quad_indices(n):
        w = _quad_weight(n, al, be, ga, de, env)
        if w.is_zero():
            continue
        num = w * poch(b * c, q, al + de) * poch(b * d, q, al) * poch(a * c, q, de)
        total = total + RatFunc(num, poch(a * b * c * d, q, al + de))
    return total / 2 ** n


def hermite_moment_closed(n: int, m: int, env=None) -> RatFunc:
    """(q)_m / 2^n * opbar(n, m)."""
    env = _env_of(env)
    return RatFunc.of(_qsym(opbar(n, m), env) * poch(env["q"], env["q"], m)) / 2 ** n


CLOSED_FAMILY = {BIG: "big", ASC: "asc", DUAL: "dualqhahn", AW: "aw"}


@dataclass
class Degeneration:
    n: int
    d0: bool
    c0: bool
    b0: bool
    a0: bool

    @property
    def ok(self) -> bool:
        return self.d0 and self.c0 and self.b0 and self.a0


def degeneration_chain(n: int) -> Degeneration:
    """L(x^n) along AW -(d=0)-> dual q-Hahn -(c=0)-> ASC -(b=0)-> big -(a=0)-> q-Hermite."""
    aw = aw_moment_v2(n, {"d": ZERO})
    dual = closed_mixed_moment("dualqhahn", n, 0)
    dual_c0 = closed_mixed_moment("dualqhahn", n, 0, {"c": ZERO})
    asc = closed_mixed_moment("asc", n, 0)
    asc_b0 = closed_mixed_moment("asc", n, 0, {"b": ZERO})
    big = closed_mixed_moment("big", n, 0)
    big_a0 = closed_mixed_moment("big", n, 0, {"a": ZERO})
    return Degeneration(n, aw == dual, dual_c0 == asc, asc_b0 == big, big_a0 == hermite_moment_closed(n, 0))
