"""Check suites: each group returns a list of Case records.

Groups take their bounds as arguments so the acceptance tests can call them
at the exact sizes they need, while ``run_suite`` feeds them CLI options.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .. import combin, dbqh
from ..exact.interchange import poly_to_obj, ratfunc_to_obj
from ..exact.laurent import LaurentPoly, var
from ..exact.probe import random_rational_probe
from ..exact.ratfunc import RatFunc
from ..genfun import (
    REFERENCE,
    GF_NAMES,
    GIS_RECURRENCE,
    asc1_base,
    asc2_from_gf,
    convolve_p1,
    convolve_p1_base,
    convolve_p2,
    gis_polys,
    order_probe,
    synth_from_family,
    synth_p1,
    synth_p2,
    verify_gf_identity,
    verify_recurrence,
)
from ..ortho import (
    ASC,
    AW,
    BIG,
    DQH1,
    DQH2,
    DUAL,
    QHERMITE,
    FamilySpec,
    aw_moment_v1,
    aw_moment_v2,
    bootstrap_mixed_moment,
    closed_mixed_moment,
    closed_norm,
    connection_oracle_check,
    degeneration_chain,
    dual_source,
    hermite_moment_closed,
    mixed_moment_oracle,
    norm_oracle,
)

PASS, FAIL, REPORTED = "PASS", "FAIL", "REPORTED"
SUITES = ("moments", "norms", "connection", "genfun", "synth", "dbqh", "combin")

FAMILY_NAMES = {
    "qhermite": QHERMITE,
    "big": BIG,
    "asc": ASC,
    "dualqhahn": DUAL,
    "aw": AW,
    "dqh1": DQH1,
    "dqh2": DQH2,
}
CLOSED_NAME = {BIG: "big", ASC: "asc", DUAL: "dualqhahn", AW: "aw"}
PROBE_VARS = ["q", "a", "b", "c", "d"]
q = var("q")


@dataclass
class Options:
    nmax: int = 6
    order: int = 8
    mode: Optional[str] = None  # None: symbolic up to three parameters, probe for Askey-Wilson
    trials: int = 20
    seed: int = 20240101
    family: Optional[str] = None

    def mode_for(self, tag: str) -> str:
        if self.mode:
            return self.mode
        return "probe" if tag == AW else "symbolic"


@dataclass
class Case:
    id: str
    status: str
    params: Dict[str, object] = field(default_factory=dict)
    lhs: object = None
    rhs: object = None
    note: Optional[str] = None

    def to_obj(self) -> dict:
        out = {"schema": 1, "id": self.id, "status": self.status, "params": self.params}
        if self.status != PASS:
            if self.lhs is not None:
                out["lhs"] = _serialize(self.lhs)
            if self.rhs is not None:
                out["rhs"] = _serialize(self.rhs)
            if self.note:
                out["note"] = self.note
        return out


def _serialize(v):
    if isinstance(v, RatFunc):
        return ratfunc_to_obj(v)
    if isinstance(v, LaurentPoly):
        return poly_to_obj(v)
    return str(v)


def _eq_case(cid: str, lhs, rhs, **params) -> Case:
    return Case(cid, PASS if lhs == rhs else FAIL, params, lhs, rhs)


def _bool_case(cid: str, ok: bool, note: str | None = None, **params) -> Case:
    return Case(cid, PASS if ok else FAIL, params, note=None if ok else note)


def _probe_case(cid: str, lhs: Callable, rhs: Callable, opts: Options, variables=PROBE_VARS, **params) -> Case:
    res = random_rational_probe(lhs, rhs, trials=opts.trials, seed=opts.seed, variables=variables)
    params = dict(params, seed=opts.seed, trials=opts.trials)
    note = None if res else f"{res.verdict} at {res.counterexample}"
    return Case(cid, PASS if res else FAIL, params, note=note)


def _numeric(tag: str):
    return lambda p: FamilySpec.make(tag, **p)


def _tag(name: str) -> str:
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; expected one of {sorted(FAMILY_NAMES)}")
    return FAMILY_NAMES[name]


# --- moments ------------------------------------------------------------------


def hermite_kernel_cases(nmax: int) -> List[Case]:
    spec = FamilySpec.make(QHERMITE)
    return [
        _eq_case(f"moments/qhermite/n={n:02d}/m={m:02d}", hermite_moment_closed(n, m), mixed_moment_oracle(spec, n, m), n=n, m=m)
        for n in range(nmax + 1)
        for m in range(n + 1)
    ]


def closed_moment_cases(tag: str, nmax: int, opts: Options, mmax: int | None = None) -> List[Case]:
    name = CLOSED_NAME[tag]
    out = []
    for n in range(nmax + 1):
        for m in range(min(n, nmax if mmax is None else mmax) + 1):
            cid = f"moments/{name}/n={n:02d}/m={m:02d}"
            if opts.mode_for(tag) == "probe":
                out.append(_probe_case(
                    cid,
                    lambda p, n=n, m=m: closed_mixed_moment(name, n, m, p),
                    lambda p, n=n, m=m: mixed_moment_oracle(_numeric(tag)(p), n, m),
                    opts, n=n, m=m,
                ))
            else:
                out.append(_eq_case(cid, closed_mixed_moment(name, n, m), mixed_moment_oracle(FamilySpec.make(tag), n, m), n=n, m=m))
    return out


def aw_moment_cases(nmax: int, opts: Options) -> List[Case]:
    out = []
    spec = _numeric(AW)
    for n in range(nmax + 1):
        out.append(_probe_case(f"moments/awmoment/v2-oracle/n={n:02d}",
                               lambda p, n=n: aw_moment_v2(n, p), lambda p, n=n: mixed_moment_oracle(spec(p), n, 0), opts, n=n))
        out.append(_probe_case(f"moments/awmoment/v1-v2/n={n:02d}",
                               lambda p, n=n: aw_moment_v1(n, p), lambda p, n=n: aw_moment_v2(n, p), opts, n=n))
    return out


def degeneration_cases(nmax: int) -> List[Case]:
    out = []
    for n in range(nmax + 1):
        d = degeneration_chain(n)
        for step in ("d0", "c0", "b0", "a0"):
            out.append(_bool_case(f"moments/degeneration/{step}/n={n:02d}", getattr(d, step), n=n))
    return out


def moments_suite(opts: Options) -> List[Case]:
    fams = [opts.family] if opts.family else ["qhermite", "big", "asc", "dualqhahn", "aw"]
    out: List[Case] = []
    for name in fams:
        tag = _tag(name)
        if tag == QHERMITE:
            out += hermite_kernel_cases(opts.nmax)
        elif tag == AW:
            out += closed_moment_cases(AW, opts.nmax, opts, mmax=2)
            out += aw_moment_cases(opts.nmax, opts)
        elif tag in CLOSED_NAME:
            out += closed_moment_cases(tag, opts.nmax, opts)
        else:
            raise ValueError(f"no closed mixed moments for {name}")
    if not opts.family:
        out += degeneration_cases(opts.nmax)
    return out


# --- norms --------------------------------------------------------------------


def norm_cases(tag: str, nmax: int, opts: Options) -> List[Case]:
    name = next(k for k, v in FAMILY_NAMES.items() if v == tag)
    out = []
    for n in range(nmax + 1):
        for m in range(nmax + 1):
            cid = f"norms/{name}/n={n:02d}/m={m:02d}"

            def want(spec, n=n, m=m):
                return closed_norm(spec, n) if n == m else RatFunc.of(0)

            if opts.mode_for(tag) == "probe":
                out.append(_probe_case(cid, lambda p, n=n, m=m: norm_oracle(_numeric(tag)(p), n, m),
                                       lambda p: want(_numeric(tag)(p)), opts, n=n, m=m))
            else:
                spec = FamilySpec.make(tag)
                out.append(_eq_case(cid, norm_oracle(spec, n, m), want(spec), n=n, m=m))
    return out


NORM_FAMILIES = ("qhermite", "big", "asc", "dualqhahn", "aw")


def norms_suite(opts: Options) -> List[Case]:
    fams = [opts.family] if opts.family else list(NORM_FAMILIES)
    out = []
    for name in fams:
        out += norm_cases(_tag(name), opts.nmax, opts)
    return out


# --- connection coefficients and the bootstrap ------------------------------------


CHAIN = ((QHERMITE, BIG, "cc0"), (BIG, ASC, "cca"), (ASC, DUAL, "ccab"), (DUAL, AW, "ccabc"), (AW, AW, "cc"))


def _connection_ok(src_tag: str, dst_tag: str, n: int, env: Dict[str, object]) -> bool:
    """src_n = sum_k c_{n,k} dst_k; for the Askey-Wilson self-connection the source has a -> A."""
    base = {k: v for k, v in env.items() if k in PROBE_VARS}
    dst = FamilySpec.make(dst_tag, **base)
    if src_tag == AW:
        big_a = env.get("A", var("t"))
        return connection_oracle_check(dst.with_values(a=big_a), dst, n, big_a)
    src = dual_source(dst) if dst_tag == AW else FamilySpec.make(src_tag, **base)
    return connection_oracle_check(src, dst, n)


def connection_cases(nmax: int, opts: Options) -> List[Case]:
    out = []
    for src_tag, dst_tag, kind in CHAIN:
        uses_aw = AW in (src_tag, dst_tag)
        for n in range(nmax + 1):
            cid = f"connection/{kind}/n={n:02d}"
            if uses_aw and opts.mode_for(AW) == "probe":
                variables = PROBE_VARS + (["A"] if src_tag == AW else [])
                out.append(_probe_case(
                    cid,
                    lambda p, n=n, s=src_tag, d=dst_tag: RatFunc.of(int(_connection_ok(s, d, n, p))),
                    lambda p: RatFunc.of(1),
                    opts, variables=variables, n=n,
                ))
            else:
                out.append(_bool_case(cid, _connection_ok(src_tag, dst_tag, n, {}), n=n))
    return out


def bootstrap_cases(nmax: int, opts: Options) -> List[Case]:
    out = []
    for _, dst_tag, kind in CHAIN[:4]:
        name = CLOSED_NAME[dst_tag]
        for n in range(nmax + 1):
            for m in range(n + 1):
                cid = f"connection/bootstrap-{name}/n={n:02d}/m={m:02d}"
                if dst_tag == AW and opts.mode_for(AW) == "probe":
                    out.append(_probe_case(
                        cid,
                        lambda p, n=n, m=m: bootstrap_mixed_moment(None, _numeric(AW)(p), n, m),
                        lambda p, n=n, m=m: mixed_moment_oracle(_numeric(AW)(p), n, m),
                        opts, n=n, m=m,
                    ))
                else:
                    spec = FamilySpec.make(dst_tag)
                    out.append(_eq_case(cid, bootstrap_mixed_moment(None, spec, n, m), mixed_moment_oracle(spec, n, m), n=n, m=m))
    return out


def connection_suite(opts: Options) -> List[Case]:
    return connection_cases(min(opts.nmax, 5), opts) + bootstrap_cases(min(opts.nmax, 5), opts)


# --- generating functions ---------------------------------------------------------


def genfun_cases(order: int) -> List[Case]:
    out = []
    for name in GF_NAMES:
        res = verify_gf_identity(name, order)
        note = None if res.equal else f"first mismatch at t^{res.first_mismatch}"
        out.append(_bool_case(f"genfun/{name}", res.equal, note, order=order))
    return out


def genfun_suite(opts: Options) -> List[Case]:
    return genfun_cases(opts.order)


# --- synthesizer ------------------------------------------------------------------

a = var("a")


def _synth_fixture(name: str):
    """(synthesized recurrence in the family's own variables, polynomial sequence builder)."""
    if name in ("qhermite", "big", "asc", "dqh1"):
        spec = FamilySpec.make({"qhermite": QHERMITE, "big": BIG, "asc": ASC, "dqh1": DQH1}[name])
        return synth_from_family(spec.recurrence), lambda N: convolve_p1(spec, N)
    if name == "dqh2":
        spec = FamilySpec.make(DQH2)
        return synth_from_family(spec.recurrence, flipped=True), lambda N: convolve_p2(spec, N)
    if name == "asc1":
        rec = synth_p1(1, [0, 1], []).subs({"y": a})
        return rec, lambda N: [p.subs({"y": a}) for p in convolve_p1_base([asc1_base(n) for n in range(N + 1)])]
    if name == "asc2":
        rec = synth_p2(-1, [0, -1], []).sign_flipped().subs({"y": -a})
        return rec, lambda N: asc2_from_gf(N)
    raise ValueError(name)


SYNTH_FIXTURES = ("big", "asc", "dqh1", "dqh2", "asc1", "asc2")
# numeric parameters for the depth-6 dual q-Hahn probe
DUAL_POINT = {"q": Fraction(3, 7), "a": Fraction(2, 5), "b": Fraction(5, 11), "c": Fraction(7, 3)}


def synth_cases(nmax: int) -> List[Case]:
    out = []
    for name in SYNTH_FIXTURES:
        rec, build = _synth_fixture(name)
        shown = REFERENCE[name]
        same = rec.A == shown.A and rec.coeffs == shown.coeffs
        out.append(_bool_case(f"synth/{name}/reference", same, f"synthesized {rec}", depth=rec.depth))
        res = verify_recurrence(build(nmax), rec)
        out.append(_bool_case(f"synth/{name}/convolution", res.equal, f"first failure at n={res.first_failure}", n=nmax))
    spec = FamilySpec.make(DUAL)
    rec = synth_from_family(spec.recurrence)
    out.append(_bool_case("synth/dualqhahn/depth", rec.depth == 6, f"depth {rec.depth}", depth=rec.depth))
    num = FamilySpec.make(DUAL, **DUAL_POINT)
    polys = convolve_p1(num, nmax)
    res = verify_recurrence(polys, rec, num.env)
    out.append(_bool_case("synth/dualqhahn/convolution", res.equal, f"first failure at n={res.first_failure}", n=nmax))
    out.append(_bool_case("synth/dualqhahn/depth6-feasible", order_probe(polys, 6).feasible, n=nmax))
    out.append(_bool_case("synth/dualqhahn/depth5-infeasible", not order_probe(polys, 5).feasible, n=nmax))
    return out


def gis_cases(nmax: int) -> List[Case]:
    polys = gis_polys(nmax)
    res = verify_recurrence(polys, GIS_RECURRENCE)
    probe = order_probe(polys, 5)
    return [
        _bool_case("synth/gis/recurrence", res.equal, f"first failure at n={res.first_failure}", n=nmax),
        _bool_case("synth/gis/minimal-depth", probe.minimal_depth == 5, f"minimal depth {probe.minimal_depth}", n=nmax),
    ]


def synth_suite(opts: Options) -> List[Case]:
    return synth_cases(max(opts.nmax, 6)) + gis_cases(max(opts.nmax, 8))


# --- discrete big q-Hermite -------------------------------------------------------


def _ratio_note(closed: LaurentPoly, oracle: LaurentPoly) -> str:
    if oracle.is_zero():
        return "oracle is zero"
    r = RatFunc(closed, oracle)
    return f"closed / oracle = {r.num}" if r.den == 1 else f"closed / oracle = ({r.num})/({r.den})"


def dbqh_cases(nmax: int, opts: Options | None = None) -> List[Case]:
    out = []
    dqh1 = FamilySpec.make(DQH1)
    conv = convolve_p1(dqh1, nmax)
    for n in range(nmax + 1):
        h = dbqh.h_explicit(n)
        out.append(_eq_case(f"dbqh/h/recurrence/n={n:02d}", h, dbqh.h_recurrence(n), n=n))
        out.append(_eq_case(f"dbqh/h/convolution/n={n:02d}", h, conv[n], n=n))
        out.append(_eq_case(f"dbqh/xnh/lh-monomial/n={n:02d}", dbqh.lh_monomial(n), dbqh.xnh_oracle(n, 0), n=n))
        for m in range(n + 1):
            out.append(_eq_case(f"dbqh/xnh/n={n:02d}/m={m:02d}", dbqh.xnh_closed(n, m), dbqh.xnh_oracle(n, m), n=n, m=m))
        out += hermite_moment_cases(n)
    for n in range(min(nmax, 6) + 1):
        for m in range(min(nmax, 6) + 1):
            want = dbqh.hermite_norm(n) if n == m else 0
            out.append(_eq_case(f"dbqh/orthogonality/n={n:02d}/m={m:02d}",
                                norm_oracle(dqh1, n, m), RatFunc.of(want), n=n, m=m))
    for n in range(min(nmax, 8) + 1):
        out.append(_bool_case(f"dbqh/y-recurrence/n={n:02d}", dbqh.y_recurrence_check(n), n=n))
        out.append(_bool_case(f"dbqh/hermite2-relation/n={n:02d}", dbqh.relation_check(n), n=n))
        out.append(_bool_case(f"dbqh/addition/n={n:02d}", dbqh.addition_check(n), n=n))
        out.append(_bool_case(f"dbqh/hstar-scaling/n={n:02d}", dbqh.hstar_scaling_check(n), n=n))
    for n in range(min(nmax, 6) + 1):
        out.append(_bool_case(f"dbqh/hermite2-degeneration/n={n:02d}", dbqh.hermite2_degeneration_check(n), n=n))
    out.append(_bool_case("dbqh/addition/factorization", dbqh.factorization_check(6), order=6))
    mo = dbqh.multiple_orthogonality_check(5)
    out.append(_bool_case("dbqh/multiple-orthogonality", mo.ok, f"failure at (i, m, n) = {mo.failure}", n=5))
    return out


def hermite_moment_cases(n: int) -> List[Case]:
    """L0 against both oracles; L1 oracles against each other, and the closed L1 formula reported."""
    out = []
    l0 = dbqh.dual_moments_oracle(n, 0)
    out.append(_eq_case(f"dbqh/moments/L0-closed/n={n:02d}", dbqh.dual_moments_closed(n, 0), l0, n=n))
    out.append(_eq_case(f"dbqh/moments/L0-bootstrap/n={n:02d}", dbqh.op_mop_bootstrap(n, 0), l0, n=n))
    l1 = dbqh.dual_moments_oracle(n, 1)
    out.append(_eq_case(f"dbqh/moments/L1-bootstrap/n={n:02d}", dbqh.op_mop_bootstrap(n, 1), l1, n=n))
    out.append(normalization_case(f"dbqh/moments/L1-closed/n={n:02d}", dbqh.dual_moments_closed(n, 1), l1, n))
    return out


def normalization_case(cid: str, closed: LaurentPoly, oracle: LaurentPoly, n: int) -> Case:
    """PASS on equality, REPORTED when the closed value is exactly (1-q) times the oracle, FAIL otherwise."""
    if closed == oracle:
        return Case(cid, PASS, {"n": n})
    status = REPORTED if closed == (1 - q) * oracle else FAIL
    return Case(cid, status, {"n": n}, closed, oracle, _ratio_note(closed, oracle))


def dbqh_suite(opts: Options) -> List[Case]:
    return dbqh_cases(opts.nmax, opts)


# --- combinatorics ----------------------------------------------------------------


def combin_cases(nmax: int, motzkin_max: int | None = None) -> List[Case]:
    out = []
    for n in range(nmax + 1):
        out.append(_eq_case(f"combin/fbm-sum/n={n:02d}", combin.fbm_weight_sum(n), dbqh.hstar(n), n=n))
        w = combin.w_claims_check(n)
        out.append(_bool_case(f"combin/w-claims/n={n:02d}", w.ok, str(w), n=n))
    for n in range(min(nmax, 5) + 1):
        d = combin.cm_distribution_checks(n)
        out.append(_bool_case(f"combin/cm-distribution/n={n:02d}", d.ok, str(d), n=n))
    for n in range(min(nmax, 6) + 1):
        b = combin.bijection_check(n)
        out.append(_bool_case(f"combin/bijection/n={n:02d}", b.ok, str(b), n=n))
    for n in range((nmax if motzkin_max is None else motzkin_max) + 1):
        m0 = combin.motzkin_sum(n, 0)
        m1 = combin.motzkin_sum(n, 1)
        out.append(_eq_case(f"combin/motzkin/height0-oracle/n={n:02d}", m0, dbqh.dual_moments_oracle(n, 0), n=n))
        out.append(_eq_case(f"combin/motzkin/height0-closed/n={n:02d}", m0, dbqh.dual_moments_closed(n, 0), n=n))
        out.append(_eq_case(f"combin/motzkin/height1-oracle/n={n:02d}", m1, dbqh.dual_moments_oracle(n, 1), n=n))
        out.append(normalization_case(f"combin/motzkin/height1-closed/n={n:02d}", dbqh.dual_moments_closed(n, 1), m1, n))
    return out


def combin_suite(opts: Options) -> List[Case]:
    return combin_cases(min(opts.nmax, 8))


SUITE_RUNNERS = {
    "moments": moments_suite,
    "norms": norms_suite,
    "connection": connection_suite,
    "genfun": genfun_suite,
    "synth": synth_suite,
    "dbqh": dbqh_suite,
    "combin": combin_suite,
}


def run_suite(name: str, opts: Options) -> List[Case]:
    if name == "all":
        cases = []
        for s in SUITES:
            cases += SUITE_RUNNERS[s](opts)
    elif name in SUITE_RUNNERS:
        cases = SUITE_RUNNERS[name](opts)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return sorted(cases, key=lambda c: c.id)


def summarize(cases: List[Case]) -> Dict[str, int]:
    counts = {PASS: 0, FAIL: 0, REPORTED: 0}
    for c in cases:
        counts[c.status] += 1
    return {"pass": counts[PASS], "fail": counts[FAIL], "reported": counts[REPORTED], "total": len(cases)}
