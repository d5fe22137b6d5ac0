"""Exhaustive combinatorics behind the discrete big q-Hermite polynomials.

FB-matchings (matchings whose fixed points carry a colour x or y) give h*_n
through a signed q-weight; weighted 2-Motzkin paths give the moments of the
two functionals L0 and L1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Tuple

from .dbqh import hstar
from .exact.laurent import ONE, ZERO, LaurentPoly, var
from .qcore import q_odd_double_factorial, qbinom2, qint

q, x, y = var("q"), var("x"), var("y")

DEFAULT_BOUND = 10
X, Y = "x", "y"


@dataclass(frozen=True)
class Matching:
    n: int
    edges: Tuple[Tuple[int, int], ...]
    colors: Tuple[Tuple[int, str], ...] = ()

    def fixed_points(self) -> List[int]:
        return [p for p, _ in self.colors]

    def color_word(self) -> Tuple[str, ...]:
        return tuple(c for _, c in self.colors)

    def to_obj(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "colors": {str(p): c for p, c in self.colors}}


@dataclass(frozen=True)
class MatchingStats:
    cro: int
    nes: int
    ali: int
    bw: str
    inv: int


def _check_bound(n: int, bound: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")


def _matchings(points: Tuple[int, ...], allow_fixed: bool) -> Iterator[Tuple[list, list]]:
    """Yield (edges, fixed) splittings of the given sorted points."""
    if not points:
        yield [], []
        return
    first, rest = points[0], points[1:]
    if allow_fixed:
        for edges, fixed in _matchings(rest, allow_fixed):
            yield edges, [first] + fixed
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for edges, fixed in _matchings(remaining, allow_fixed):
            yield [(first, partner)] + edges, fixed


def enumerate_fbm(n: int, bound: int = DEFAULT_BOUND) -> Iterator[Matching]:
    _check_bound(n, bound)
    for edges, fixed in _matchings(tuple(range(1, n + 1)), True):
        edges_t = tuple(sorted(edges))
        for mask in range(2 ** len(fixed)):
            cols = tuple((p, Y if mask >> i & 1 else X) for i, p in enumerate(fixed))
            yield Matching(n, edges_t, cols)


def enumerate_cm(n2: int, bound: int = DEFAULT_BOUND) -> Iterator[Matching]:
    """Complete matchings of [n2]."""
    _check_bound(n2, bound)
    if n2 % 2:
        return
    for edges, _ in _matchings(tuple(range(1, n2 + 1)), False):
        yield Matching(n2, tuple(sorted(edges)))


def _pair_kind(e: Tuple[int, int], f: Tuple[int, int]) -> str:
    (a, b), (c, d) = sorted([e, f])
    if b < c:
        return "ali"
    if d < b:
        return "nes"
    return "cro"


def stats(m: Matching) -> MatchingStats:
    counts = {"cro": 0, "nes": 0, "ali": 0}
    for i, e in enumerate(m.edges):
        for f in m.edges[i + 1:]:
            counts[_pair_kind(e, f)] += 1
    fixed = set(m.fixed_points())
    bw = "".join("1" if p in fixed else "0" for p in range(1, m.n + 1))
    return MatchingStats(counts["cro"], counts["nes"], counts["ali"], bw, word_inversions(bw))


def word_inversions(w: str) -> int:
    inv = ones = 0
    for ch in w:
        if ch == "1":
            ones += 1
        elif ones:
            inv += ones
    return inv


def _z_product(colors: Tuple[str, ...]) -> LaurentPoly:
    """z_i = x, or -y q^{i-1} for the i-th fixed point (left to right) coloured y."""
    out = ONE
    for i, c in enumerate(colors, start=1):
        out = out * (x if c == X else -y * q ** (i - 1))
    return out


def weight(m: Matching) -> LaurentPoly:
    st = stats(m)
    k = len(m.edges)
    return (-1) ** k * q ** (2 * qbinom2(k) + 2 * st.ali + st.cro + st.inv) * _z_product(m.color_word())


def fbm_weight_sum(n: int, bound: int = DEFAULT_BOUND) -> LaurentPoly:
    return sum((weight(m) for m in enumerate_fbm(n, bound)), ZERO)


# --- complete matchings ---------------------------------------------------------


@dataclass
class CMDistribution:
    n: int
    ali_cro: bool
    cro_nes: bool
    nes_cro: bool
    complement: bool

    @property
    def ok(self) -> bool:
        return self.ali_cro and self.cro_nes and self.nes_cro and self.complement


def cm_distribution_checks(n: int, bound: int = DEFAULT_BOUND) -> CMDistribution:
    """q^{2ali+cro}, q^{cro+2nes}, q^{2cro+nes} over CM(2n) each sum to [2n-1]_q!!."""
    target = q_odd_double_factorial(n)
    s1 = s2 = s3 = ZERO
    complement = True
    for m in enumerate_cm(2 * n, bound):
        st = stats(m)
        s1 = s1 + q ** (2 * st.ali + st.cro)
        s2 = s2 + q ** (st.cro + 2 * st.nes)
        s3 = s3 + q ** (2 * st.cro + st.nes)
        complement &= st.ali + st.cro + st.nes == qbinom2(n)
    return CMDistribution(n, s1 == target, s2 == target, s3 == target, complement)


# --- the bijection g ------------------------------------------------------------


@dataclass(frozen=True)
class GImage:
    k: int
    word: str
    complete: Tuple[Tuple[int, int], ...]
    colors: Tuple[str, ...]


def bijection_g(m: Matching) -> GImage:
    """(number of edges, block word, induced complete matching of [2k], colour sequence)."""
    bw = stats(m).bw
    rank = {p: i for i, p in enumerate((p for p in range(1, m.n + 1) if bw[p - 1] == "0"), start=1)}
    complete = tuple(sorted((rank[u], rank[v]) for u, v in m.edges))
    return GImage(len(m.edges), bw, complete, m.color_word())


def bijection_g_inverse(img: GImage) -> Matching:
    non_fixed = [i for i, ch in enumerate(img.word, start=1) if ch == "0"]
    fixed = [i for i, ch in enumerate(img.word, start=1) if ch == "1"]
    if len(non_fixed) != 2 * img.k or len(fixed) != len(img.colors):
        raise ValueError("inconsistent 4-tuple")
    edges = tuple(sorted((non_fixed[i - 1], non_fixed[j - 1]) for i, j in img.complete))
    return Matching(len(img.word), edges, tuple(zip(fixed, img.colors)))


def factorized_weight(img: GImage) -> LaurentPoly:
    """(-1)^k q^{2C(k,2)} q^{2ali(sigma)+cro(sigma)} q^{inv(w)} z_1...z_{n-2k}."""
    st = stats(Matching(2 * img.k, img.complete))
    return ((-1) ** img.k * q ** (2 * qbinom2(img.k) + 2 * st.ali + st.cro + word_inversions(img.word))
            * _z_product(img.colors))


@dataclass
class BijectionCheck:
    n: int
    count: int
    round_trip: bool
    weights: bool
    distinct: bool

    @property
    def ok(self) -> bool:
        return self.round_trip and self.weights and self.distinct


def bijection_check(n: int, bound: int = DEFAULT_BOUND) -> BijectionCheck:
    seen = set()
    rt = wt = True
    count = 0
    for m in enumerate_fbm(n, bound):
        img = bijection_g(m)
        count += 1
        seen.add(img)
        rt &= bijection_g_inverse(img) == m
        wt &= factorized_weight(img) == weight(m)
    return BijectionCheck(n, count, rt, wt, len(seen) == count)


# --- the recurrence through the last point ---------------------------------------


def w_decomposition(n: int, bound: int = DEFAULT_BOUND) -> Tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """(W_-, W_x, W_y): weight sums over fbm(n) split by the status of the point n.

    For n = 0 the empty matching counts as "n is not a fixed point", so W_-(0) = 1.
    """
    wm = wx = wy = ZERO
    for m in enumerate_fbm(n, bound):
        col = dict(m.colors).get(n)
        w = weight(m)
        if col == X:
            wx = wx + w
        elif col == Y:
            wy = wy + w
        else:
            wm = wm + w
    return wm, wx, wy


@dataclass
class WClaims:
    n: int
    c1: bool
    c2: bool
    c3: bool
    recurrence: bool

    @property
    def ok(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.recurrence


def _hstar_or_zero(n: int) -> LaurentPoly:
    return hstar(n) if n >= 0 else ZERO


def w_claims_check(n: int, bound: int = DEFAULT_BOUND) -> WClaims:
    """The three claims at n -> n+1 and the resulting 4-term recurrence for h*."""
    wm, wx, wy = w_decomposition(n, bound)
    wm1, wx1, wy1 = w_decomposition(n + 1, bound)
    c1 = wx1 == x * _hstar_or_zero(n)
    c2 = wy1 == -y * q ** n * (wx + wy) - y * wm
    c3 = wm1 == -(q ** (n - 1)) * qint(n) * _hstar_or_zero(n - 1)
    rec = hstar_four_term(n) == _hstar_or_zero(n + 1)
    return WClaims(n, c1, c2, c3, rec)


def hstar_four_term(n: int) -> LaurentPoly:
    """(x - y q^n) h*_n - q^{n-1}[n] h*_{n-1} + y q^{n-2}[n-1](1-q^n) h*_{n-2}."""
    out = (x - y * q ** n) * _hstar_or_zero(n)
    if n >= 1:
        out = out - q ** (n - 1) * qint(n) * _hstar_or_zero(n - 1)
    if n >= 2:
        out = out + y * q ** (n - 2) * qint(n - 1) * (1 - q ** n) * _hstar_or_zero(n - 2)
    return out


# --- 2-Motzkin paths ------------------------------------------------------------

# U up, H horizontal, D down, T double down (two levels)
STEPS = {"U": 1, "H": 0, "D": -1, "T": -2}


@dataclass(frozen=True)
class MotzkinPath2:
    steps: str

    @property
    def heights(self) -> Tuple[int, ...]:
        h = [0]
        for st in self.steps:
            h.append(h[-1] + STEPS[st])
        return tuple(h)

    def to_obj(self) -> dict:
        return {"steps": self.steps}


def enumerate_motzkin2(n: int, final: int, bound: int = DEFAULT_BOUND) -> Iterator[MotzkinPath2]:
    _check_bound(n, bound)
    if final not in (0, 1):
        raise ValueError("final height must be 0 or 1")

    def rec(prefix: str, h: int, left: int):
        if left == 0:
            if h == final:
                yield MotzkinPath2(prefix)
            return
        for st, dh in STEPS.items():
            nh = h + dh
            # the path must stay nonnegative and be able to come back to the final height
            if nh < 0 or nh - 2 * (left - 1) > final or nh + (left - 1) < final:
                continue
            yield from rec(prefix + st, nh, left - 1)

    yield from rec("", 0, n)


@lru_cache(maxsize=None)
def step_weight(step: str, level: int) -> LaurentPoly:
    if step == "U":
        return ONE
    if step == "H":
        return y * q ** level
    if step == "D":
        return q ** (level - 1) * (1 - q ** level)
    return -y * q ** (level - 2) * (1 - q ** level) * (1 - q ** (level - 1))


def path_weight(p: MotzkinPath2) -> LaurentPoly:
    out = ONE
    for st, level in zip(p.steps, p.heights):
        out = out * step_weight(st, level)
    return out


def motzkin_sum(n: int, final: int, bound: int = DEFAULT_BOUND) -> LaurentPoly:
    return sum((path_weight(p) for p in enumerate_motzkin2(n, final, bound)), ZERO)


# --- dumps ----------------------------------------------------------------------


def dump_lines(objects) -> List[str]:
    """One compact JSON object per line, sorted lexicographically by the serialized form."""
    return sorted(json.dumps(o.to_obj(), separators=(",", ":")) for o in objects)
