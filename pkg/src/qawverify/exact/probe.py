"""Seeded randomized identity testing by exact rational evaluation.

Each free variable is drawn from {p/r : 1 <= p, r <= 97}.  A trial whose
evaluation divides by zero is discarded and resampled; if the resampling
budget runs out the verdict is INCONCLUSIVE rather than EQUAL.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Sequence, Union

from .laurent import LaurentPoly
from .ratfunc import RatFunc

EQUAL = "EQUAL"
UNEQUAL = "UNEQUAL"
INCONCLUSIVE = "INCONCLUSIVE"

Side = Union[RatFunc, LaurentPoly, Callable[[Dict[str, Fraction]], object]]

SAMPLE_MAX = 97


@dataclass
class ProbeResult:
    verdict: str
    trials: int
    seed: int
    counterexample: Dict[str, Fraction] | None = None
    discarded: int = 0
    points: list = field(default_factory=list, repr=False)

    def __bool__(self) -> bool:
        return self.verdict == EQUAL


def sample_point(rng: random.Random, variables: Sequence[str]) -> Dict[str, Fraction]:
    return {v: Fraction(rng.randint(1, SAMPLE_MAX), rng.randint(1, SAMPLE_MAX)) for v in variables}


def _value(side: Side, point: Dict[str, Fraction]) -> RatFunc:
    if callable(side) and not isinstance(side, (RatFunc, LaurentPoly)):
        v = side(point)
    elif isinstance(side, RatFunc):
        v = side.subs(point)
    else:
        v = RatFunc.of(side.subs(point))
    return RatFunc.of(v)


def _free_vars(side: Side) -> set:
    if isinstance(side, RatFunc):
        return set(side.num.variables() | side.den.variables())
    if isinstance(side, LaurentPoly):
        return set(side.variables())
    return set()


def random_rational_probe(
    lhs: Side,
    rhs: Side,
    trials: int = 20,
    seed: int = 20240101,
    variables: Sequence[str] | None = None,
    max_discards: int | None = None,
) -> ProbeResult:
    """Compare two expressions at ``trials`` random rational points.

    ``lhs``/``rhs`` are RatFunc/LaurentPoly values or callables taking a point
    (dict name -> Fraction) and returning a value.  For callables the sampled
    names must be given in ``variables``.  The values at a point may still
    contain unsampled variables; they are compared exactly.
    """
    if variables is None:
        variables = sorted(_free_vars(lhs) | _free_vars(rhs))
    rng = random.Random(seed)
    budget = max_discards if max_discards is not None else 10 * trials + 10
    done = discarded = 0
    points = []
    while done < trials:
        point = sample_point(rng, variables)
        try:
            lv = _value(lhs, point)
            rv = _value(rhs, point)
        except ZeroDivisionError:
            discarded += 1
            if discarded > budget:
                return ProbeResult(INCONCLUSIVE, done, seed, None, discarded, points)
            continue
        points.append(point)
        done += 1
        if lv != rv:
            return ProbeResult(UNEQUAL, done, seed, point, discarded, points)
    return ProbeResult(EQUAL, done, seed, None, discarded, points)
