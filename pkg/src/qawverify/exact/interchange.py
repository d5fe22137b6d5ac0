"""JSON interchange for LaurentPoly, plus a small infix parser for literals.

Format: {"vars": [...], "terms": [{"coeff": "p/q", "exps": [...]}]} where
``vars`` is the used subset of the alphabet in alphabet order and terms are
in canonical graded-lex order.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict

from .laurent import VAR_INDEX, VARS, ZERO, LaurentPoly
from .ratfunc import RatFunc


def _coeff_str(c) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def poly_to_obj(p: LaurentPoly) -> Dict[str, Any]:
    used = [v for v in VARS if v in p.variables()]
    idx = [VAR_INDEX[v] for v in used]
    terms = [
        {"coeff": _coeff_str(c), "exps": [exps[i] for i in idx]}
        for exps, c in p.sorted_terms()
    ]
    return {"vars": used, "terms": terms}


def poly_from_obj(obj: Dict[str, Any]) -> LaurentPoly:
    names = obj["vars"]
    for v in names:
        if v not in VAR_INDEX:
            raise ValueError(f"unknown variable {v!r}")
    out = []
    for term in obj["terms"]:
        exps = [0] * len(VARS)
        for v, e in zip(names, term["exps"], strict=True):
            exps[VAR_INDEX[v]] = int(e)
        out.append((tuple(exps), Fraction(term["coeff"])))
    return LaurentPoly.from_terms(out)


def dumps_poly(p: LaurentPoly) -> str:
    return json.dumps(poly_to_obj(p), separators=(",", ":"))


def loads_poly(text: str) -> LaurentPoly:
    return poly_from_obj(json.loads(text))


def ratfunc_to_obj(r: RatFunc) -> Dict[str, Any]:
    if r.is_poly():
        return poly_to_obj(r.num)
    return {"num": poly_to_obj(r.num), "den": poly_to_obj(r.den)}


# --- infix parser ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            if name not in VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over + - * / ^ with implicit multiplication."""

    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> RatFunc:
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatFunc:
        val = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.unary()
                val = val * rhs if tok[1] == "*" else val / rhs
            elif tok is not None and (tok[0] in ("num", "var") or tok == ("op", "(")):
                val = val * self.unary()
            else:
                return val

    def unary(self) -> RatFunc:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or tok[0] != "num":
                raise ValueError("exponent must be an integer literal")
            return base ** (sign * tok[1])
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of input")
        if tok[0] == "num":
            return RatFunc.of(tok[1])
        if tok[0] == "var":
            return RatFunc.of(LaurentPoly.var(tok[1]))
        if tok == ("op", "("):
            val = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return val
        raise ValueError(f"unexpected token {tok[1]!r}")


def parse_ratfunc(text: str) -> RatFunc:
    p = _Parser(_tokenize(text))
    if p.peek() is None:
        return RatFunc.of(ZERO)
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return val


def parse_poly(text: str) -> LaurentPoly:
    """Parse e.g. ``"1 - a*q^-1*s"``; the value must be a Laurent polynomial."""
    return parse_ratfunc(text).as_poly()
