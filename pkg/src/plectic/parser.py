"""Parser for the polynomial / form / multivector expression grammar.

    expr      := term (('+'|'-') term)*
    term      := factor ('*'? factor)*
    factor    := rational | coord ('^' int)? | 'd'coord | '@'coord

Differentials and ``@`` fields inside one term are wedged in the order
written; '^' or whitespace separates them. Example: ``1/3 x1 dx2^dx3``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, UnknownCoordinate
from .forms import Chart, PolyForm, PolyMultiVec
from .poly import MultiPoly

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+(?:/\d+)?")


class _Parser:
    def __init__(self, src: str, chart: Chart):
        self.src = src
        self.pos = 0
        self.chart = chart
        self.index = {n: i for i, n in enumerate(chart.names)}

    def ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def parse(self):
        self.ws()
        terms = []
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        terms.append(self.term(sign))
        while True:
            self.ws()
            ch = self.peek()
            if not ch:
                break
            if ch not in "+-":
                raise ParseError(f"unexpected character {ch!r}", self.pos)
            self.pos += 1
            terms.append(self.term(-1 if ch == "-" else 1))
        return terms

    def term(self, sign: int):
        coef = Fraction(sign)
        exps = [0] * self.chart.dim
        dif: list[int] = []
        vec: list[int] = []
        nfactors = 0
        while True:
            self.ws()
            ch = self.peek()
            if nfactors and ch == "*":
                self.pos += 1
                self.ws()
                ch = self.peek()
            elif nfactors and ch == "^":
                # wedge separator before a differential or field
                self.pos += 1
                self.ws()
                ch = self.peek()
                if not (ch == "@" or ch == "d" or ch.isalpha()):
                    raise ParseError("expected a differential after '^'", self.pos)
            if not ch or ch in "+-":
                if not nfactors:
                    raise ParseError("empty term", self.pos)
                break
            start = self.pos
            if ch.isdigit():
                m = _NUMBER.match(self.src, self.pos)
                self.pos = m.end()
                try:
                    val = Fraction(m.group())
                except ZeroDivisionError:
                    raise ParseError("zero denominator", start) from None
                coef *= val
            elif ch == "@":
                self.pos += 1
                m = _IDENT.match(self.src, self.pos)
                if not m:
                    raise ParseError("expected coordinate after '@'", self.pos)
                name = m.group()
                if name not in self.index:
                    raise UnknownCoordinate(f"unknown coordinate {name!r}", self.pos)
                self.pos = m.end()
                vec.append(self.index[name])
            elif ch.isalpha() or ch == "_":
                m = _IDENT.match(self.src, self.pos)
                name = m.group()
                self.pos = m.end()
                if name in self.index:
                    power = 1
                    if self.peek() == "^" and self.src[self.pos + 1: self.pos + 2].isdigit():
                        self.pos += 1
                        m2 = re.compile(r"\d+").match(self.src, self.pos)
                        power = int(m2.group())
                        self.pos = m2.end()
                    exps[self.index[name]] += power
                elif name.startswith("d") and name[1:] in self.index:
                    dif.append(self.index[name[1:]])
                else:
                    raise UnknownCoordinate(f"unknown coordinate {name!r}", start)
            else:
                raise ParseError(f"unexpected character {ch!r}", self.pos)
            nfactors += 1
        if dif and vec:
            raise ParseError("term mixes differentials and vector fields", self.pos)
        return coef, tuple(exps), dif, vec


def parse_expression(src: str, chart: Chart | Sequence[str], kind: str | None = None):
    """Parse ``src`` into a MultiPoly, PolyForm or PolyMultiVec.

    ``kind`` may force "poly", "form" or "multivec" (useful for 0-forms and
    for the zero expression).
    """
    if not isinstance(chart, Chart):
        chart = Chart(tuple(chart))
    terms = _Parser(src, chart).parse()
    has_d = any(t[2] for t in terms)
    has_v = any(t[3] for t in terms)
    if has_d and has_v:
        raise ParseError("expression mixes forms and multivector fields", 0)
    if kind is None:
        kind = "form" if has_d else "multivec" if has_v else "poly"
    if kind == "poly":
        if has_d or has_v:
            raise ParseError("expected a polynomial", 0)
        return MultiPoly(chart.names, _collect(terms))
    cls = PolyForm if kind == "form" else PolyMultiVec
    if (kind == "form" and has_v) or (kind == "multivec" and has_d):
        raise ParseError(f"expected a {kind}", 0)
    pos = 2 if kind == "form" else 3
    degrees = {len(t[pos]) for t in terms if t[0] != 0}
    if len(degrees) > 1:
        raise ParseError(f"terms of different degrees {sorted(degrees)}", 0)
    degree = degrees.pop() if degrees else (0 if kind == "form" else 1)
    out = cls.zero(chart, degree)
    for coef, exps, dif, vec in terms:
        idx = dif if kind == "form" else vec
        if coef == 0:
            continue
        mono = MultiPoly(chart.names, {exps: coef})
        out = out + cls.basis(chart, idx, mono)
    return out


def _collect(terms) -> dict:
    acc: dict = {}
    for coef, exps, _, _ in terms:
        acc[exps] = acc.get(exps, 0) + coef
    return acc
