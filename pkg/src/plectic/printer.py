"""Canonical text rendering of polynomials, forms and multivector fields.

Terms are sorted by (index set, exponent vector); rationals print as p/q.
The output parses back to the same value with ``parse_expression``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly


def _monomial(names: Sequence[str], e: tuple[int, ...]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _join(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for n, (c, body) in enumerate(terms):
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag} {body}"
        if n == 0:
            out.append(("-" if c < 0 else "") + txt)
        else:
            out.append((" - " if c < 0 else " + ") + txt)
    return "".join(out)


def format_poly(p: MultiPoly) -> str:
    return _join([(c, _monomial(p.chart, e)) for e, c in sorted(p.terms.items())])


def _format_graded(obj, prefix: str) -> str:
    names = obj.chart.names
    rows = []
    for idx in sorted(obj.components):
        basis = "^".join(prefix + names[i] for i in idx)
        for e, c in sorted(obj.components[idx].terms.items()):
            mono = _monomial(names, e)
            body = " ".join(x for x in (mono, basis) if x)
            rows.append((c, body))
    return _join(rows)


def format_value(v) -> str:
    from .forms import PolyForm, PolyMultiVec

    if isinstance(v, MultiPoly):
        return format_poly(v)
    if isinstance(v, PolyForm):
        return _format_graded(v, "d")
    if isinstance(v, PolyMultiVec):
        return _format_graded(v, "@")
    if isinstance(v, Fraction):
        return str(v)
    return str(v)
