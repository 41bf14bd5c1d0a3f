"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ChartMismatch

Exponent = tuple[int, ...]


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class MultiPoly:
    """Polynomial in the coordinates of ``chart`` (a tuple of names)."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.chart = tuple(chart)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            n = len(self.chart)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match chart of size {n}")
                c = scalar(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, chart: tuple[str, ...], terms: dict[Exponent, Fraction]) -> MultiPoly:
        p = object.__new__(cls)
        p.chart = chart
        p.terms = terms
        return p

    @classmethod
    def zero(cls, chart: Sequence[str]) -> MultiPoly:
        return cls._raw(tuple(chart), {})

    @classmethod
    def const(cls, chart: Sequence[str], c) -> MultiPoly:
        chart = tuple(chart)
        c = scalar(c)
        return cls._raw(chart, {(0,) * len(chart): c} if c else {})

    @classmethod
    def var(cls, chart: Sequence[str], i: int) -> MultiPoly:
        chart = tuple(chart)
        e = [0] * len(chart)
        e[i] = 1
        return cls._raw(chart, {tuple(e): Fraction(1)})

    @property
    def nvars(self) -> int:
        return len(self.chart)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other: MultiPoly):
        if other.chart is not self.chart and other.chart != self.chart:
            raise ChartMismatch(f"{self.chart} vs {other.chart}")

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.chart, other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MultiPoly._raw(self.chart, t)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.chart, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = scalar(other)
            if not c:
                return MultiPoly._raw(self.chart, {})
            return MultiPoly._raw(self.chart, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return MultiPoly._raw(self.chart, t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> MultiPoly:
        return self * (1 / scalar(other))

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.const(self.chart, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.const(self.chart, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def diff(self, i: int) -> MultiPoly:
        t: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                t[ne] = c * k
        return MultiPoly._raw(self.chart, t)

    def evaluate(self, point: Sequence) -> Fraction:
        acc = Fraction(0)
        pt = [scalar(x) for x in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            acc += v
        return acc

    def substitute(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Compose with the polynomial map x_i -> images[i] (possibly another chart)."""
        target = images[0].chart if images else self.chart
        out = MultiPoly.zero(target)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def homogeneous_parts(self) -> dict[int, MultiPoly]:
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly._raw(self.chart, t) for d, t in parts.items()}

    def rechart(self, chart: Sequence[str], index_map: Sequence[int]) -> MultiPoly:
        """Move to a larger chart; old variable i becomes new variable index_map[i]."""
        chart = tuple(chart)
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(chart)
            for i, k in enumerate(e):
                ne[index_map[i]] += k
            t[tuple(ne)] = c
        return MultiPoly._raw(chart, t)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        from .printer import format_poly

        return f"MultiPoly({format_poly(self)!r})"


def poly_sum(chart: Sequence[str], polys: Iterable[MultiPoly]) -> MultiPoly:
    out = MultiPoly.zero(chart)
    for p in polys:
        out = out + p
    return out
