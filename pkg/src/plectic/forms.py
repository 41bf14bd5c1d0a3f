"""Polynomial differential forms and multivector fields on a coordinate chart.

Components are keyed by strictly increasing 0-based index tuples; ``(0, 2)``
is dx1^dx3 for a form and @x1^@x3 for a multivector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ChartMismatch, DegreeError, SizeMismatch
from .poly import MultiPoly, scalar

Index = tuple[int, ...]


@dataclass(frozen=True)
class Chart:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate coordinate names: {self.names}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> Chart:
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.names)

    # manifold protocol shared with LevelSetChart
    @property
    def ambient(self) -> Chart:
        return self

    star_shaped = True

    def poly(self, terms=None) -> MultiPoly:
        return MultiPoly(self.names, terms)

    def const(self, c) -> MultiPoly:
        return MultiPoly.const(self.names, c)

    def var(self, i: int) -> MultiPoly:
        return MultiPoly.var(self.names, i)

    def coords(self) -> list[MultiPoly]:
        return [self.var(i) for i in range(self.dim)]

    def difference_witness(self, a, b) -> str | None:
        """None if a == b exactly, else a description of the first differing component."""
        diff = a - b
        if diff.is_zero():
            return None
        if isinstance(diff, MultiPoly):
            from .printer import format_value

            return f"residual {format_value(diff)}"
        key = min(diff.components)
        from .printer import format_value

        return f"residual {format_value(diff)} (first component {key})"

    def equal(self, a, b) -> bool:
        return self.difference_witness(a, b) is None


def _merge_sign(a: Index, b: Index) -> int:
    """Sign of sorting the concatenation a+b (both increasing, disjoint)."""
    inv = 0
    for i in a:
        for j in b:
            if i > j:
                inv += 1
    return -1 if inv % 2 else 1


class _Graded:
    __slots__ = ("chart", "degree", "components")

    def __init__(self, chart: Chart, degree: int, components: Mapping[Index, MultiPoly] | None = None):
        self.chart = chart
        self.degree = degree
        comps: dict[Index, MultiPoly] = {}
        if components:
            for key, c in components.items():
                key = tuple(key)
                if len(key) != degree or any(a >= b for a, b in zip(key, key[1:])):
                    raise ValueError(f"bad index {key} for degree {degree}")
                if any(k < 0 or k >= chart.dim for k in key):
                    raise ValueError(f"index {key} out of range for chart of size {chart.dim}")
                if not isinstance(c, MultiPoly):
                    c = MultiPoly.const(chart.names, c)
                elif c.chart != chart.names:
                    raise ChartMismatch(f"coefficient on {c.chart}, chart {chart.names}")
                if not c.is_zero():
                    comps[key] = c
        self.components = comps

    @classmethod
    def _raw(cls, chart: Chart, degree: int, comps: dict[Index, MultiPoly]):
        obj = object.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj.components = comps
        return obj

    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls._raw(chart, degree, {})

    @classmethod
    def basis(cls, chart: Chart, index: Sequence[int], coeff=1):
        """coeff * (basis element on the given, not necessarily sorted, indices)."""
        idx = tuple(index)
        if len(set(idx)) != len(idx):
            return cls.zero(chart, len(idx))
        order = sorted(range(len(idx)), key=lambda i: idx[i])
        sign = 1
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                if order[a] > order[b]:
                    sign = -sign
        c = coeff if isinstance(coeff, MultiPoly) else MultiPoly.const(chart.names, coeff)
        return cls(chart, len(idx), {tuple(sorted(idx)): c * sign})

    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.chart != self.chart:
            raise ChartMismatch(f"{self.chart.names} vs {other.chart.names}")
        if other.degree != self.degree:
            raise DegreeError(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        t = dict(self.components)
        for k, c in other.components.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v.is_zero():
                    del t[k]
                else:
                    t[k] = v
        return type(self)._raw(self.chart, self.degree, t)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.chart, self.degree, {k: -c for k, c in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        """Multiply by a scalar or a function (MultiPoly)."""
        if isinstance(f, MultiPoly):
            if f.chart != self.chart.names:
                raise ChartMismatch("function on a different chart")
            t = {}
            for k, c in self.components.items():
                v = c * f
                if not v.is_zero():
                    t[k] = v
            return type(self)._raw(self.chart, self.degree, t)
        s = scalar(f)
        if not s:
            return type(self).zero(self.chart, self.degree)
        return type(self)._raw(self.chart, self.degree, {k: c * s for k, c in self.components.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / scalar(s))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self.components == other.components

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.components.items())))

    def evaluate(self, point: Sequence) -> dict[Index, Fraction]:
        out = {}
        for k, c in self.components.items():
            v = c.evaluate(point)
            if v:
                out[k] = v
        return out

    def rechart(self, chart: Chart, index_map: Sequence[int]):
        """Embed into a larger chart: old coordinate i becomes index_map[i]."""
        t: dict[Index, MultiPoly] = {}
        for k, c in self.components.items():
            nk = [index_map[i] for i in k]
            srt = tuple(sorted(nk))
            order = sorted(range(len(nk)), key=lambda i: nk[i])
            sign = 1
            for a in range(len(order)):
                for b in range(a + 1, len(order)):
                    if order[a] > order[b]:
                        sign = -sign
            nc = c.rechart(chart.names, index_map) * sign
            t[srt] = t[srt] + nc if srt in t else nc
        return type(self)(chart, self.degree, t)

    def __repr__(self):
        from .printer import format_value

        return f"{type(self).__name__}({format_value(self)!r}, degree={self.degree})"


class PolyForm(_Graded):
    """A degree-k differential form with polynomial coefficients."""

    __slots__ = ()

    @classmethod
    def function(cls, f: MultiPoly, chart: Chart) -> PolyForm:
        return cls(chart, 0, {(): f})

    def as_function(self) -> MultiPoly:
        if self.degree != 0:
            raise DegreeError("not a 0-form")
        return self.components.get((), MultiPoly.zero(self.chart.names))


class PolyMultiVec(_Graded):
    """A degree-m multivector field; degree 1 is a vector field."""

    __slots__ = ()

    @classmethod
    def vector_field(cls, chart: Chart, coeffs: Sequence) -> PolyMultiVec:
        if len(coeffs) != chart.dim:
            raise SizeMismatch("one coefficient per coordinate required")
        return cls(chart, 1, {(i,): c for i, c in enumerate(coeffs)})

    def coefficient(self, i: int) -> MultiPoly:
        return self.components.get((i,), MultiPoly.zero(self.chart.names))


def _same_chart(a: _Graded, b: _Graded):
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart.names} vs {b.chart.names}")


def _wedge_generic(cls, a: _Graded, b: _Graded):
    _same_chart(a, b)
    t: dict[Index, MultiPoly] = {}
    for i, f in a.components.items():
        si = set(i)
        for j, g in b.components.items():
            if si.intersection(j):
                continue
            key = tuple(sorted(i + j))
            v = f * g
            if _merge_sign(i, j) < 0:
                v = -v
            if key in t:
                v = t[key] + v
                if v.is_zero():
                    del t[key]
                    continue
            t[key] = v
    return cls._raw(a.chart, a.degree + b.degree, t)


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    if not isinstance(a, PolyForm) or not isinstance(b, PolyForm):
        raise TypeError("wedge expects two PolyForms")
    return _wedge_generic(PolyForm, a, b)


def wedge_all(forms: Iterable[PolyForm]) -> PolyForm:
    out = None
    for f in forms:
        out = f if out is None else wedge(out, f)
    return out


def multivec_wedge(a: PolyMultiVec, b: PolyMultiVec) -> PolyMultiVec:
    return _wedge_generic(PolyMultiVec, a, b)


def multivec_wedge_all(fields: Sequence[PolyMultiVec]) -> PolyMultiVec:
    out = fields[0]
    for f in fields[1:]:
        out = multivec_wedge(out, f)
    return out


def exterior_d(a: PolyForm) -> PolyForm:
    t: dict[Index, MultiPoly] = {}
    n = a.chart.dim
    for idx, f in a.components.items():
        sidx = set(idx)
        for j in range(n):
            if j in sidx:
                continue
            df = f.diff(j)
            if df.is_zero():
                continue
            pos = sum(1 for i in idx if i < j)
            key = idx[:pos] + (j,) + idx[pos:]
            if pos % 2:
                df = -df
            if key in t:
                df = t[key] + df
                if df.is_zero():
                    del t[key]
                    continue
            t[key] = df
    return PolyForm._raw(a.chart, a.degree + 1, t)


def interior_vector(v: PolyMultiVec, a: PolyForm) -> PolyForm:
    """iota_v a for a vector field v."""
    if v.degree != 1:
        raise DegreeError("interior_vector expects a vector field")
    _same_chart(v, a)
    if a.degree == 0:
        raise DegreeError("cannot contract a 0-form")
    t: dict[Index, MultiPoly] = {}
    for idx, f in a.components.items():
        for p, i in enumerate(idx):
            vi = v.components.get((i,))
            if vi is None:
                continue
            key = idx[:p] + idx[p + 1:]
            val = vi * f
            if p % 2:
                val = -val
            if key in t:
                val = t[key] + val
                if val.is_zero():
                    del t[key]
                    continue
            t[key] = val
    return PolyForm._raw(a.chart, a.degree - 1, t)


def _basis_interior(J: Index, I: Index) -> tuple[int, Index] | None:
    """iota(@_J) dx_I = iota_{@j_m} ... iota_{@j_1} dx_I as (sign, remaining index)."""
    sign = 1
    rem = list(I)
    for j in J:
        try:
            p = rem.index(j)
        except ValueError:
            return None
        if p % 2:
            sign = -sign
        del rem[p]
    return sign, tuple(rem)


def interior(v: PolyMultiVec, a: PolyForm) -> PolyForm:
    """iota(v_1^...^v_m) a = iota_{v_m} ... iota_{v_1} a."""
    if not isinstance(v, PolyMultiVec) or not isinstance(a, PolyForm):
        raise TypeError("interior(multivector, form)")
    _same_chart(v, a)
    if v.degree > a.degree:
        raise DegreeError(f"cannot contract a degree-{v.degree} multivector into a {a.degree}-form")
    if v.degree == 1:
        return interior_vector(v, a)
    t: dict[Index, MultiPoly] = {}
    for J, g in v.components.items():
        sJ = set(J)
        for I, f in a.components.items():
            if not sJ.issubset(I):
                continue
            sign, key = _basis_interior(J, I)
            val = g * f
            if sign < 0:
                val = -val
            if key in t:
                val = t[key] + val
                if val.is_zero():
                    del t[key]
                    continue
            t[key] = val
    return PolyForm._raw(a.chart, a.degree - v.degree, t)


def interior_sequence(fields: Sequence[PolyMultiVec], a: PolyForm) -> PolyForm:
    """iota(v_1^...^v_k) a computed as iota_{v_k}...iota_{v_1} a."""
    for v in fields:
        a = interior_vector(v, a)
    return a


def lie_derivative(v: PolyMultiVec, a: PolyForm) -> PolyForm:
    """L_v a = d iota(v) a - (-1)^{deg v} iota(v) d a."""
    first = exterior_d(interior(v, a)) if v.degree <= a.degree else None
    second = interior(v, exterior_d(a)) if v.degree <= a.degree + 1 else None
    deg = a.degree - v.degree + 1
    out = PolyForm.zero(a.chart, deg)
    if first is not None:
        out = out + first
    if second is not None:
        out = out - second if v.degree % 2 == 0 else out + second
    return out


def vector_bracket(u: PolyMultiVec, v: PolyMultiVec) -> PolyMultiVec:
    """Lie bracket of vector fields: [u, v]^i = u(v^i) - v(u^i)."""
    _same_chart(u, v)
    n = u.chart.dim
    comps = {}
    for i in range(n):
        acc = MultiPoly.zero(u.chart.names)
        vi = v.components.get((i,))
        ui = u.components.get((i,))
        for (j,), uj in u.components.items():
            if vi is not None:
                acc = acc + uj * vi.diff(j)
        for (j,), vj in v.components.items():
            if ui is not None:
                acc = acc - vj * ui.diff(j)
        if not acc.is_zero():
            comps[(i,)] = acc
    return PolyMultiVec._raw(u.chart, 1, comps)


def _decompose(m: PolyMultiVec) -> list[list[PolyMultiVec]]:
    """Write each basis term f @_{i1}^...^@_{ik} as [f @_{i1}, @_{i2}, ...]."""
    out = []
    ch = m.chart
    one = MultiPoly.const(ch.names, 1)
    for idx, f in m.components.items():
        factors = [PolyMultiVec._raw(ch, 1, {(idx[0],): f})]
        factors += [PolyMultiVec._raw(ch, 1, {(i,): one}) for i in idx[1:]]
        out.append(factors)
    return out


def schouten(u: PolyMultiVec, v: PolyMultiVec) -> PolyMultiVec:
    """Schouten bracket, bilinear extension of the decomposable formula

    [u_1^..^u_m, v_1^..^v_n] = sum (-1)^{i+j} [u_i, v_j] ^ u_1..^u_i..^u_m ^ v_1..^v_j..^v_n
    """
    _same_chart(u, v)
    deg = u.degree + v.degree - 1
    out = PolyMultiVec.zero(u.chart, deg)
    for us in _decompose(u):
        for vs in _decompose(v):
            for i, ui in enumerate(us, start=1):
                for j, vj in enumerate(vs, start=1):
                    br = vector_bracket(ui, vj)
                    if br.is_zero():
                        continue
                    rest = [x for k, x in enumerate(us, start=1) if k != i]
                    rest += [x for k, x in enumerate(vs, start=1) if k != j]
                    term = multivec_wedge_all([br] + rest)
                    out = out + (term if (i + j) % 2 == 0 else -term)
    return out


def euler_field(chart: Chart) -> PolyMultiVec:
    return PolyMultiVec.vector_field(chart, chart.coords())


def poincare_homotopy(a: PolyForm) -> PolyForm:
    """Radial homotopy K with dK + Kd = id on forms of degree >= 1.

    For a monomial coefficient, K(x^e dx_I) = iota_E(x^e dx_I) / (|e| + k).
    """
    if a.degree < 1:
        raise DegreeError("the homotopy operator is defined on forms of degree >= 1")
    ch = a.chart
    t: dict[Index, MultiPoly] = {}
    k = a.degree
    for idx, f in a.components.items():
        for p, i in enumerate(idx):
            key = idx[:p] + idx[p + 1:]
            terms = {}
            for e, c in f.terms.items():
                w = c / (sum(e) + k)
                ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                terms[ne] = -w if p % 2 else w
            val = MultiPoly._raw(ch.names, terms)
            if key in t:
                val = t[key] + val
                if val.is_zero():
                    del t[key]
                    continue
            t[key] = val
    return PolyForm._raw(ch, k - 1, t)


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def evaluate_constant_on_frame(coeffs: Mapping[Index, Fraction], frame: Sequence[Sequence[Fraction]]) -> Fraction:
    acc = Fraction(0)
    for idx, c in coeffs.items():
        acc += c * _det([[w[i] for w in frame] for i in idx])
    return acc


def evaluate_on_frame(a: PolyForm, point: Sequence, frame_vectors: Sequence[Sequence]) -> Fraction:
    """a|_p(w_1, ..., w_k) with the convention iota_{w_k}...iota_{w_1} a."""
    if len(frame_vectors) != a.degree:
        raise SizeMismatch(f"{len(frame_vectors)} vectors for a {a.degree}-form")
    frame = [[scalar(x) for x in w] for w in frame_vectors]
    return evaluate_constant_on_frame(a.evaluate(point), frame)


def basis_indices(n: int, k: int) -> list[Index]:
    return list(itertools.combinations(range(n), k))


def volume_form(chart: Chart, indices: Sequence[int] | None = None) -> PolyForm:
    idx = tuple(range(chart.dim)) if indices is None else tuple(indices)
    return PolyForm.basis(chart, idx)
