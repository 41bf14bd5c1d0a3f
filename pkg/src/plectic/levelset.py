"""Polynomial level sets {F = 0} with rational sample points and exact tangent frames.

Equality of forms on a level set is decided by evaluating the pullback at
every sample point on every tuple drawn from the tangent frame there.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeError
from .forms import Chart, PolyForm, evaluate_constant_on_frame
from .poly import MultiPoly, scalar

Point = tuple[Fraction, ...]


def tangent_frame(constraint: MultiPoly, point: Sequence[Fraction]) -> list[Point]:
    """Basis of ker dF|_p, eliminating the largest-index pivot."""
    n = constraint.nvars
    grad = [constraint.diff(i).evaluate(point) for i in range(n)]
    piv = max((i for i in range(n) if grad[i] != 0), default=None)
    if piv is None:
        raise ValueError(f"dF vanishes at {tuple(point)}; not a regular point")
    frame = []
    for i in range(n):
        if i == piv:
            continue
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        v[piv] = -grad[i] / grad[piv]
        frame.append(tuple(v))
    return frame


def stereographic_point(t: Sequence[Fraction]) -> Point:
    """(2t, |t|^2 - 1) / (|t|^2 + 1), a rational point of the unit sphere."""
    t = [scalar(x) for x in t]
    s = sum(x * x for x in t)
    return tuple(2 * x / (s + 1) for x in t) + ((s - 1) / (s + 1),)


def sphere_points(n: int, count: int, seed: int = 0) -> list[Point]:
    """``count`` distinct rational points of S^n in R^{n+1}."""
    rng = random.Random(seed)
    seen: set[Point] = set()
    out: list[Point] = []
    while len(out) < count:
        t = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        p = stereographic_point(t)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


@dataclass(frozen=True)
class LevelSetFailure:
    point_index: int
    point: Point
    frame_tuple: tuple[int, ...]
    value: Fraction

    def __str__(self):
        pt = "(" + ", ".join(str(x) for x in self.point) + ")"
        return f"point #{self.point_index} {pt}, frame vectors {self.frame_tuple}: residual {self.value}"


@dataclass(frozen=True)
class LevelSetChart:
    ambient: Chart
    constraint: MultiPoly
    sample_points: tuple[Point, ...]
    tangent_frames: tuple[tuple[Point, ...], ...]

    star_shaped = False

    def __post_init__(self):
        for p, fr in zip(self.sample_points, self.tangent_frames):
            if self.constraint.evaluate(p) != 0:
                raise ValueError(f"sample point {p} is not on the level set")
            if len(fr) != self.ambient.dim - 1:
                raise ValueError("tangent frame has the wrong size")

    @classmethod
    def from_points(cls, ambient: Chart, constraint: MultiPoly, points: Sequence[Sequence]) -> LevelSetChart:
        pts = tuple(tuple(scalar(x) for x in p) for p in points)
        frames = tuple(tuple(tangent_frame(constraint, p)) for p in pts)
        return cls(ambient, constraint, pts, frames)

    @classmethod
    def sphere(cls, n: int, count: int = 20, seed: int = 0, chart: Chart | None = None) -> LevelSetChart:
        """S^n inside R^{n+1}."""
        chart = chart or Chart.standard(n + 1)
        F = sum((chart.var(i) ** 2 for i in range(n + 1)), MultiPoly.zero(chart.names)) - 1
        return cls.from_points(chart, F, sphere_points(n, count, seed))

    @property
    def dim(self) -> int:
        return self.ambient.dim - 1

    def const(self, c) -> MultiPoly:
        return self.ambient.const(c)

    def first_failure(self, form) -> LevelSetFailure | None:
        if isinstance(form, MultiPoly):
            form = PolyForm.function(form, self.ambient)
        k = form.degree
        if k > self.dim:
            return None
        for pi, (p, frame) in enumerate(zip(self.sample_points, self.tangent_frames)):
            coeffs = form.evaluate(p)
            if not coeffs:
                continue
            if k == 0:
                return LevelSetFailure(pi, p, (), coeffs[()])
            for sub in itertools.combinations(range(len(frame)), k):
                val = evaluate_constant_on_frame(coeffs, [frame[s] for s in sub])
                if val:
                    return LevelSetFailure(pi, p, sub, val)
        return None

    def difference_witness(self, a, b) -> str | None:
        fail = self.first_failure(a - b)
        return None if fail is None else str(fail)

    def equal(self, a, b) -> bool:
        return self.first_failure(a - b) is None


def levelset_equal(a: PolyForm, b: PolyForm, ls: LevelSetChart) -> tuple[bool, LevelSetFailure | None]:
    if a.degree != b.degree:
        raise DegreeError(f"degree {a.degree} vs {b.degree}")
    fail = ls.first_failure(a - b)
    return fail is None, fail
