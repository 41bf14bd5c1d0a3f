"""The reduced symmetric coalgebra on a desuspended graded space: reduced
coproduct and diagonals, codifferentials built from brackets, coalgebra
morphisms lifted from their components, and the chain-map condition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .combinatorics import compositions, koszul_sign, unshuffles
from .linfty import BracketTable, MorphismData, Vec
from .report import CheckReport, ConditionTracker

Word = tuple[int, ...]
SymElement = dict[Word, Fraction]
Tensor = dict[tuple[Word, ...], Fraction]


def shifted_degrees(space_degrees: Sequence[int]) -> tuple[int, ...]:
    return tuple(d - 1 for d in space_degrees)


def canonical_word(idx: Sequence[int], sdeg: Sequence[int]) -> tuple[Word | None, int]:
    """Sort generators in the graded-commutative algebra; (None, 0) if an odd
    generator repeats."""
    key = list(idx)
    srt = sorted(key)
    for a, b in zip(srt, srt[1:]):
        if a == b and sdeg[a] % 2:
            return None, 0
    s = 1
    for a in range(len(key)):
        for b in range(a + 1, len(key)):
            if key[a] > key[b] and sdeg[key[a]] % 2 and sdeg[key[b]] % 2:
                s = -s
    return tuple(srt), s


def _acc(out: dict, key, c) -> None:
    if not c:
        return
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def words(sdeg: Sequence[int], length: int) -> list[Word]:
    """Canonical basis words of the given length."""
    out = []
    for w in itertools.combinations_with_replacement(range(len(sdeg)), length):
        if canonical_word(w, sdeg)[0] is not None:
            out.append(w)
    return out


def word_from(idx: Sequence[int], sdeg: Sequence[int]) -> SymElement:
    w, s = canonical_word(idx, sdeg)
    return {} if w is None else {w: Fraction(s)}


def _eps(sigma, word: Word, sdeg: Sequence[int]) -> int:
    return koszul_sign(sigma, [sdeg[i] for i in word])


def reduced_coproduct(w: Word, sdeg: Sequence[int]) -> Tensor:
    """sum_{p, Sh(p,n-p)} eps(sigma) (w_sigma(1..p)) (x) (w_sigma(p+1..n))."""
    n = len(w)
    out: Tensor = {}
    for p in range(1, n):
        for sigma in unshuffles([p, n - p]):
            xs = sigma.permute(w)
            _acc(out, (tuple(xs[:p]), tuple(xs[p:])), Fraction(_eps(sigma, w, sdeg)))
    return out


def reduced_diagonal(w: Word, p: int, sdeg: Sequence[int]) -> Tensor:
    """Iterated reduced coproduct, applied to the first tensor factor."""
    cur: Tensor = {(w,): Fraction(1)}
    for _ in range(p):
        nxt: Tensor = {}
        for parts, c in cur.items():
            for (a, b), d in reduced_coproduct(parts[0], sdeg).items():
                _acc(nxt, (a, b) + parts[1:], c * d)
        cur = nxt
    return cur


def reduced_diagonal_explicit(w: Word, p: int, sdeg: Sequence[int]) -> Tensor:
    """Sum over compositions k_1+..+k_{p+1} = n and Sh(k_1..k_{p+1})."""
    n = len(w)
    if p == 0:
        return {(w,): Fraction(1)}
    out: Tensor = {}
    for ks in compositions(n, p + 1):
        for sigma in unshuffles(list(ks)):
            xs = sigma.permute(w)
            parts, pos = [], 0
            for k in ks:
                parts.append(tuple(xs[pos:pos + k]))
                pos += k
            _acc(out, tuple(parts), Fraction(_eps(sigma, w, sdeg)))
    return out


def shift_sign(word: Sequence[int], sdeg: Sequence[int]) -> int:
    """(-1)^{m(m-1)/2} times the sign of s^{(x)m} on s^-1 x_1 (x) ... (x) s^-1 x_m."""
    m = len(word)
    e = m * (m - 1) // 2 + sum((m - 1 - j) * sdeg[a] for j, a in enumerate(word))
    return -1 if e % 2 else 1


def _multiply(vecs: Sequence[Vec], sdeg: Sequence[int]) -> SymElement:
    """Graded-symmetric product of vectors of generators."""
    out: SymElement = {}
    for combo in itertools.product(*[list(v.terms.items()) for v in vecs]):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        w, s = canonical_word([i for i, _ in combo], sdeg)
        if w is not None:
            _acc(out, w, c * s)
    return out


@dataclass
class Codifferential:
    """Q built from brackets l_m via the shift formula."""

    table: BracketTable

    @property
    def sdeg(self) -> tuple[int, ...]:
        return shifted_degrees(self.table.space.degrees)

    def q1(self, w: Word) -> Vec:
        """Q^1_m on a canonical word."""
        v = self.table.basis_bracket(w)
        return v if shift_sign(w, self.sdeg) > 0 else -v

    def apply(self, w: Word) -> SymElement:
        """Q_m(w) = Q^1_m(w) + sum_i sum_Sh(i,m-i) eps Q^1_i(..) . rest."""
        sdeg = self.sdeg
        m = len(w)
        out: SymElement = {}
        for i in range(1, m + 1):
            blocks = [i] if i == m else [i, m - i]
            for sigma in unshuffles(blocks):
                xs = sigma.permute(w)
                head = self.q1(tuple(xs[:i]))
                if head.is_zero():
                    continue
                eps = _eps(sigma, w, sdeg)
                rest = [Vec.basis(a) for a in xs[i:]]
                for word, c in _multiply([head] + rest, sdeg).items():
                    _acc(out, word, c * eps)
        return out

    def apply_element(self, x: SymElement) -> SymElement:
        out: SymElement = {}
        for w, c in x.items():
            for w2, d in self.apply(w).items():
                _acc(out, w2, c * d)
        return out


def codifferential_from_brackets(b: BracketTable) -> Codifferential:
    return Codifferential(b)


def check_square_zero(q: Codifferential, max_len: int) -> CheckReport:
    """Q o Q = 0 on all canonical words up to the given length."""
    report = CheckReport("Q o Q = 0")
    sdeg = q.sdeg
    for m in range(1, max_len + 1):
        tr = ConditionTracker(report, f"length {m}")
        for w in words(sdeg, m):
            qq = q.apply_element(q.apply(w))
            if not tr.check(str(w), None if not qq else f"value {qq}"):
                break
        tr.close()
    return report


@dataclass
class CoalgebraMap:
    """Coalgebra morphism determined by projections F^1_k onto generators."""

    source_sdeg: tuple[int, ...]
    target_sdeg: tuple[int, ...]
    f1: Callable[[Word], Vec]
    bound: int

    def component(self, p: int, w: Word) -> SymElement:
        """F^p_n(w): compositions k_1..k_p of n, Sh(k_1..k_p), eps/p!."""
        n = len(w)
        if p > n or p < 1:
            return {}
        out: SymElement = {}
        scale = Fraction(1, factorial(p))
        for ks in compositions(n, p):
            if max(ks) > self.bound:
                continue
            for sigma in unshuffles(list(ks)):
                xs = sigma.permute(w)
                eps = _eps(sigma, w, self.source_sdeg)
                vecs, pos = [], 0
                for k in ks:
                    vecs.append(self.f1(tuple(xs[pos:pos + k])))
                    pos += k
                if any(v.is_zero() for v in vecs):
                    continue
                for word, c in _multiply(vecs, self.target_sdeg).items():
                    _acc(out, word, c * eps * scale)
        return out

    def apply(self, w: Word) -> SymElement:
        out: SymElement = {}
        for p in range(1, len(w) + 1):
            for word, c in self.component(p, w).items():
                _acc(out, word, c)
        return out

    def projection(self, x: SymElement) -> Vec:
        """F^1 applied to an element of the coalgebra."""
        acc = Vec()
        for w, c in x.items():
            if len(w) <= self.bound:
                acc = acc + self.f1(w) * c
        return acc


def lift_morphism(f1: Callable[[Word], Vec], source_sdeg: Sequence[int], target_sdeg: Sequence[int],
                  bound: int) -> CoalgebraMap:
    return CoalgebraMap(tuple(source_sdeg), tuple(target_sdeg), f1, bound)


def comorphism_violation(F: CoalgebraMap, max_len: int) -> str | None:
    """First word where reduced coproduct and F fail to commute."""
    for m in range(1, max_len + 1):
        for w in words(F.source_sdeg, m):
            lhs: Tensor = {}
            for word, c in F.apply(w).items():
                for pair, d in reduced_coproduct(word, F.target_sdeg).items():
                    _acc(lhs, pair, c * d)
            rhs: Tensor = {}
            for (a, b), c in reduced_coproduct(w, F.source_sdeg).items():
                fa, fb = F.apply(a), F.apply(b)
                for wa, ca in fa.items():
                    for wb, cb in fb.items():
                        _acc(rhs, (wa, wb), c * ca * cb)
            if lhs != rhs:
                return f"word {w}"
    return None


def morphism_to_coalgebra(m: MorphismData, source: BracketTable) -> CoalgebraMap:
    """F^1_k = (-1)^{k(k-1)/2} s^-1 f_k s^{(x)k} from table-valued structure maps.

    ``source`` is the Lie algebra or central extension table of m.source; the
    central generator (if any) is the last basis element.
    """
    sdeg = shifted_degrees(source.space.degrees)
    tdeg = shifted_degrees(m.target.space.degrees)
    d = m.source.dim

    def f1(w: Word) -> Vec:
        k = len(w)
        if any(a >= d for a in w):
            if k == 1 and m.central_image is not None:
                return m.central_image
            return Vec()
        if k > m.n:
            return Vec()
        v = m.f(k)(*w)
        return v if shift_sign(w, sdeg) > 0 else -v

    return CoalgebraMap(sdeg, tdeg, f1, m.n)


def check_chain_map(F: CoalgebraMap, Q: Codifferential, Q2: Codifferential, max_len: int) -> CheckReport:
    """sum_k F^1_k Q^k_m = sum_k Q'^1_k F^k_m on canonical words of length <= max_len."""
    report = CheckReport("F Q = Q' F")
    for m in range(1, max_len + 1):
        tr = ConditionTracker(report, f"m={m}")
        for w in words(F.source_sdeg, m):
            lhs = F.projection(Q.apply(w))
            rhs = Vec()
            for word, c in F.apply(w).items():
                rhs = rhs + Q2.q1(word) * c
            diff = lhs - rhs
            if not tr.check(str(w), None if diff.is_zero() else f"residual {Q2.table.space.format(diff)}"):
                break
        tr.close()
    return report


def coalgebra_check_of(m: MorphismData, source: BracketTable, max_len: int | None = None) -> CheckReport:
    """Chain-map check of a table-valued morphism, words up to length n+2."""
    F = morphism_to_coalgebra(m, source)
    bound = m.n + 2 if max_len is None else max_len
    return check_chain_map(F, Codifferential(source), Codifferential(m.target), bound)
