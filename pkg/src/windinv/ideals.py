"""Ideals of the Laurent ring Z[X^+-1, Y^+-1] and group presentations.

Membership is decided with a strong Groebner basis over the integers in
``Z[X, Y, U]`` where ``U X Y - 1`` is adjoined, so that U stands for
``(XY)^-1``. Polynomials there are dicts from exponent triples to integers.
Reduction is Euclidean: a term whose monomial is divisible by a basis leading
monomial has its coefficient reduced into ``[0, lc)``. With a strong basis
this gives a canonical representative of each residue class.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import NonZeroExponents, ResourceExceeded
from .invariant import winding_invariant
from .laurent import LPoly
from .words import Word

Mono = tuple[int, int, int]
Poly = dict[Mono, int]

DEFAULT_MAX_PAIRS = 20000
DEFAULT_MAX_BASIS = 400
DEFAULT_MAX_BITS = 65536


def _key(m: Mono):
    # graded reverse lexicographic with X > Y > U
    return (sum(m), -m[2], -m[1], -m[0])


def _lead(f: Poly) -> Mono:
    return max(f, key=_key)


def _divides(a: Mono, b: Mono) -> bool:
    return a[0] <= b[0] and a[1] <= b[1] and a[2] <= b[2]


def _lcm(a: Mono, b: Mono) -> Mono:
    return (max(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]))


def _sub(a: Mono, b: Mono) -> Mono:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _axpy(target: Poly, coef: int, shift: Mono, f: Poly) -> None:
    """``target += coef * m^shift * f`` in place."""
    for m, c in f.items():
        k = (m[0] + shift[0], m[1] + shift[1], m[2] + shift[2])
        v = target.get(k, 0) + coef * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def _positive(f: Poly) -> Poly:
    if f and f[_lead(f)] < 0:
        return {m: -c for m, c in f.items()}
    return f


def embed(p: LPoly) -> Poly:
    """Rewrite ``X^i Y^j`` as ``U^s X^(i+s) Y^(j+s)`` with the least ``s >= 0`` that clears negatives."""
    out: Poly = {}
    for (i, j), c in p.items():
        s = max(0, -i, -j)
        k = (i + s, j + s, s)
        out[k] = out.get(k, 0) + c
    return {m: c for m, c in out.items() if c}


def unembed(f: Poly) -> LPoly:
    return LPoly([((a - u, b - u), c) for (a, b, u), c in f.items()])


@dataclass
class _Basis:
    polys: list[Poly] = field(default_factory=list)
    leads: list[Mono] = field(default_factory=list)
    lcs: list[int] = field(default_factory=list)

    def add(self, f: Poly) -> int:
        f = _positive(f)
        m = _lead(f)
        self.polys.append(f)
        self.leads.append(m)
        self.lcs.append(f[m])
        return len(self.polys) - 1

    def best_reducer(self, m: Mono, skip: int = -1) -> int | None:
        best = None
        for idx, lm in enumerate(self.leads):
            if idx == skip or self.polys[idx] is None:
                continue
            if _divides(lm, m) and (best is None or self.lcs[idx] < self.lcs[best]):
                best = idx
        return best

    def reduce(self, f: Poly, skip: int = -1, full: bool = True) -> Poly:
        work = dict(f)
        out: Poly = {}
        while work:
            m = _lead(work)
            c = work.pop(m)
            idx = self.best_reducer(m, skip)
            if idx is not None:
                lc = self.lcs[idx]
                q = c // lc
                if q:
                    g = self.polys[idx]
                    shift = _sub(m, self.leads[idx])
                    for gm, gc in g.items():
                        if gm == self.leads[idx]:
                            continue
                        k = (gm[0] + shift[0], gm[1] + shift[1], gm[2] + shift[2])
                        v = work.get(k, 0) - q * gc
                        if v:
                            work[k] = v
                        else:
                            work.pop(k, None)
                c -= q * lc
            if c:
                if not full:
                    # strong basis: an irreducible leading term already proves nonmembership
                    return {m: c}
                out[m] = c
        return out


def _s_poly(f: Poly, g: Poly, mf: Mono, mg: Mono, cf: int, cg: int) -> Poly:
    l = _lcm(mf, mg)
    cl = cf * cg // gcd(cf, cg)
    out: Poly = {}
    _axpy(out, cl // cf, _sub(l, mf), f)
    _axpy(out, -(cl // cg), _sub(l, mg), g)
    return out


def _g_poly(f: Poly, g: Poly, mf: Mono, mg: Mono, cf: int, cg: int) -> Poly:
    l = _lcm(mf, mg)
    _, s, t = _egcd(cf, cg)
    out: Poly = {}
    _axpy(out, s, _sub(l, mf), f)
    _axpy(out, t, _sub(l, mg), g)
    return out


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced strong Groebner basis in ``Z[X, Y, U]`` containing ``U X Y - 1``."""

    generators: tuple[tuple[tuple[Mono, int], ...], ...]

    def polys(self) -> list[Poly]:
        return [dict(g) for g in self.generators]

    def _basis(self) -> _Basis:
        b = _Basis()
        for g in self.generators:
            b.add(dict(g))
        return b

    def normal_form(self, p: LPoly) -> LPoly:
        return unembed(self._basis().reduce(embed(p)))

    def contains(self, p: LPoly) -> bool:
        return not self._basis().reduce(embed(p), full=False)

    def is_whole_ring(self) -> bool:
        return any(g == (((0, 0, 0), 1),) for g in self.generators)

    def as_laurent(self) -> list[LPoly]:
        # the saturation element unembeds to 0 or to a copy of another generator
        out: list[LPoly] = []
        for g in self.generators:
            p = unembed(dict(g))
            if p and p not in out:
                out.append(p)
        return out


def groebner_basis(
    gens: Iterable[LPoly],
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_basis: int = DEFAULT_MAX_BASIS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> GroebnerBasis:
    """Strong basis of the ideal; ResourceExceeded when a cap on pairs, size or coefficient bits is hit."""
    return _groebner_cached(tuple(gens), max_pairs, max_basis, max_bits)


@lru_cache(maxsize=256)
def _groebner_cached(gens: tuple[LPoly, ...], max_pairs: int, max_basis: int, max_bits: int) -> GroebnerBasis:
    basis = _Basis()
    pairs: list[tuple[int, int, int]] = []  # heap of (degree of lcm, i, j)

    def insert(f: Poly) -> None:
        todo = [f]
        while todo:
            r = basis.reduce(todo.pop())
            if not r:
                continue
            if max(abs(c) for c in r.values()).bit_length() > max_bits:
                # integer Buchberger can swell coefficients long before the basis closes
                raise ResourceExceeded(f"coefficients grew past {max_bits} bits")
            idx = basis.add(r)
            if sum(p is not None for p in basis.polys) > max_basis:
                raise ResourceExceeded(f"basis grew past {max_basis} elements")
            m, c = basis.leads[idx], basis.lcs[idx]
            for j in range(idx):
                g = basis.polys[j]
                if g is None:
                    continue
                if _divides(m, basis.leads[j]) and basis.lcs[j] % c == 0:
                    # g = t*r + h with a smaller h; keep h instead of g
                    basis.polys[j] = None
                    todo.append(g)
                else:
                    key = sum(_lcm(basis.leads[j], m))
                    heapq.heappush(pairs, (key, j, idx))

    seeds = [embed(g) for g in gens if g] + [{(1, 1, 1): 1, (0, 0, 0): -1}]
    for f in seeds:
        insert(f)

    processed = 0
    while pairs:
        _, i, j = heapq.heappop(pairs)
        f, g = basis.polys[i], basis.polys[j]
        if f is None or g is None:
            continue
        processed += 1
        if processed > max_pairs:
            raise ResourceExceeded(f"more than {max_pairs} critical pairs")
        mf, mg = basis.leads[i], basis.leads[j]
        cf, cg = basis.lcs[i], basis.lcs[j]
        coprime_monos = _lcm(mf, mg) == (mf[0] + mg[0], mf[1] + mg[1], mf[2] + mg[2])
        candidates = []
        if cf % cg and cg % cf:
            candidates.append(_g_poly(f, g, mf, mg, cf, cg))
        if not (coprime_monos and gcd(cf, cg) == 1):
            candidates.append(_s_poly(f, g, mf, mg, cf, cg))
        for h in candidates:
            insert(h)
    return _interreduce(basis)


def _interreduce(basis: _Basis) -> GroebnerBasis:
    live = [i for i, f in enumerate(basis.polys) if f is not None]
    # drop elements whose leading term is a multiple of another's
    keep = []
    for i in live:
        redundant = False
        for j in live:
            if i == j:
                continue
            if _divides(basis.leads[j], basis.leads[i]) and basis.lcs[i] % basis.lcs[j] == 0:
                if basis.leads[j] != basis.leads[i] or basis.lcs[j] != basis.lcs[i] or j < i:
                    redundant = True
                    break
        if not redundant:
            keep.append(i)
    slim = _Basis()
    for i in keep:
        slim.add(basis.polys[i])
    out = []
    for idx, f in enumerate(slim.polys):
        m = slim.leads[idx]
        tail = {k: v for k, v in f.items() if k != m}
        reduced = slim.reduce(tail, skip=idx) if tail else {}
        g = dict(reduced)
        g[m] = f[m]
        out.append(tuple(sorted(g.items(), key=lambda kv: _key(kv[0]), reverse=True)))
    out.sort(key=lambda g: _key(g[0][0]))
    return GroebnerBasis(tuple(out))


def laurent_membership(p: LPoly, gens: Sequence[LPoly], **caps) -> bool:
    return groebner_basis(gens, **caps).contains(p)


def laurent_normal_form(p: LPoly, gens: Sequence[LPoly], **caps) -> LPoly:
    return groebner_basis(gens, **caps).normal_form(p)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """A two-generator presentation; only relators in the commutator subgroup are allowed."""

    relators: tuple[Word, ...]

    def __post_init__(self):
        for r in self.relators:
            if not r.in_commutator_subgroup():
                raise NonZeroExponents(f"relator {r} has exponent sums {r.exponents}")

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        rels = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rels.append(Word.parse(line))
        return cls(tuple(rels))

    def ideal(self) -> list[LPoly]:
        return [winding_invariant(r) for r in self.relators]


def winding_class_mod(w: Word, pres: Presentation, **caps) -> LPoly:
    """Canonical representative of ``W(w)`` modulo the ideal of the relators."""
    return laurent_normal_form(winding_invariant(w), pres.ideal(), **caps)


def in_second_derived_of_quotient_necessary(w: Word, pres: Presentation, **caps) -> bool:
    """False proves w does not become trivial modulo the relators and the second derived subgroup."""
    return laurent_membership(winding_invariant(w), pres.ideal(), **caps)


def is_quasi_perfect(pres: Presentation, **caps) -> bool:
    """The relator invariants generate the whole Laurent ring."""
    return groebner_basis(pres.ideal(), **caps).is_whole_ring()


def center_obstruction(pres: Presentation, g: Word, **caps) -> bool:
    """True proves g is not central: centrality forces ``X^n Y^m - 1`` into the ideal."""
    n, m = g.exponents
    target = LPoly.monomial(n, m) - 1
    return not laurent_membership(target, pres.ideal(), **caps)


THOMPSON_RELATORS = (
    Word.parse("xY") * Word.parse("Xyx") * Word.parse("yX") * Word.parse("XYx"),
    Word.parse("xY") * Word.parse("X^2yx^2") * Word.parse("yX") * Word.parse("X^2Yx^2"),
)
