"""Deciding and obstructing commutator shapes through the winding polynomial.

Key facts used here, all about a commutator ``[a, b]`` whose entries have
exponent vectors ``v_a`` and ``v_b``:

* On every coset of the lattice ``L`` spanned by ``v_a, v_b`` the coefficients
  of ``W([a, b])`` add up to the same number, the sign of ``det(v_a, v_b)``.
* Hence ``W(1, 1)`` equals that sign times the index of ``L``.
* ``W([a^2, b]) = (1 + X^n Y^m) W([a, b])`` with ``(n, m) = v_a``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonZeroExponents
from .invariant import winding_invariant
from .laurent import LPoly, exact_divide, taylor_coefficients
from .lattice import (
    Lattice,
    all_coset_sums_equal,
    det,
    hnf_lattices,
    rank_one_candidates,
)
from .words import Word, commutator


class Verdict(enum.Enum):
    OBSTRUCTED = "Obstructed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ObstructionResult:
    verdict: Verdict
    lattice: Lattice | None = None
    iota: int | None = None

    @property
    def obstructed(self) -> bool:
        return self.verdict is Verdict.OBSTRUCTED


def iota(a: Word, b: Word) -> int:
    d = det(a.exponents, b.exponents)
    return (d > 0) - (d < 0)


def commutator_lattice(a: Word, b: Word) -> Lattice:
    return Lattice.spanned_by([a.exponents, b.exponents])


def verify_coset_sums(a: Word, b: Word) -> bool:
    """Check the equal-coset-sum property of ``[a, b]`` on every coset."""
    p = winding_invariant(commutator(a, b))
    return all_coset_sums_equal(p, commutator_lattice(a, b), iota(a, b))


def commutator_obstruction(p: LPoly, must_contain: Iterable[tuple[int, int]] = ()) -> ObstructionResult:
    """Search for a lattice ``L`` containing ``must_contain`` on which p has constant coset sums.

    The constant is forced: ``sign(p(1,1))``, and ``L`` has index ``|p(1,1)|`` when that is
    nonzero and rank at most one otherwise. No such lattice means p is not the invariant of
    any commutator ``[a, b]`` with ``must_contain`` inside the span of ``v_a, v_b``.
    """
    must = [tuple(v) for v in must_contain]
    s = p.area()
    if s:
        sign = 1 if s > 0 else -1
        if len(p) < abs(s):
            return ObstructionResult(Verdict.OBSTRUCTED)
        for lat in hnf_lattices(abs(s)):
            if lat.contains_all(must) and all_coset_sums_equal(p, lat, sign):
                return ObstructionResult(Verdict.INCONCLUSIVE, lat, sign)
        return ObstructionResult(Verdict.OBSTRUCTED)

    nonzero_must = [v for v in must if v != (0, 0)]
    for i in range(len(nonzero_must)):
        for j in range(i):
            if det(nonzero_must[i], nonzero_must[j]):
                return ObstructionResult(Verdict.OBSTRUCTED)
    if not p:
        return ObstructionResult(Verdict.INCONCLUSIVE, Lattice.spanned_by(nonzero_must), 0)
    if not nonzero_must and all_coset_sums_equal(p, Lattice(()), 0):
        return ObstructionResult(Verdict.INCONCLUSIVE, Lattice(()), 0)
    for lat in rank_one_candidates(p.support(), nonzero_must):
        if all_coset_sums_equal(p, lat, 0):
            return ObstructionResult(Verdict.INCONCLUSIVE, lat, 0)
    return ObstructionResult(Verdict.OBSTRUCTED)


def _binomial(n: int, m: int) -> LPoly:
    return LPoly({(0, 0): 1}) + LPoly.monomial(n, m)


def square_entry_candidates(p: LPoly) -> list[tuple[int, int]]:
    """Exponent vectors ``(n, m)`` (up to sign) with ``1 + X^n Y^m`` dividing p."""
    out = []
    if all(c % 2 == 0 for _, c in p.items()):
        out.append((0, 0))
    wx, wy = p.widths()
    for n in range(0, wx + 1):
        for m in range(-wy, wy + 1):
            if n == 0 and m <= 0:
                continue
            if exact_divide(p, _binomial(n, m)) is not None:
                out.append((n, m))
    return out


def ab_squared_obstruction(p: LPoly) -> ObstructionResult:
    """Obstruct ``p == W([a^2, b])``: every admissible ``v_a`` must fail the coset test."""
    for n, m in square_entry_candidates(p):
        r = commutator_obstruction(p, must_contain=[(2 * n, 2 * m)])
        if not r.obstructed:
            return r
    return ObstructionResult(Verdict.OBSTRUCTED)


@dataclass(frozen=True)
class SimpleCommutatorFactors:
    """``p == prod(X^n Y^m - 1 for (n, m) in monomials) * cofactor``."""

    monomials: tuple[tuple[int, int], ...]
    cofactor: LPoly

    def product(self) -> LPoly:
        out = self.cofactor
        for n, m in self.monomials:
            out = out * (LPoly.monomial(n, m) - 1)
        return out


def simple_commutator_decide(p: LPoly, k: int) -> SimpleCommutatorFactors | None:
    """Find monomials ``M_1..M_k`` with ``(M_1 - 1)...(M_k - 1)`` dividing p.

    This is necessary for p to be the invariant of a simple commutator of weight ``k + 1``
    in the metabelian quotient. Monomials are searched up to sign (``M^-1 - 1`` is a unit
    multiple of ``M - 1``) and in nondecreasing candidate order.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not p:
        return SimpleCommutatorFactors(((1, 0),) * k, LPoly())
    if k and any(a + b < k for a, b in taylor_coefficients(p)):
        return None
    wx, wy = p.widths()
    cands = [
        (n, m)
        for n in range(0, wx + 1)
        for m in range(-wy, wy + 1)
        if n > 0 or m > 0
    ]
    cands.sort(key=lambda v: (abs(v[0]) + abs(v[1]), -v[0], -v[1]))

    def search(q: LPoly, need: int, start: int, acc: list) -> SimpleCommutatorFactors | None:
        if need == 0:
            return SimpleCommutatorFactors(tuple(acc), q)
        qx, qy = q.widths()
        for idx in range(start, len(cands)):
            n, m = cands[idx]
            if n > qx or abs(m) > qy:
                continue
            r = exact_divide(q, LPoly.monomial(n, m) - 1)
            if r is None:
                continue
            found = search(r, need - 1, idx, acc + [(n, m)])
            if found:
                return found
        return None

    return search(p, k, 0, [])


def lower_central_necessary(p: LPoly, k: int) -> bool:
    """Taylor coefficients of total degree ``<= k - 3`` vanish for invariants of weight-k words."""
    return all(a + b > k - 3 for a, b in taylor_coefficients(p))


def gamma_decomposition(p: LPoly, m: int) -> list[LPoly] | None:
    """Write p as ``sum_p Q_p (X-1)^p (Y-1)^(m-2-p)`` if its low Taylor coefficients vanish."""
    if m < 2:
        raise ValueError("m must be at least 2")
    deg = m - 2
    tay = taylor_coefficients(p)
    if any(a + b < deg for a, b in tay):
        return None
    _, (si, sj) = p.normalized()
    parts = [dict() for _ in range(deg + 1)]
    for (a, b), c in tay.items():
        q = min(a, deg)
        rest = (a - q, b - (deg - q))
        parts[q][rest] = parts[q].get(rest, 0) + c
    xm, ym = LPoly.monomial(1, 0) - 1, LPoly.monomial(0, 1) - 1
    out = []
    for q in range(deg + 1):
        acc = LPoly()
        for (a, b), c in parts[q].items():
            acc = acc + (xm**a) * (ym**b) * c
        out.append(acc.shift(-si, -sj))
    return out


def gamma_membership(w: Word, m: int) -> tuple[bool, list[LPoly] | None]:
    """Whether w lies in ``gamma_m`` times the second derived subgroup, with the witness parts."""
    if not w.in_commutator_subgroup():
        if m <= 1:
            return True, None
        raise NonZeroExponents("only words in the commutator subgroup are handled")
    if m <= 2:
        return True, [winding_invariant(w)]
    parts = gamma_decomposition(winding_invariant(w), m)
    return parts is not None, parts


def recombine_gamma(parts: Sequence[LPoly], m: int) -> LPoly:
    deg = m - 2
    xm, ym = LPoly.monomial(1, 0) - 1, LPoly.monomial(0, 1) - 1
    out = LPoly()
    for q, part in enumerate(parts):
        out = out + part * (xm**q) * (ym ** (deg - q))
    return out
