"""Commutator length and square length in the free metabelian group of rank two."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import factorial

from .commutators import gamma_membership
from .errors import NonZeroExponents, NotProductOfSquares, OddExponents, VerificationError
from .invariant import winding_invariant, word_from_polynomial
from .laurent import LPoly, binomial_split, residue_mod_2_y1_x2, taylor_coefficients
from .lattice import Lattice, all_coset_sums_parity, hnf_lattices, rank_one_candidates
from .powers import two_kth_powers_decide
from .words import Word, commutator

_X = Word.parse("x")
_Y = Word.parse("y")


def equal_mod_second_derived(u: Word, v: Word) -> bool:
    d = u * v.inverse()
    return d.in_commutator_subgroup() and not winding_invariant(d)


def augmentation_split(d: LPoly) -> tuple[LPoly, LPoly, int]:
    """Write ``d = (X-1) A + (Y-1) B + c`` with ``A`` Laurent, ``B`` in Y only and c constant."""
    a, rest = binomial_split(d, "X", 1)
    b, c = binomial_split(rest, "Y", 1)
    return a, b, c[(0, 0)]


# ---------------------------------------------------------------------------
# commutator length two


@dataclass(frozen=True)
class TwoCommutators:
    first: tuple[Word, Word]
    second: tuple[Word, Word]

    def word(self) -> Word:
        return commutator(*self.first) * commutator(*self.second)


def cl2_decomposition(p: LPoly) -> TwoCommutators:
    """Two commutators whose product has invariant p.

    With ``k = p(1,1)`` the difference ``p - W([x, y^k])`` has zero augmentation, so it
    splits as ``(1-X) Q1 + (1-Y) Q2``; each piece is the invariant of a commutator with
    a generator, and one of those absorbs ``[x, y^k]``.
    """
    k = p.area()
    yk = Word((("y", k),))
    d = p - winding_invariant(commutator(_X, yk))
    a, b, c = augmentation_split(d)
    if c:
        raise VerificationError("augmentation of the difference is not zero")
    w1 = word_from_polynomial(-a)
    w2 = word_from_polynomial(-b)
    out = TwoCommutators(
        (w1 * yk.inverse(), yk * _X * yk.inverse()),
        (w2, _Y),
    )
    if winding_invariant(out.word()) != p:
        raise VerificationError(f"two-commutator witness for {p} failed")
    return out


# ---------------------------------------------------------------------------
# squares


class SquaresStatus(enum.Enum):
    DECOMPOSED = "Decomposed"
    OBSTRUCTED = "Obstructed"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ThreeSquares:
    status: SquaresStatus
    factors: tuple[Word, Word, Word] | None = None
    reason: str = ""
    lattice: Lattice | None = None

    def word(self) -> Word:
        u, v, w = self.factors
        return u**2 * v**2 * w**2


def _assemble(pa: LPoly, pc: LPoly, pd: LPoly, x_power: int) -> tuple[Word, Word, Word]:
    a = word_from_polynomial(pa)
    c = word_from_polynomial(pc)
    d = word_from_polynomial(pd)
    v = c.inverse() * Word((("x", -x_power),))
    w = d.inverse() * _Y.inverse()
    u = a * w.inverse() * v.inverse()
    return u, v, w


def _odd_area_squares(p: LPoly) -> tuple[Word, Word, Word]:
    # target: p = P_a (1 + XY) + XY P_c (1 - Y) + Y^2 P_d (X - 1) + Y
    a, b, two_t = augmentation_split(p - LPoly.monomial(0, 1))
    t = two_t // 2
    pa = LPoly.constant(t)
    pc = -(b - LPoly.monomial(1, 0) * t).shift(-1, -1)
    pd = (a - t).shift(0, -2)
    return _assemble(pa, pc, pd, 1)


def _residue_one_plus_x_squares(p: LPoly) -> tuple[Word, Word, Word]:
    # target: p = P_a (1 + X^2 Y) + X^2 Y P_c (1 - Y) + Y^2 P_d (X^2 - 1) + Y (1 + X)
    d = p - LPoly({(0, 1): 1, (1, 1): 1})
    b, rest = binomial_split(d, "Y", 1)
    a, r = binomial_split(rest, "X", 2)
    r0, r1 = r[(0, 0)], r[(1, 0)]
    ta = LPoly({(0, 0): r0 // 2, (1, 0): r1 // 2})
    pc = -(b - ta.shift(2, 0)).shift(-2, -1)
    pd = (a - ta).shift(0, -2)
    return _assemble(ta, pc, pd, 2)


def parity_lattice(p: LPoly) -> Lattice | None:
    """A lattice on which the coset sums of p all share one parity compatible with its rank.

    Rank two needs every coset sum odd; rank at most one needs every sum even. If no
    such lattice exists the element is not a product of three squares.
    """
    odd = sorted(e for e, c in p.items() if c % 2)
    for n in range(1, len(odd) + 1):
        for lat in hnf_lattices(n):
            if all_coset_sums_parity(p, lat, 1):
                return lat
    if not odd:
        return Lattice(())
    odd_poly = LPoly({e: 1 for e in odd})
    for lat in rank_one_candidates(odd):
        if all_coset_sums_parity(odd_poly, lat, 0):
            return lat
    return None


def three_squares_decide_partial(z: Word) -> ThreeSquares:
    if not z.in_commutator_subgroup():
        raise NonZeroExponents("three-squares test needs exponent sums zero")
    p = winding_invariant(z)
    if p.area() % 2:
        factors = _odd_area_squares(p)
        reason = "odd-area"
    elif residue_mod_2_y1_x2(p) == (1, 1):
        factors = _residue_one_plus_x_squares(p)
        reason = "residue-one-plus-x"
    else:
        lat = parity_lattice(p)
        if lat is None:
            return ThreeSquares(SquaresStatus.OBSTRUCTED, reason="coset-parity")
        return ThreeSquares(SquaresStatus.UNKNOWN, reason="coset-parity-passes", lattice=lat)
    out = ThreeSquares(SquaresStatus.DECOMPOSED, factors, reason)
    if not equal_mod_second_derived(out.word(), z):
        raise VerificationError(f"three-squares witness for {z} failed")
    return out


def five_squares_decompose(r: Word) -> list[Word]:
    """Five words whose squares multiply to r modulo the second derived subgroup."""
    ex, ey = r.exponents
    if ex % 2 or ey % 2:
        raise OddExponents(f"exponent sums {r.exponents} are not both even")
    k, l = ex // 2, ey // 2
    head = Word((("x", k + 1), ("y", l)))
    z = Word((("x", 2),)) * (head**2).inverse() * r
    p = winding_invariant(z)
    if p.area() % 2 or residue_mod_2_y1_x2(p) == (1, 1):
        tail = three_squares_decide_partial(z)
        second = _X.inverse()
    else:
        # shift the residue: z' = [x,y] x [x,y] x^-1 z has invariant 1 + X + P_z
        c = commutator(_X, _Y)
        z2 = c * _X * c * _X.inverse() * z
        tail = three_squares_decide_partial(z2)
        second = Word.parse("XyxYX")
    if tail.status is not SquaresStatus.DECOMPOSED:
        raise VerificationError("three-squares step did not decompose")
    out = [head, second, *tail.factors]
    prod = Word()
    for f in out:
        prod = prod * f**2
    if not equal_mod_second_derived(prod, r):
        raise VerificationError(f"five-squares witness for {r} failed")
    return out


def square_length_bounds(r: Word) -> tuple[int, int]:
    """Lower and upper bounds on the number of squares needed for r."""
    if r.exp_x % 2 or r.exp_y % 2:
        raise NotProductOfSquares("odd exponent sum")
    if r.in_commutator_subgroup():
        if not winding_invariant(r):
            return (0, 0)
        if two_kth_powers_decide(r, 2) is not None:
            return (1, 2)
        t = three_squares_decide_partial(r)
        if t.status is SquaresStatus.DECOMPOSED:
            return (3, 3)
        if t.status is SquaresStatus.OBSTRUCTED:
            return (4, 5)
        return (3, 5)
    return (1, 5)


# ---------------------------------------------------------------------------
# Engel verbal subgroups


def engel_verbal_obstruction(w: Word, n: int) -> bool:
    """True when w is provably not in the n-Engel verbal subgroup of the metabelian group.

    Elements of that subgroup lie in the (n+1)-th lower central term, and for n >= 3
    their invariant has mixed Taylor coefficient at ``(X-1)^(n-2) (Y-1)`` divisible by
    ``n - 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not w.in_commutator_subgroup():
        return True
    member, _ = gamma_membership(w, n + 1)
    if not member:
        return True
    if n <= 2:
        return False
    a = taylor_coefficients(winding_invariant(w)).get((n - 2, 1), 0)
    value = factorial(n - 2) * a
    return value % factorial(n - 1) != 0
