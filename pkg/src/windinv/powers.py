"""Products of powers in the free metabelian group of rank two."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InapplicableTest, NonZeroExponents, VerificationError
from .invariant import (
    cyclic_cayley_invariant,
    kappa,
    klein_invariant,
    winding_invariant,
    word_from_polynomial,
)
from .laurent import LPoly, exact_divide
from .words import Word, commutator, engel


@dataclass(frozen=True)
class TwoPowers:
    """``a^k b^k`` has the same invariant as the input word."""

    a: Word
    b: Word
    k: int
    offset: tuple[int, int]

    def word(self) -> Word:
        return self.a**self.k * self.b**self.k


def geometric_sum(n: int, m: int, k: int) -> LPoly:
    """``1 + M + ... + M^(k-1)`` for ``M = X^n Y^m``."""
    return LPoly({(i * n, i * m): 1 for i in range(k)}) if (n, m) != (0, 0) else LPoly.constant(k)


def two_power_offsets(p: LPoly, k: int) -> list[tuple[int, int]]:
    """Candidate exponent vectors in search order; wider ones cannot divide p."""
    out = [(0, 0)]
    if k <= 1:
        return out
    wx, wy = p.widths()
    bx, by = wx // (k - 1), wy // (k - 1)
    rest = [
        (n, m)
        for n in range(-bx, bx + 1)
        for m in range(-by, by + 1)
        if (n, m) != (0, 0)
    ]
    rest.sort(key=lambda v: (abs(v[0]) + abs(v[1]), -v[0], -v[1]))
    return out + rest


def two_kth_powers_decide(w: Word, k: int) -> TwoPowers | None:
    """Decide whether w equals ``a^k b^k`` modulo the second derived subgroup.

    ``a^k b^k`` is a product of conjugates of ``ab`` by powers of ``b^-1``, so its
    invariant is ``(1 + M + ... + M^(k-1)) P_{ab}`` with M the monomial of ``b^-1``;
    conversely a quotient by such a sum gives ``ab`` back via the invariant.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not w.in_commutator_subgroup():
        raise NonZeroExponents("two-powers decision needs exponent sums zero")
    p = winding_invariant(w)
    if not p:
        return TwoPowers(Word(), Word(), k, (0, 0))
    for n, m in two_power_offsets(p, k):
        q = exact_divide(p, geometric_sum(n, m, k))
        if q is None:
            continue
        u = word_from_polynomial(q)
        b = Word((("x", -n), ("y", -m)))
        a = u * b.inverse()
        out = TwoPowers(a, b, k, (n, m))
        if winding_invariant(out.word()) != p:
            raise VerificationError(f"two-powers witness for {w} failed")
        return out
    return None


def power_area_test(w: Word, k: int) -> bool:
    """Necessary condition for a product of k-th powers: k (k odd) or k/2 (k even) divides the area."""
    if not w.in_commutator_subgroup():
        raise NonZeroExponents("area test needs exponent sums zero")
    a = winding_invariant(w).area()
    d = k if k % 2 else k // 2
    return a % d == 0


def cube_product_decide(w: Word) -> bool:
    """Exact criterion for a product of cubes in the free metabelian group."""
    k, l = w.exponents
    if k % 3 or l % 3:
        return False
    rest = Word((("y", -l), ("x", -k))) * w
    return winding_invariant(rest).area() % 3 == 0


def fourth_power_kappa_test(w: Word) -> bool:
    """Necessary condition for a product of fourth powers: 4 divides the row-colour count."""
    if not w.in_commutator_subgroup():
        raise NonZeroExponents("kappa needs exponent sums zero")
    return kappa(w) % 4 == 0


def two_squares_klein_test(w: Word) -> bool:
    """False when the Klein-four invariant rules out a product of two squares."""
    if w.exp_x % 4 or w.exp_y % 4:
        raise InapplicableTest("both exponent sums must be divisible by 4")
    return klein_invariant(w) % 2 == 0


def two_pth_powers_cyclic_test(w: Word, p: int) -> bool:
    """False when the cyclic-cover invariant rules out ``a^p b^p``."""
    if w.exp_x % (p * p):
        raise InapplicableTest(f"x-exponent must be divisible by {p * p}")
    alpha = cyclic_cayley_invariant(w, p)
    return alpha.all_divisible_by(p) or alpha.is_constant()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class EngelPowers:
    p: int
    bases: tuple[Word, Word, Word]

    def word(self) -> Word:
        out = Word()
        for b in self.bases:
            out = out * b**self.p
        return out


def engel_pth_decomposition(p: int) -> EngelPowers:
    """Three p-th powers whose product agrees with ``e_{p+1}`` modulo the second derived subgroup."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        bases = (Word.parse("y x y X Y Y"), Word.parse("y^2"), Word.parse("Y x Y X"))
    else:
        one, y = LPoly.constant(1), LPoly.monomial(0, 1)
        num = (one - y) ** p - one + y**p
        q = LPoly({e: c // p for e, c in num.items()})
        if q * p != num:
            raise VerificationError("binomial coefficients not divisible by p")
        bases = (word_from_polynomial(q), Word.parse("xyX"), Word.parse("yxYXY"))
    out = EngelPowers(p, bases)
    if winding_invariant(out.word()) != winding_invariant(engel(p + 1)):
        raise VerificationError(f"Engel decomposition for p={p} failed")
    return out


# Fixed identities that are checked as stated.
_C = commutator(Word.parse("x"), Word.parse("y"))
_Y = Word.parse("y")
ENGEL6_FIFTH_POWERS = (
    _Y * _C.inverse() * _Y * _C**2 * _Y * _C.inverse() ** 2 * _Y * _C * Word.parse("y^-4"),
    Word.parse("xyX"),
    Word.parse("yxYXY"),
)

HAVAS_LHS = commutator(Word.parse("xYX"), Word.parse("Y"))
HAVAS_RHS = Word.parse("xYX^2") ** 3 * Word.parse("x^2y") ** 3 * Word.parse("YXy") ** 3
