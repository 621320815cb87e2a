"""Winding-number invariant of commutator-subgroup words and its relatives.

A word in x, y traces a lattice path from the origin (x right, y up, capitals
backwards). When the exponent sums vanish the path is closed, and its winding
number around each unit-cell centre ``(i + 1/2, j + 1/2)`` becomes the
coefficient of ``X^i Y^j``. Counterclockwise counts positively, so ``[x, y]``
maps to ``1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import InapplicableTest, NonZeroExponents, VerificationError
from .laurent import LPoly, grlex_key
from .words import Word, conj_gen


def _vertical_crossings(w: Word) -> dict[int, dict[int, int]]:
    """Net signed traversals of vertical unit edges, grouped by row then by x position."""
    rows: dict[int, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    px = py = 0
    for g, e in w.runs:
        if g == "x":
            px += e
        elif e > 0:
            for j in range(py, py + e):
                rows[j][px] += 1
            py += e
        else:
            for j in range(py + e, py):
                rows[j][px] -= 1
            py += e
    return rows


def winding_invariant(w: Word) -> LPoly:
    if not w.in_commutator_subgroup():
        raise NonZeroExponents(f"exponent sums {w.exponents} are not zero")
    terms: dict[tuple[int, int], int] = {}
    for j, row in _vertical_crossings(w).items():
        ks = sorted((k for k, c in row.items() if c), reverse=True)
        running = 0
        for idx, k in enumerate(ks):
            running += row[k]
            if idx + 1 == len(ks):
                break
            if running:
                for i in range(ks[idx + 1], k):
                    terms[(i, j)] = running
    return LPoly(terms)


def area(w: Word) -> int:
    """Signed area enclosed by the path of w."""
    return winding_invariant(w).area()


def word_from_polynomial(p: LPoly, check: bool = True) -> Word:
    """A word whose invariant is p: one conjugate of a power of ``[x, y]`` per term."""
    out = Word()
    for e in sorted(p.terms, key=grlex_key):
        out = out * conj_gen(e[0], e[1], p[e])
    if check and winding_invariant(out) != p:
        raise VerificationError(f"reconstruction of {p} failed")
    return out


# ---------------------------------------------------------------------------
# Fox derivatives


@dataclass(frozen=True)
class FoxPair:
    dx: LPoly
    dy: LPoly


def fox_pair(w: Word) -> FoxPair:
    """Abelianized left Fox derivatives: an x at prefix g adds g, an x^-1 adds ``-g X^-1``."""
    dx: dict[tuple[int, int], int] = defaultdict(int)
    dy: dict[tuple[int, int], int] = defaultdict(int)
    a = b = 0
    for g, e in w.runs:
        if g == "x":
            if e > 0:
                for t in range(e):
                    dx[(a + t, b)] += 1
            else:
                for t in range(1, -e + 1):
                    dx[(a - t, b)] -= 1
            a += e
        else:
            if e > 0:
                for t in range(e):
                    dy[(a, b + t)] += 1
            else:
                for t in range(1, -e + 1):
                    dy[(a, b - t)] -= 1
            b += e
    return FoxPair(LPoly(dx), LPoly(dy))


def fundamental_identity_holds(w: Word) -> bool:
    f = fox_pair(w)
    one = LPoly.constant(1)
    lhs = f.dx * (LPoly.monomial(1, 0) - one) + f.dy * (LPoly.monomial(0, 1) - one)
    return lhs == LPoly.monomial(w.exp_x, w.exp_y) - one


_COMMUTATOR_FOX = fox_pair(Word.parse("xyXY"))
# Convention check: our x-derivative of [x,y] is 1 - Y; the other common
# normalization (1 - Y^-1) X^-1 differs from it by the unit -XY.
FOX_UNIT = LPoly({(1, 1): -1})
assert _COMMUTATOR_FOX.dx == LPoly({(0, 1): 1}) * -1 + 1
assert (LPoly({(0, 0): 1, (0, -1): -1}).shift(-1, 0)) * FOX_UNIT == _COMMUTATOR_FOX.dx


def fox_from_invariant(p: LPoly) -> FoxPair:
    """For w in the commutator subgroup both derivatives are multiples of those of ``[x, y]``."""
    return FoxPair(p * _COMMUTATOR_FOX.dx, p * _COMMUTATOR_FOX.dy)


# ---------------------------------------------------------------------------
# auxiliary invariants


def kappa_of_poly(p: LPoly) -> int:
    """Rows 0,1 mod 4 count positively, rows 2,3 negatively."""
    return sum(c if j % 4 in (0, 1) else -c for (_, j), c in p.items())


def kappa(w: Word) -> int:
    return kappa_of_poly(winding_invariant(w))


@dataclass(frozen=True)
class CyclicVector:
    """An element of the group ring of Z/k, coefficient i on g^i."""

    k: int
    coeffs: tuple[int, ...]

    def all_divisible_by(self, p: int) -> bool:
        return all(c % p == 0 for c in self.coeffs)

    def is_constant(self) -> bool:
        return len(set(self.coeffs)) == 1

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*g^{i}")
        return " + ".join(parts) or "0"


def cyclic_cayley_invariant(w: Word, k: int) -> CyclicVector:
    """Each y-run of exponent m adds m at ``g^(x-exponent so far)`` modulo k."""
    if k < 1:
        raise ValueError("k must be positive")
    coeffs = [0] * k
    prefix = 0
    for g, e in w.runs:
        if g == "x":
            prefix += e
        else:
            coeffs[prefix % k] += e
    return CyclicVector(k, tuple(coeffs))


def klein_invariant(w: Word) -> int:
    """Signed quarter-length of the image in ``Z/2 * Z/2`` (sign from the first letter)."""
    if w.exp_x % 2 or w.exp_y % 2:
        raise InapplicableTest("exponent sums must both be even")
    stack: list[str] = []
    for g, e in w.runs:
        if e % 2 == 0:
            continue
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    n = len(stack)
    if n % 4:
        raise VerificationError(f"image length {n} is not a multiple of 4")
    if n == 0:
        return 0
    return n // 4 if stack[0] == "x" else -(n // 4)
