"""Freely reduced words in the free group on x and y.

Words are stored run-length compressed: a tuple of ``(generator, exponent)``
pairs with no zero exponents and no two neighbouring runs on the same
generator. Every constructor reduces, so two ``Word`` objects are equal
exactly when they name the same element of the free group.

Text form: ``x``/``y`` are the generators, ``X``/``Y`` their inverses, and
an atom may carry an exponent, e.g. ``x^3 y X^-2``. Whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ExponentOverflow, WordSyntaxError

MAX_EXPONENT = 10**6

_ATOM = re.compile(r"([xyXY])(?:\^(-?\d+))?")


def _reduce_runs(runs: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    stack: list[list] = []
    for g, e in runs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class Word:
    runs: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "runs", _reduce_runs(self.runs))

    # construction -------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Word":
        s = "".join(text.split())
        if s in ("", "1", "e"):
            return cls()
        runs = []
        pos = 0
        while pos < len(s):
            m = _ATOM.match(s, pos)
            if not m:
                raise WordSyntaxError(f"unexpected {s[pos]!r} at position {pos} in {text!r}")
            letter, exp = m.group(1), m.group(2)
            e = 1 if exp is None else int(exp)
            if abs(e) > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            if letter in "XY":
                e = -e
            runs.append((letter.lower(), e))
            pos = m.end()
        return cls(tuple(runs))

    @classmethod
    def gen(cls, g: str, e: int = 1) -> "Word":
        return cls(((g, e),))

    # group operations ---------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.runs + other.runs)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0 or not self.runs:
            return Word()
        # conjugate out the non-cyclic part so the middle repeats without cancellation
        c, core = self.cyclic_decomposition()
        body = Word(core.runs * n)
        return c * body * c.inverse()

    def cyclic_decomposition(self) -> tuple["Word", "Word"]:
        """Return ``(c, core)`` with ``self == c * core * c^-1`` and core cyclically reduced."""
        runs = list(self.runs)
        prefix: list[tuple[str, int]] = []
        while len(runs) >= 2 and runs[0][0] == runs[-1][0]:
            g, a = runs[0]
            b = runs[-1][1]
            if (a > 0) == (b > 0):
                break
            k = min(abs(a), abs(b))
            s = 1 if a > 0 else -1
            prefix.append((g, s * k))
            runs[0] = (g, a - s * k)
            runs[-1] = (g, b + s * k)
            runs = [r for r in runs if r[1] != 0]
        return Word(tuple(prefix)), Word(tuple(runs))

    # inspection ---------------------------------------------------------

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def letters(self) -> Iterator[tuple[str, int]]:
        """Yield ``(generator, +1 or -1)`` one letter at a time."""
        for g, e in self.runs:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    @property
    def exp_x(self) -> int:
        return sum(e for g, e in self.runs if g == "x")

    @property
    def exp_y(self) -> int:
        return sum(e for g, e in self.runs if g == "y")

    @property
    def exponents(self) -> tuple[int, int]:
        return self.exp_x, self.exp_y

    def in_commutator_subgroup(self) -> bool:
        return self.exponents == (0, 0)

    def __str__(self) -> str:
        if not self.runs:
            return "1"
        out = []
        for g, e in self.runs:
            letter = g if e > 0 else g.upper()
            out.append(letter if abs(e) == 1 else f"{letter}^{abs(e)}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


X = Word.gen("x")
Y = Word.gen("y")
ONE = Word()


def w(text: str) -> Word:
    return Word.parse(text)


def as_word(u) -> Word:
    return u if isinstance(u, Word) else Word.parse(u)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def simple_commutator(parts: Sequence[Word]) -> Word:
    """Right-normed ``[a1, [a2, [..., [a_{k-1}, a_k]]]]``."""
    if len(parts) < 2:
        raise ValueError("a simple commutator needs at least two entries")
    acc = parts[-1]
    for a in reversed(parts[:-1]):
        acc = commutator(a, acc)
    return acc


def engel(n: int) -> Word:
    """``e_1 = [y, x]`` and ``e_{n+1} = [y, e_n]``."""
    if n < 1:
        raise ValueError("Engel words start at n = 1")
    e = commutator(Y, X)
    for _ in range(n - 1):
        e = commutator(Y, e)
    return e


def basic_chain(l: int, s: int) -> Word:
    """Commute ``[x, y]`` with y (inverted each time) s times, then with x l times."""
    u = commutator(X, Y)
    for _ in range(s):
        u = commutator(u.inverse(), Y)
    for _ in range(l):
        u = commutator(u.inverse(), X)
    return u


def conj_gen(n: int, m: int, c: int = 1) -> Word:
    """``x^n y^m [x,y]^c y^-m x^-n``: the word whose winding polynomial is ``c X^n Y^m``."""
    t = Word((("x", n), ("y", m)))
    return t * commutator(X, Y) ** c * t.inverse()


def staircase(m: int) -> Word:
    """``x^m y^m (x^-1 y^-1)^m``."""
    return Word((("x", m), ("y", m))) * w("XY") ** m


@dataclass(frozen=True)
class Endomorphism:
    """The endomorphism of the free group fixed by the images of x and y."""

    img_x: Word
    img_y: Word

    def __call__(self, u: Word) -> Word:
        images = {"x": self.img_x, "y": self.img_y}
        runs: list[tuple[str, int]] = []
        for g, e in u.runs:
            runs.extend((images[g] ** e).runs)
        return Word(tuple(runs))

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Abelianization; columns are the exponent vectors of the images."""
        return (
            (self.img_x.exp_x, self.img_y.exp_x),
            (self.img_x.exp_y, self.img_y.exp_y),
        )

    def __str__(self) -> str:
        return f"x -> {self.img_x}, y -> {self.img_y}"
