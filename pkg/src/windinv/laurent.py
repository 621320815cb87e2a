"""Integer Laurent polynomials in X and Y.

An ``LPoly`` is an immutable sparse map from exponent pairs ``(i, j)`` to
nonzero integers. Text form looks like ``1 + X^2*Y^-1 - 2*Y^-1`` (the ``*``
is optional); JSON form is a list of ``[i, j, c]`` triples.

Ordering conventions used throughout: the *graded-lex* key of a monomial is
``(i + j, i, j)``, applied after shifting the polynomial so its minimal
exponents are zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping

from .errors import NonUnimodular, PolySyntaxError

Exp = tuple[int, int]


def grlex_key(e: Exp) -> tuple[int, int, int]:
    return (e[0] + e[1], e[0], e[1])


class LPoly:
    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]] | None = None):
        t: dict[Exp, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if c:
                    e = (int(e[0]), int(e[1]))
                    t[e] = t.get(e, 0) + int(c)
        self._t = {e: c for e, c in t.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "LPoly":
        return cls({(i, j): c})

    @classmethod
    def constant(cls, c: int) -> "LPoly":
        return cls({(0, 0): c})

    @classmethod
    def coerce(cls, other) -> "LPoly":
        if isinstance(other, LPoly):
            return other
        if isinstance(other, int):
            return cls.constant(other)
        return NotImplemented

    # container-ish ------------------------------------------------------

    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __getitem__(self, e: Exp) -> int:
        return self._t.get(e, 0)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        other = LPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # ring operations ----------------------------------------------------

    def __add__(self, other) -> "LPoly":
        other = LPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            t[e] = t.get(e, 0) + c
        return LPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "LPoly":
        return LPoly({e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> "LPoly":
        other = LPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LPoly":
        return LPoly.coerce(other) - self

    def __mul__(self, other) -> "LPoly":
        if isinstance(other, int):
            return LPoly({e: c * other for e, c in self._t.items()})
        other = LPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t: dict[Exp, int] = {}
        for (a, b), c in self._t.items():
            for (p, q), d in other._t.items():
                k = (a + p, b + q)
                t[k] = t.get(k, 0) + c * d
        return LPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LPoly":
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            ((i, j), c), = self._t.items()
            return LPoly.monomial(-i * -n, -j * -n, c ** (-n))
        out = LPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, di: int, dj: int) -> "LPoly":
        """Multiply by ``X^di Y^dj``."""
        return LPoly({(i + di, j + dj): c for (i, j), c in self._t.items()})

    # evaluation and shape -----------------------------------------------

    def evaluate(self, x, y):
        total = 0
        for (i, j), c in self._t.items():
            xi = x**i if i >= 0 else Fraction(1, x ** (-i)) if isinstance(x, int) else x**i
            yj = y**j if j >= 0 else Fraction(1, y ** (-j)) if isinstance(y, int) else y**j
            total += c * xi * yj
        return total

    def area(self) -> int:
        """Value at ``X = Y = 1``."""
        return sum(self._t.values())

    def support(self) -> list[Exp]:
        return sorted(self._t)

    def min_exponents(self) -> Exp:
        if not self._t:
            return (0, 0)
        return (min(i for i, _ in self._t), min(j for _, j in self._t))

    def max_exponents(self) -> Exp:
        if not self._t:
            return (0, 0)
        return (max(i for i, _ in self._t), max(j for _, j in self._t))

    def widths(self) -> Exp:
        (a, b), (c, d) = self.min_exponents(), self.max_exponents()
        return (c - a, d - b)

    def normalized(self) -> tuple["LPoly", Exp]:
        """Shift so the minimal exponents are zero; returns the poly and the shift applied."""
        a, b = self.min_exponents()
        return self.shift(-a, -b), (-a, -b)

    def is_unit(self) -> bool:
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def content(self) -> int:
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def leading(self) -> tuple[Exp, int]:
        """Graded-lex leading term, exponents taken as they are (not shifted)."""
        e = max(self._t, key=grlex_key)
        return e, self._t[e]

    def substitute(self, fx: "LPoly", fy: "LPoly") -> "LPoly":
        """Ring map sending X to ``fx`` and Y to ``fy`` (both must be units if exponents go negative)."""
        out = LPoly()
        for (i, j), c in self._t.items():
            out = out + (fx**i) * (fy**j) * c
        return out

    def swap_xy(self) -> "LPoly":
        return LPoly({(j, i): c for (i, j), c in self._t.items()})

    def content_free(self) -> "LPoly":
        g = self.content()
        return self if g <= 1 else LPoly({e: c // g for e, c in self._t.items()})

    # text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (i, j) in sorted(self._t, key=lambda e: (e[0] + e[1], e[0], e[1])):
            c = self._t[(i, j)]
            mono = []
            if i:
                mono.append("X" if i == 1 else f"X^{i}")
            if j:
                mono.append("Y" if j == 1 else f"Y^{j}")
            m = "*".join(mono)
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LPoly({str(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self._t.items())]

    @classmethod
    def from_json(cls, data) -> "LPoly":
        try:
            return cls({(int(i), int(j)): int(c) for i, j, c in data})
        except (TypeError, ValueError) as exc:
            raise PolySyntaxError(f"bad polynomial JSON: {data!r}") from exc

    @classmethod
    def parse(cls, text: str) -> "LPoly":
        return parse_poly(text)


X = LPoly.monomial(1, 0)
Y = LPoly.monomial(0, 1)
ONE = LPoly.constant(1)
ZERO = LPoly()

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+)?\s*\*?\s*
        (?P<mono>(?:[XY](?:\^\(?-?\d+\)?)?\s*\*?\s*)*)""",
    re.VERBOSE,
)
_FACTOR = re.compile(r"([XY])(?:\^\(?(-?\d+)\)?)?")


def parse_poly(text: str) -> LPoly:
    s = text.strip()
    if not s:
        raise PolySyntaxError("empty polynomial")
    terms: dict[Exp, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"cannot parse {s[pos:]!r}")
        sign, coef, mono = m.group("sign"), m.group("coef"), m.group("mono").strip()
        if sign is None and not first:
            raise PolySyntaxError(f"missing operator before {s[pos:]!r}")
        if coef is None and not mono:
            raise PolySyntaxError(f"empty term in {text!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        i = j = 0
        for f in _FACTOR.finditer(mono):
            e = int(f.group(2)) if f.group(2) is not None else 1
            if f.group(1) == "X":
                i += e
            else:
                j += e
        terms[(i, j)] = terms.get((i, j), 0) + c
        pos = m.end()
        first = False
    return LPoly(terms)


def as_poly(p) -> LPoly:
    if isinstance(p, LPoly):
        return p
    if isinstance(p, int):
        return LPoly.constant(p)
    if isinstance(p, str):
        return parse_poly(p)
    return LPoly.from_json(p)


# ---------------------------------------------------------------------------
# division and change of variables


def _divide_polynomial(p: dict[Exp, int], q: dict[Exp, int]) -> dict[Exp, int] | None:
    """Exact division in Z[X, Y] (nonnegative exponents) by graded-lex long division."""
    (qi, qj) = max(q, key=grlex_key)
    qc = q[(qi, qj)]
    rem = dict(p)
    quot: dict[Exp, int] = {}
    while rem:
        (ri, rj) = max(rem, key=grlex_key)
        rc = rem[(ri, rj)]
        di, dj = ri - qi, rj - qj
        if di < 0 or dj < 0 or rc % qc:
            return None
        t = rc // qc
        quot[(di, dj)] = t
        for (a, b), c in q.items():
            k = (a + di, b + dj)
            v = rem.get(k, 0) - t * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quot


def exact_divide(p: LPoly, q: LPoly) -> LPoly | None:
    """Return ``r`` with ``q * r == p`` in the Laurent ring, or None if q does not divide p."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return LPoly()
    pw, qw = p.widths(), q.widths()
    if qw[0] > pw[0] or qw[1] > pw[1]:
        return None
    pn, (pa, pb) = p.normalized()
    qn, (qa, qb) = q.normalized()
    r = _divide_polynomial(pn.terms, qn.terms)
    if r is None:
        return None
    # p = X^-pa.. * pn and q = X^-qa.. * qn
    return LPoly(r).shift(qa - pa, qb - pb)


def divides(q: LPoly, p: LPoly) -> bool:
    return exact_divide(p, q) is not None


def linear_substitute(p: LPoly, u) -> LPoly:
    """Apply ``X^a Y^b -> X^a' Y^b'`` with ``(a', b') = U (a, b)`` for any integer matrix U."""
    (a11, a12), (a21, a22) = u
    return LPoly([((a11 * i + a12 * j, a21 * i + a22 * j), c) for (i, j), c in p.items()])


def unimodular_substitute(p: LPoly, u) -> LPoly:
    """:func:`linear_substitute` restricted to matrices of determinant +-1 (a ring automorphism)."""
    (a11, a12), (a21, a22) = u
    if a11 * a22 - a12 * a21 not in (1, -1):
        raise NonUnimodular(f"matrix {u!r} is not unimodular")
    return linear_substitute(p, u)


def taylor_coefficients(p: LPoly) -> dict[Exp, int]:
    """Coefficients of the normalized polynomial in powers of ``(X-1)`` and ``(Y-1)``.

    Only nonzero coefficients are returned.
    """
    pn, _ = p.normalized()
    stage: dict[Exp, int] = {}
    for (i, j), c in pn.items():
        for a in range(i + 1):
            stage[(a, j)] = stage.get((a, j), 0) + c * comb(i, a)
    out: dict[Exp, int] = {}
    for (a, j), c in stage.items():
        if not c:
            continue
        for b in range(j + 1):
            out[(a, b)] = out.get((a, b), 0) + c * comb(j, b)
    return {e: c for e, c in out.items() if c}


def from_taylor(coeffs: Mapping[Exp, int]) -> LPoly:
    """Inverse of :func:`taylor_coefficients` (up to the normalizing shift)."""
    out = LPoly()
    xm, ym = X - 1, Y - 1
    for (a, b), c in coeffs.items():
        out = out + (xm**a) * (ym**b) * c
    return out


def lowest_taylor_order(p: LPoly) -> int | None:
    t = taylor_coefficients(p)
    return min((a + b for a, b in t), default=None)


def binomial_split(p: LPoly, var: str, d: int) -> tuple[LPoly, LPoly]:
    """Write ``p = (V^d - 1) * q + r`` where V is X or Y and r has V-exponents in ``[0, d)``."""
    if d < 1:
        raise ValueError("d must be positive")
    idx = 0 if var == "X" else 1
    q: dict[Exp, int] = {}
    r: dict[Exp, int] = {}
    for e, c in p.items():
        k = e[idx]
        k0 = k % d
        rest = list(e)
        rest[idx] = k0
        re_ = (rest[0], rest[1])
        r[re_] = r.get(re_, 0) + c
        n = (k - k0) // d
        # V^k - V^k0 = V^k0 (V^(dn) - 1)
        if n > 0:
            rng, sgn = range(n), 1
        elif n < 0:
            rng, sgn = range(n, 0), -1
        else:
            continue
        for s in rng:
            f = list(e)
            f[idx] = k0 + d * s
            fe = (f[0], f[1])
            q[fe] = q.get(fe, 0) + sgn * c
    return LPoly(q), LPoly(r)


def area_parity(p: LPoly) -> int:
    return p.area() % 2


def residue_mod_2_y1_x2(p: LPoly) -> tuple[int, int]:
    """Class of p modulo the ideal generated by 2, Y-1 and X^2-1.

    Returned as ``(c0, c1)`` meaning ``c0 + c1*X`` with ``c0, c1`` in {0, 1}. Exponents
    are used as they are, since ``X^-1 = X`` in the quotient.
    """
    c0 = sum(c for (i, _), c in p.items() if i % 2 == 0) % 2
    c1 = sum(c for (i, _), c in p.items() if i % 2 == 1) % 2
    return (c0, c1)
