"""Sublattices of Z^2 and sums of polynomial coefficients over their cosets."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .laurent import LPoly

Vec = tuple[int, int]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def det(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _primitive(v: Vec) -> tuple[Vec, int]:
    g = gcd(v[0], v[1])
    e = (v[0] // g, v[1] // g)
    if e[0] < 0 or (e[0] == 0 and e[1] < 0):
        e = (-e[0], -e[1])
    return e, g


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^2.

    rank 0: ``basis == ()``.
    rank 1: ``basis == ((p, q),)`` with ``p > 0`` or ``p == 0 < q``.
    rank 2: ``basis == ((a, 0), (b, d))`` in Hermite normal form, ``a, d >= 1`` and ``0 <= b < a``.
    """

    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def hnf(cls, a: int, b: int, d: int) -> "Lattice":
        return cls(((a, 0), (b % a, d)))

    @classmethod
    def spanned_by(cls, vectors: Iterable[Vec]) -> "Lattice":
        vecs = [(int(u), int(v)) for u, v in vectors if (u, v) != (0, 0)]
        if not vecs:
            return cls(())
        # Euclid on second coordinates; vectors on the x-axis accumulate into `a`
        pivot: Vec | None = None
        a = 0
        for v in vecs:
            if v[1] == 0:
                a = gcd(a, v[0])
                continue
            if pivot is None:
                pivot = v
                continue
            g, s, t = ext_gcd(pivot[1], v[1])
            new_pivot = (s * pivot[0] + t * v[0], g)
            # the complementary combination has zero second coordinate
            k0, k1 = v[1] // g, pivot[1] // g
            a = gcd(a, k0 * pivot[0] - k1 * v[0])
            pivot = new_pivot
        if pivot is None:
            return cls(((a, 0),))
        if a == 0:
            e, g = _primitive(pivot)
            return cls(((e[0] * g, e[1] * g),))
        b, d = pivot
        if d < 0:
            b, d = -b, -d
        return cls.hnf(a, b, d)

    def index(self) -> int | None:
        if self.rank < 2:
            return None
        return self.basis[0][0] * self.basis[1][1]

    def __contains__(self, v: Vec) -> bool:
        u1, u2 = v
        if self.rank == 0:
            return (u1, u2) == (0, 0)
        if self.rank == 1:
            p, q = self.basis[0]
            if det((p, q), (u1, u2)):
                return False
            return (u1 % p == 0) if p else (u2 % q == 0)
        (a, _), (b, d) = self.basis
        if u2 % d:
            return False
        return (u1 - b * (u2 // d)) % a == 0

    def contains_all(self, vectors: Iterable[Vec]) -> bool:
        return all(v in self for v in vectors)

    def coset_key(self, v: Vec):
        """A canonical label of ``v + L``."""
        u1, u2 = v
        if self.rank == 0:
            return (u1, u2)
        if self.rank == 1:
            (e, c) = _primitive(self.basis[0])
            p, q = e
            _, s, t = ext_gcd(p, q)
            # f = (-t, s) completes e to a unimodular basis: det(e, f) = 1
            f = (-t, s)
            beta = det(e, (u1, u2))
            r1, r2 = u1 - beta * f[0], u2 - beta * f[1]
            alpha = r1 // p if p else r2 // q
            return (beta, alpha % c)
        (a, _), (b, d) = self.basis
        j = u2 % d
        t = (u2 - j) // d
        return ((u1 - b * t) % a, j)

    def coset_representatives(self) -> Iterator[Vec]:
        if self.rank < 2:
            raise ValueError("only finite-index lattices have finitely many cosets")
        (a, _), (_, d) = self.basis
        for i in range(a):
            for j in range(d):
                yield (i, j)

    def __str__(self) -> str:
        return "<" + ", ".join(f"({p},{q})" for p, q in self.basis) + ">"

    def to_json(self):
        return {"rank": self.rank, "basis": [list(v) for v in self.basis]}


def hnf_lattices(n: int) -> Iterator[Lattice]:
    """All sublattices of index n, in Hermite normal form."""
    for a in divisors(n):
        d = n // a
        for b in range(a):
            yield Lattice(((a, 0), (b, d)))


def coset_sums(p: LPoly, lat: Lattice) -> dict:
    sums: dict = {}
    for e, c in p.items():
        k = lat.coset_key(e)
        sums[k] = sums.get(k, 0) + c
    return sums


def all_coset_sums_equal(p: LPoly, lat: Lattice, value: int) -> bool:
    """Whether every coset of ``lat`` carries coefficient sum ``value`` (empty cosets sum to 0)."""
    sums = coset_sums(p, lat)
    if lat.rank < 2:
        return value == 0 and all(s == 0 for s in sums.values())
    if value == 0:
        return all(s == 0 for s in sums.values())
    return len(sums) == lat.index() and all(s == value for s in sums.values())


def all_coset_sums_parity(p: LPoly, lat: Lattice, parity: int) -> bool:
    sums = coset_sums(p, lat)
    if lat.rank < 2:
        return parity == 0 and all(s % 2 == 0 for s in sums.values())
    if parity == 0:
        return all(s % 2 == 0 for s in sums.values())
    return len(sums) == lat.index() and all(s % 2 == 1 for s in sums.values())


def rank_one_candidates(points: list[Vec], must_contain: Iterable[Vec] = ()) -> Iterator[Lattice]:
    """Rank-one lattices that put ``points[0]`` in the same coset as some other point.

    Any rank-one lattice in which the coset of ``points[0]`` holds a second point
    is generated by a divisor of one of the differences.
    """
    must = [v for v in must_contain if v != (0, 0)]
    seen = set()
    if not points:
        return
    p0 = points[0]
    for p1 in points[1:]:
        diff = (p1[0] - p0[0], p1[1] - p0[1])
        e, g = _primitive(diff)
        for t in divisors(g):
            lat = Lattice(((e[0] * t, e[1] * t),))
            if lat in seen:
                continue
            seen.add(lat)
            if lat.contains_all(must):
                yield lat
