"""Polyomino regions, their boundary words, bisections and tilings.

A region is a finite set of unit cells ``(i, j)``, cell ``(i, j)`` being the
square with lower-left corner ``(i, j)``. Valid regions are nonempty, edge
connected and simply connected with no pinch points. Boundary words are read
clockwise, so the winding invariant of a boundary word is minus the region's
cell polynomial (shifted so the base point sits at the origin).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import (
    BaseNotOnBoundary,
    EmptyRegion,
    NotConnected,
    NotSimplyConnected,
    NotTranslateBisection,
    OddCellCount,
    RegionError,
    ResourceExceeded,
    VerificationError,
)
from .invariant import winding_invariant
from .laurent import LPoly, exact_divide
from .words import Word

Cell = tuple[int, int]
_NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _connected(cells: frozenset[Cell]) -> bool:
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    todo = [start]
    while todo:
        i, j = todo.pop()
        for di, dj in _NEIGHBOURS:
            n = (i + di, j + dj)
            if n in cells and n not in seen:
                seen.add(n)
                todo.append(n)
    return len(seen) == len(cells)


def _complement_connected(cells: frozenset[Cell]) -> bool:
    """Whether the complement, inside a one-cell margin, is a single edge-connected piece."""
    xs = [i for i, _ in cells]
    ys = [j for _, j in cells]
    lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    outside = {
        (i, j)
        for i in range(lo_x, hi_x + 1)
        for j in range(lo_y, hi_y + 1)
        if (i, j) not in cells
    }
    start = (lo_x, lo_y)
    seen = {start}
    todo = [start]
    while todo:
        i, j = todo.pop()
        for di, dj in _NEIGHBOURS:
            n = (i + di, j + dj)
            if n in outside and n not in seen:
                seen.add(n)
                todo.append(n)
    return len(seen) == len(outside)


def region_problem(cells: Iterable[Cell]) -> RegionError | None:
    cells = frozenset(cells)
    if not cells:
        return EmptyRegion("region has no cells")
    if not _connected(cells):
        return NotConnected("region is not edge-connected")
    if not _complement_connected(cells):
        return NotSimplyConnected("region has a hole or a pinch point")
    return None


@dataclass(frozen=True)
class Region:
    cells: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset((int(i), int(j)) for i, j in self.cells))
        err = region_problem(self.cells)
        if err:
            raise err

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    def polynomial(self) -> LPoly:
        return LPoly({c: 1 for c in self.cells})

    def translate(self, di: int, dj: int) -> "Region":
        return Region(frozenset((i + di, j + dj) for i, j in self.cells))

    def normalized(self) -> "Region":
        mi = min(i for i, _ in self.cells)
        mj = min(j for _, j in self.cells)
        return self.translate(-mi, -mj)

    def default_base(self) -> tuple[int, int]:
        """Lower-left corner of the leftmost, then lowest, cell."""
        return min(self.cells)

    def to_text(self) -> str:
        return cells_to_text(self.cells)


def cells_to_text(cells: Iterable[Cell]) -> str:
    cells = set(cells)
    xs = [i for i, _ in cells]
    ys = [j for _, j in cells]
    lines = []
    for j in range(max(ys), min(ys) - 1, -1):
        lines.append("".join("#" if (i, j) in cells else "." for i in range(min(xs), max(xs) + 1)))
    return "\n".join(lines)


def parse_region(text: str) -> Region:
    """``#`` marks a cell; the last line is row 0 and the first column is x = 0."""
    lines = [ln.rstrip() for ln in text.strip("\n").splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    cells = set()
    for row, line in enumerate(reversed(lines)):
        for col, ch in enumerate(line):
            if ch == "#":
                cells.add((col, row))
            elif ch not in ". ":
                raise RegionError(f"unexpected character {ch!r} in region")
    return Region(frozenset(cells))


def region_from_word(w: Word, base: tuple[int, int] = (0, 0)) -> Region:
    """The region whose clockwise boundary from ``base`` is w (cells where the winding is -1)."""
    p = winding_invariant(w)
    if any(c != -1 for _, c in p.items()):
        raise RegionError("word does not bound a region clockwise")
    return Region(frozenset((i + base[0], j + base[1]) for (i, j), _ in p.items()))


# ---------------------------------------------------------------------------
# boundary words


def _clockwise_edges(cells: frozenset[Cell]) -> dict[Cell, tuple[Cell, str]]:
    """Boundary edges, keyed by their starting vertex, oriented with the region on the right."""
    edges: dict[tuple[Cell, Cell], str] = {}
    for i, j in cells:
        for a, b, letter in (
            ((i, j), (i, j + 1), "y"),
            ((i, j + 1), (i + 1, j + 1), "x"),
            ((i + 1, j + 1), (i + 1, j), "Y"),
            ((i + 1, j), (i, j), "X"),
        ):
            if (b, a) in edges:
                del edges[(b, a)]
            else:
                edges[(a, b)] = letter
    out: dict[Cell, tuple[Cell, str]] = {}
    for (a, b), letter in edges.items():
        if a in out:
            raise NotSimplyConnected("boundary passes a vertex twice")
        out[a] = (b, letter)
    return out


def boundary_vertices(r: Region) -> list[tuple[int, int]]:
    return sorted(_clockwise_edges(r.cells))


def boundary_word(r: Region, base: tuple[int, int] | None = None) -> Word:
    edges = _clockwise_edges(r.cells)
    if base is None:
        base = r.default_base()
    base = (int(base[0]), int(base[1]))
    if base not in edges:
        raise BaseNotOnBoundary(f"{base} is not a boundary vertex")
    letters = []
    v = base
    while True:
        v, letter = edges[v]
        letters.append(letter)
        if v == base:
            break
    return Word.parse("".join(letters))


# ---------------------------------------------------------------------------
# the eight symmetries of the square lattice, acting on cells

_MATRICES: dict[str, tuple[int, int, int, int]] = {
    "id": (1, 0, 0, 1),
    "rot90": (0, -1, 1, 0),
    "rot180": (-1, 0, 0, -1),
    "rot270": (0, 1, -1, 0),
    "flip_x": (-1, 0, 0, 1),
    "flip_y": (1, 0, 0, -1),
    "diag": (0, 1, 1, 0),
    "antidiag": (0, -1, -1, 0),
}
TRANSFORMS = tuple(_MATRICES)
_INVERSE = {"rot90": "rot270", "rot270": "rot90"}


def transform_cell(name: str, c: Cell) -> Cell:
    a, b, cc, d = _MATRICES[name]
    x, y = 2 * c[0] + 1, 2 * c[1] + 1
    return ((a * x + b * y - 1) // 2, (cc * x + d * y - 1) // 2)


def transform_cells(name: str, cells: Iterable[Cell]) -> frozenset[Cell]:
    return frozenset(transform_cell(name, c) for c in cells)


def _canonical(cells: Iterable[Cell]) -> frozenset[Cell]:
    cells = list(cells)
    mi = min(i for i, _ in cells)
    mj = min(j for _, j in cells)
    return frozenset((i - mi, j - mj) for i, j in cells)


# ---------------------------------------------------------------------------
# bisections


@dataclass(frozen=True)
class Bisection:
    """``region = tile + (transform(tile) + offset)`` as a disjoint union."""

    tile: Region
    transform: str
    offset: tuple[int, int]

    def partner(self) -> frozenset[Cell]:
        di, dj = self.offset
        return frozenset((i + di, j + dj) for i, j in transform_cells(self.transform, self.tile.cells))


def translate_bisections(r: Region) -> list[Bisection]:
    """Splittings into two translates, found by dividing the cell polynomial by ``1 + X^k Y^l``."""
    if len(r) % 2:
        raise OddCellCount(f"{len(r)} cells")
    p = r.polynomial()
    wx, wy = p.widths()
    out = []
    for k in range(0, wx + 1):
        for l in range(-wy, wy + 1):
            if k == 0 and l <= 0:
                continue
            q = exact_divide(p, LPoly({(0, 0): 1, (k, l): 1}))
            if q is None or any(c != 1 for _, c in q.items()):
                continue
            cells = frozenset(e for e, _ in q.items())
            if region_problem(cells) is not None:
                continue
            out.append(Bisection(Region(cells), "id", (k, l)))
    return out


def _solve_pairing(
    cells: frozenset[Cell], phi: Callable[[Cell], Cell], phi_inv: Callable[[Cell], Cell], max_free: int
) -> list[frozenset[Cell]]:
    """All ``t`` with ``cells = t + phi(t)`` disjointly."""
    forced: dict[Cell, int] = {}  # 0 = in t, 1 = in phi(t)
    cycles: list[list[Cell]] = []
    done: set[Cell] = set()
    for c in sorted(cells):
        if c in done:
            continue
        # walk back to the start of the phi-chain; phi is a bijection, so a walk
        # that stays inside the finite set must come back to c
        start, closed = c, False
        while True:
            prev = phi_inv(start)
            if prev == c:
                closed = True
                break
            if prev not in cells:
                break
            start = prev
        if closed:
            cyc = [c]
            nxt = phi(c)
            while nxt != c:
                cyc.append(nxt)
                nxt = phi(nxt)
            done.update(cyc)
            if len(cyc) % 2:
                return []
            cycles.append(cyc)
            continue
        chain = [start]
        nxt = phi(start)
        while nxt in cells:
            chain.append(nxt)
            nxt = phi(nxt)
        done.update(chain)
        if len(chain) % 2:
            return []
        for idx, cell in enumerate(chain):
            forced[cell] = idx % 2
    if len(cycles) > max_free:
        raise ResourceExceeded(f"{len(cycles)} free cycles in symmetry search")
    base = frozenset(c for c, side in forced.items() if side == 0)
    out = []
    for choice in product((0, 1), repeat=len(cycles)):
        t = set(base)
        for cyc, ch in zip(cycles, choice):
            t.update(cyc[ch::2])
        out.append(frozenset(t))
    return out


def symmetry_bisections(r: Region, max_free_cycles: int = 16) -> list[Bisection]:
    """Splittings into a tile and an image of it under a lattice symmetry plus a translation.

    Solutions realising the same unordered pair of pieces with the same symmetry (or its
    inverse) are reported once.
    """
    if len(r) % 2:
        raise OddCellCount(f"{len(r)} cells")
    cells = r.cells
    out = []
    seen = set()
    for name in TRANSFORMS:
        inv = _INVERSE.get(name, name)
        image = transform_cells(name, cells)
        offsets = sorted({(c[0] - g[0], c[1] - g[1]) for c in cells for g in image})
        offsets.sort(key=lambda v: (v[0] < 0 or (v[0] == 0 and v[1] < 0), abs(v[0]) + abs(v[1]), v))
        for di, dj in offsets:
            if name == "id" and (di, dj) == (0, 0):
                continue

            def phi(c, name=name, di=di, dj=dj):
                i, j = transform_cell(name, c)
                return (i + di, j + dj)

            def phi_inv(c, inv=inv, di=di, dj=dj):
                return transform_cell(inv, (c[0] - di, c[1] - dj))

            for t in _solve_pairing(cells, phi, phi_inv, max_free_cycles):
                if not t or region_problem(t) is not None:
                    continue
                other = cells - t
                key = (frozenset((t, other)), frozenset((name, inv)))
                if key in seen:
                    continue
                seen.add(key)
                out.append(Bisection(Region(t), name, (di, dj)))
    return out


# ---------------------------------------------------------------------------
# free-group identities from translate bisections


def conjugator(u: Word, g: Word) -> Word | None:
    """Some v with ``v u v^-1 == g`` in the free group, or None."""
    cu, u0 = u.cyclic_decomposition()
    cg, g0 = g.cyclic_decomposition()
    if len(u0) != len(g0):
        return None
    letters = list(u0.letters())
    n = len(letters)
    for s in range(max(n, 1)):
        alpha = Word(tuple(letters[:s]))
        if alpha.inverse() * u0 * alpha == g0:
            return cg * alpha.inverse() * cu.inverse()
    return None


def primitive_root(u: Word) -> Word:
    """The generator of the centralizer of a nontrivial u."""
    c, core = u.cyclic_decomposition()
    letters = list(core.letters())
    n = len(letters)
    for d in range(1, n + 1):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return c * Word(tuple(letters[:d])) * c.inverse()
    return u


@dataclass(frozen=True)
class SquaresIdentity:
    """``a^2 b^2`` freely equals the boundary word of the region read from ``base``."""

    a: Word
    b: Word
    u: Word
    v: Word
    base: tuple[int, int]
    region_word: Word


def two_squares_identity(r: Region, b: Bisection) -> SquaresIdentity:
    """Boundary word of r as ``u v u v^-1 = (uv)^2 v^-2`` with u the boundary word of one piece."""
    if b.transform != "id":
        raise NotTranslateBisection("only translate bisections give this identity")
    pieces = [b.tile.cells, b.partner()]
    if pieces[0] | pieces[1] != r.cells or pieces[0] & pieces[1]:
        raise NotTranslateBisection("pieces do not partition the region")
    outer = _clockwise_edges(r.cells)
    bases = [r.default_base()] + [v for v in sorted(outer) if v != r.default_base()]
    for base in bases:
        for piece in pieces:
            tile = Region(piece)
            if base not in _clockwise_edges(tile.cells):
                continue
            wr = boundary_word(r, base)
            u = boundary_word(tile, base)
            v = conjugator(u, u.inverse() * wr)
            if v is None:
                continue
            # v is determined up to the centralizer of u; keep the shortest square root
            z = primitive_root(u) if u else Word()
            v = min((v * z**k for k in range(-3, 4)), key=lambda c: (len(u * c), len(c)))
            a, bw = u * v, v.inverse()
            if a**2 * bw**2 != wr:
                raise VerificationError("two-squares identity failed to reduce")
            return SquaresIdentity(a, bw, u, v, base, wr)
    raise VerificationError("no base point gave a two-squares identity")


# ---------------------------------------------------------------------------
# tilings


@dataclass(frozen=True)
class Placement:
    tile_index: int
    transform: str
    cells: frozenset[Cell]


@dataclass(frozen=True)
class TilingReport:
    tilings: tuple[tuple[Placement, ...], ...]
    counts: tuple[tuple[int, ...], ...]
    truncated: bool = False

    @property
    def counts_invariant(self) -> bool:
        return len(set(self.counts)) <= 1


def _orientations(tile: frozenset[Cell], translates_only: bool) -> list[tuple[str, frozenset[Cell]]]:
    names = ("id",) if translates_only else TRANSFORMS
    out, seen = [], set()
    for name in names:
        shape = _canonical(transform_cells(name, tile))
        if shape not in seen:
            seen.add(shape)
            out.append((name, shape))
    return out


def tilings_enumerate(
    r: Region,
    tiles: Sequence[Region | Iterable[Cell]],
    translates_only: bool = False,
    max_tilings: int = 100000,
) -> TilingReport:
    """All tilings of r by copies of the given tiles, by filling the leftmost-lowest free cell."""
    shapes = []
    for idx, t in enumerate(tiles):
        cells = t.cells if isinstance(t, Region) else frozenset(t)
        for name, shape in _orientations(cells, translates_only):
            anchor = min(shape)
            shapes.append((idx, name, [(i - anchor[0], j - anchor[1]) for i, j in shape]))
    free = set(r.cells)
    chosen: list[Placement] = []
    found: list[tuple[Placement, ...]] = []
    truncated = False

    def fill() -> None:
        nonlocal truncated
        if truncated:
            return
        if not free:
            found.append(tuple(chosen))
            if len(found) >= max_tilings:
                truncated = True
            return
        ci, cj = min(free)
        for idx, name, offs in shapes:
            cells = [(ci + a, cj + b) for a, b in offs]
            if all(c in free for c in cells):
                for c in cells:
                    free.discard(c)
                chosen.append(Placement(idx, name, frozenset(cells)))
                fill()
                chosen.pop()
                free.update(cells)

    fill()
    counts = []
    for tiling in found:
        vec = [0] * len(tiles)
        for p in tiling:
            vec[p.tile_index] += 1
        counts.append(tuple(vec))
    return TilingReport(tuple(found), tuple(counts), truncated)


# ---------------------------------------------------------------------------
# normal roots


def root_divisibility(region_word: Word, root: Word) -> bool:
    """Necessary condition for ``region_word`` to lie in the normal closure of ``root``."""
    p = winding_invariant(region_word)
    q = winding_invariant(root)
    if not q:
        return not p
    return exact_divide(p, q) is not None


def _connected_subsets(cells: frozenset[Cell], max_size: int) -> set[frozenset[Cell]]:
    """Connected subsets of ``cells`` of size at most ``max_size``, up to translation."""
    shapes: set[frozenset[Cell]] = set()
    seen: set[frozenset[Cell]] = set()
    frontier = deque(frozenset([c]) for c in cells)
    while frontier:
        s = frontier.popleft()
        if s in seen:
            continue
        seen.add(s)
        shapes.add(_canonical(s))
        if len(s) == max_size:
            continue
        for i, j in s:
            for di, dj in _NEIGHBOURS:
                n = (i + di, j + dj)
                if n in cells and n not in s:
                    bigger = s | {n}
                    if bigger not in seen:
                        frontier.append(bigger)
    return shapes


@dataclass(frozen=True)
class NormalRoots:
    roots: tuple[tuple[Word, bool], ...]
    truncated: bool


def normal_root_candidates(r: Region, cell_budget: int = 12) -> NormalRoots:
    """Boundary words of tiles that tile r by translates alone, with the divisibility check."""
    n = len(r)
    wr = boundary_word(r)
    limit = min(cell_budget, n)
    truncated = n > cell_budget
    sizes = {s for s in range(1, limit + 1) if n % s == 0}
    shapes = [s for s in _connected_subsets(r.cells, limit) if len(s) in sizes]
    if truncated:
        shapes.append(_canonical(r.cells))
    shapes.sort(key=lambda s: (-len(s), sorted(s)))
    out = []
    for shape in shapes:
        if region_problem(shape) is not None:
            continue
        rep = tilings_enumerate(r, [Region(shape)], translates_only=True, max_tilings=1)
        if not rep.tilings:
            continue
        root = boundary_word(Region(shape))
        out.append((root, root_divisibility(wr, root)))
    return NormalRoots(tuple(out), truncated)
