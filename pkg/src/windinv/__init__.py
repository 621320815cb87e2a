"""Winding-number invariants for the free metabelian group of rank two."""

__version__ = "0.1.0"

from .words import Word, commutator, engel
from .laurent import LPoly, parse_poly
from .invariant import winding_invariant, word_from_polynomial

__all__ = [
    "Word",
    "LPoly",
    "commutator",
    "engel",
    "parse_poly",
    "winding_invariant",
    "word_from_polynomial",
]
