import random
import sys
from pathlib import Path

import pytest

from windinv.laurent import LPoly
from windinv.words import Word

ROOT = Path(__file__).resolve().parent


def random_word(rng: random.Random, length: int) -> Word:
    return Word(tuple((rng.choice("xy"), rng.choice((-1, 1))) for _ in range(length)))


def random_derived(rng: random.Random, length: int) -> Word:
    """A random element of the commutator subgroup: a word closed up by its exponent sums."""
    u = random_word(rng, length)
    return u * Word((("y", -u.exp_y), ("x", -u.exp_x)))


def random_poly(rng: random.Random, terms: int = 3, spread: int = 2, coef: int = 3) -> LPoly:
    return LPoly(
        [
            ((rng.randint(-spread, spread), rng.randint(-spread, spread)), rng.randint(-coef, coef))
            for _ in range(terms)
        ]
    )


@pytest.fixture
def rng():
    return random.Random(20240611)
