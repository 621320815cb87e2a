import random

import pytest

from windinv.errors import NonZeroExponents, NotProductOfSquares, OddExponents
from windinv.invariant import winding_invariant, word_from_polynomial
from windinv.laurent import LPoly, parse_poly
from windinv.metabelian import (
    SquaresStatus,
    augmentation_split,
    cl2_decomposition,
    engel_verbal_obstruction,
    equal_mod_second_derived,
    five_squares_decompose,
    parity_lattice,
    square_length_bounds,
    three_squares_decide_partial,
)
from windinv.words import Word, commutator, engel, simple_commutator, w

from conftest import random_derived, random_poly, random_word

STEP_ONE = parse_poly("X^-2*Y^-2 + X^2*Y^2 + X^-1 + X + X^-1*Y + X*Y^-1")


def test_augmentation_split():
    rng = random.Random(41)
    xm, ym = parse_poly("X - 1"), parse_poly("Y - 1")
    for _ in range(100):
        d = random_poly(rng, terms=5, spread=4, coef=5)
        a, b, c = augmentation_split(d)
        assert a * xm + b * ym + c == d
        assert c == d.area()
        assert all(i == 0 for i, _ in b.support())


@pytest.mark.parametrize("text", ["5", "2", "X^2*Y", "3 - X", "0", "-4 + X^-3*Y^2"])
def test_cl2_examples(text):
    p = parse_poly(text)
    pair = cl2_decomposition(p)
    assert winding_invariant(pair.word()) == p


def test_cl2_random():
    rng = random.Random(42)
    for _ in range(500):
        p = random_poly(rng, terms=rng.randint(1, 6), spread=6, coef=9)
        assert winding_invariant(cl2_decomposition(p).word()) == p


def test_three_squares_examples():
    assert three_squares_decide_partial(word_from_polynomial(STEP_ONE)).status is SquaresStatus.OBSTRUCTED
    r = three_squares_decide_partial(w("xyXY"))
    assert r.status is SquaresStatus.DECOMPOSED and r.reason == "odd-area"
    z = word_from_polynomial(parse_poly("1 + X"))
    r = three_squares_decide_partial(z)
    assert r.status is SquaresStatus.DECOMPOSED and r.reason == "residue-one-plus-x"
    assert equal_mod_second_derived(r.word(), z)
    with pytest.raises(NonZeroExponents):
        three_squares_decide_partial(w("x"))


def test_three_squares_odd_area_and_residue():
    rng = random.Random(43)
    seen = set()
    for _ in range(150):
        z = random_derived(rng, rng.randint(2, 14))
        r = three_squares_decide_partial(z)
        seen.add(r.status)
        if winding_invariant(z).area() % 2:
            assert r.status is SquaresStatus.DECOMPOSED
        if r.status is SquaresStatus.DECOMPOSED:
            assert equal_mod_second_derived(r.word(), z)
        if r.status is SquaresStatus.UNKNOWN:
            assert r.lattice is not None


def test_three_squares_never_obstructs_actual_squares():
    rng = random.Random(44)
    for _ in range(150):
        u, v, x = (random_word(rng, rng.randint(0, 8)) for _ in range(3))
        # close up with a square so exponent sums vanish
        prod = u * u * v * v * x * x
        ex, ey = prod.exponents
        fix = Word((("y", -ey // 2), ("x", -ex // 2)))
        prod = u * u * v * v * (x * fix) * (x * fix)
        if not prod.in_commutator_subgroup():
            continue
        assert three_squares_decide_partial(prod).status is not SquaresStatus.OBSTRUCTED


def test_parity_lattice_examples():
    assert parity_lattice(STEP_ONE) is None
    assert parity_lattice(LPoly.constant(1)) is not None
    assert parity_lattice(LPoly.constant(2)).rank == 0


@pytest.mark.parametrize("text", ["x^2y^2", "xyXY", "x^4", "1", "y^-2 x^6 y^4"])
def test_five_squares_examples(text):
    r = w(text)
    parts = five_squares_decompose(r)
    assert len(parts) == 5
    prod = Word()
    for f in parts:
        prod = prod * f**2
    assert equal_mod_second_derived(prod, r)


def test_five_squares_random():
    rng = random.Random(45)
    for _ in range(100):
        r = random_word(rng, rng.randint(0, 12))
        ex, ey = r.exponents
        r = r * Word((("x", ex % 2), ("y", ey % 2)))
        parts = five_squares_decompose(r)
        prod = Word()
        for f in parts:
            prod = prod * f**2
        assert prod.exponents == r.exponents
        assert equal_mod_second_derived(prod, r)
    with pytest.raises(OddExponents):
        five_squares_decompose(w("x"))


def test_square_length_bounds():
    assert square_length_bounds(w("xyXY")) == (3, 3)
    assert square_length_bounds(word_from_polynomial(STEP_ONE)) == (4, 5)
    assert square_length_bounds(Word()) == (0, 0)
    assert square_length_bounds(w("x^2")) == (1, 5)
    assert square_length_bounds(w("xyXY") ** 2)[0] <= 2
    with pytest.raises(NotProductOfSquares):
        square_length_bounds(w("x"))


def test_engel_verbal():
    u = simple_commutator([w("x"), w("y"), w("x"), w("y")])
    assert engel_verbal_obstruction(u, 3)
    assert not engel_verbal_obstruction(w("xyXY"), 1)
    assert engel_verbal_obstruction(w("xyXY"), 2)
    rng = random.Random(46)
    for _ in range(40):
        a = random_word(rng, 4)
        b = random_word(rng, 4)
        assert not engel_verbal_obstruction(simple_commutator([a, a, a, b]), 3)
    assert not engel_verbal_obstruction(engel(3), 2)
    with pytest.raises(ValueError):
        engel_verbal_obstruction(Word(), 0)


def test_unit_coset_sums_are_not_multiples():
    # coset sums of a commutator with unit iota are +-1, never divisible by k >= 2
    from windinv.commutators import commutator_lattice, iota
    from windinv.lattice import coset_sums

    rng = random.Random(47)
    for _ in range(100):
        a, b = random_word(rng, 6), random_word(rng, 6)
        if abs(iota(a, b)) != 1:
            continue
        sums = coset_sums(winding_invariant(commutator(a, b)), commutator_lattice(a, b))
        assert all(s % 2 and s % 3 for s in sums.values())
