import itertools
import random

import pytest

from windinv.errors import InapplicableTest, NonZeroExponents
from windinv.invariant import kappa, winding_invariant
from windinv.laurent import LPoly
from windinv.powers import (
    ENGEL6_FIFTH_POWERS,
    HAVAS_LHS,
    HAVAS_RHS,
    cube_product_decide,
    engel_pth_decomposition,
    fourth_power_kappa_test,
    geometric_sum,
    power_area_test,
    two_kth_powers_decide,
    two_pth_powers_cyclic_test,
    two_squares_klein_test,
)
from windinv.words import Word, commutator, engel, staircase, w

from conftest import random_derived, random_word


def xpow(n):
    return Word((("x", n),))


def ypow(n):
    return Word((("y", n),))


def heisenberg3(u: Word):
    """Image in the upper unitriangular 3x3 matrices over Z/3, as (a, b, c)."""
    a = b = c = 0
    for g, s in u.letters():
        # (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
        if g == "x":
            a = (a + s) % 3
        else:
            c = (c + a * s) % 3
            b = (b + s) % 3
    return a, b, c


def test_staircase_and_commutator_have_no_witness():
    for k in (2, 3):
        assert two_kth_powers_decide(w("xyXY"), k) is None
        for m in range(1, 6):
            assert two_kth_powers_decide(staircase(m), k) is None


@pytest.mark.parametrize("r,s,k", list(itertools.product(range(1, 5), repeat=3)))
def test_power_commutators_closed_form(r, s, k):
    u = commutator(xpow(r), ypow(s))
    got = two_kth_powers_decide(u, k)
    assert (got is not None) == (r % k == 0 or s % k == 0)
    if got is not None:
        assert winding_invariant(got.word()) == winding_invariant(u)


def test_constructed_products_are_found():
    rng = random.Random(31)
    for _ in range(80):
        k = rng.randint(2, 4)
        a = random_word(rng, rng.randint(1, 5))
        b = random_derived(rng, 4) * a.inverse() * random_derived(rng, 4)
        target = a**k * b**k
        got = two_kth_powers_decide(target, k)
        assert got is not None
        assert winding_invariant(got.word()) == winding_invariant(target)
        assert got.word().in_commutator_subgroup()


def test_brute_force_short_words():
    letters = ["x", "X", "y", "Y"]
    words = [Word()]
    for n in range(1, 4):
        words += [Word.parse("".join(t)) for t in itertools.product(letters, repeat=n)]
    for k in (2, 3):
        realized = set()
        for a in words:
            for b in words:
                if a.exponents == tuple(-e for e in b.exponents):
                    realized.add(winding_invariant(a**k * b**k))
        for p in realized:
            from windinv.invariant import word_from_polynomial

            assert two_kth_powers_decide(word_from_polynomial(p), k) is not None


def test_geometric_sum():
    assert geometric_sum(0, 0, 3) == LPoly.constant(3)
    assert geometric_sum(1, -1, 3) == LPoly({(0, 0): 1, (1, -1): 1, (2, -2): 1})


def test_requires_commutator_subgroup():
    with pytest.raises(NonZeroExponents):
        two_kth_powers_decide(w("x"), 2)


def test_cubes_against_heisenberg():
    rng = random.Random(33)
    for _ in range(300):
        u = random_word(rng, rng.randint(0, 14))
        assert cube_product_decide(u) == (heisenberg3(u) == (0, 0, 0))


def test_products_of_cubes_accepted():
    rng = random.Random(34)
    for _ in range(200):
        u = Word()
        for _ in range(rng.randint(1, 4)):
            u = u * random_word(rng, rng.randint(1, 6)) ** 3
        assert cube_product_decide(u)
        assert heisenberg3(u) == (0, 0, 0)


def test_kappa_obstructs_third_engel_word():
    assert kappa(engel(3)) == 2
    assert not fourth_power_kappa_test(engel(3))


def test_kappa_sound_on_fourth_powers():
    rng = random.Random(35)
    for _ in range(100):
        u = Word()
        for _ in range(rng.randint(1, 4)):
            u = u * random_word(rng, rng.randint(1, 5)) ** 4
        u = u * ypow(-u.exp_y) * xpow(-u.exp_x)
        assert fourth_power_kappa_test(u)


def test_area_test_sound():
    rng = random.Random(36)
    for _ in range(100):
        k = rng.randint(2, 5)
        u = Word()
        for _ in range(rng.randint(1, 3)):
            u = u * random_word(rng, rng.randint(1, 5)) ** k
        u = u * ypow(-u.exp_y) * xpow(-u.exp_x)
        assert power_area_test(u, k)


def test_klein_sound_on_two_squares():
    rng = random.Random(37)
    for _ in range(100):
        a = random_word(rng, rng.randint(1, 6))
        b = random_word(rng, rng.randint(1, 6))
        if a.exp_x % 2:
            a = a * w("x")
        if a.exp_y % 2:
            a = a * w("y")
        if b.exp_x % 2:
            b = w("X") * b
        if b.exp_y % 2:
            b = w("Y") * b
        assert two_squares_klein_test(a * a * b * b)
    with pytest.raises(InapplicableTest):
        two_squares_klein_test(w("x^2"))


def test_cyclic_sound_on_two_pth_powers():
    rng = random.Random(38)
    for p in (2, 3, 5):
        for _ in range(40):
            a = random_word(rng, 5)
            b = random_word(rng, 5)
            a = a * xpow(-a.exp_x % p)
            b = b * xpow(-b.exp_x % p)
            assert two_pth_powers_cyclic_test(a**p * b**p, p)
    assert not two_pth_powers_cyclic_test(w("x^7 y x y^-2 x y^4"), 3)


def test_known_identities():
    assert HAVAS_LHS == HAVAS_RHS
    prod = Word()
    for base in ENGEL6_FIFTH_POWERS:
        prod = prod * base**5
    assert winding_invariant(prod) == winding_invariant(engel(6))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_engel_prime_powers(p):
    e = engel_pth_decomposition(p)
    assert winding_invariant(e.word()) == winding_invariant(engel(p + 1))
    with pytest.raises(ValueError):
        engel_pth_decomposition(4)


def test_small_examples_of_the_two_power_tests():
    assert two_pth_powers_cyclic_test(w("x^9 y^3"), 3)
    assert two_pth_powers_cyclic_test(w("x^4"), 2)
    assert not two_squares_klein_test(w("xyXY"))
    assert two_squares_klein_test(Word())
    assert two_squares_klein_test(w("xyXY") ** 2)


def test_witnesses_pass_area_test():
    rng = random.Random(39)
    for _ in range(100):
        u = random_derived(rng, rng.randint(2, 12))
        for k in (2, 3, 4):
            if two_kth_powers_decide(u, k) is not None:
                assert power_area_test(u, k)


def test_cube_words_closed_under_products():
    rng = random.Random(40)
    cubes = []
    while len(cubes) < 30:
        u = random_word(rng, rng.randint(0, 10))
        if cube_product_decide(u):
            cubes.append(u)
    for a in cubes:
        for b in cubes[:10]:
            assert cube_product_decide(a * b)


def test_engel_powers_are_not_two_mth_powers():
    for n in range(1, 5):
        for m in range(2, 6):
            for r in range(1, 4):
                if r % m:
                    assert two_kth_powers_decide(engel(n) ** r, m) is None
