import random

import pytest

from windinv.commutators import (
    Verdict,
    ab_squared_obstruction,
    commutator_lattice,
    commutator_obstruction,
    gamma_decomposition,
    gamma_membership,
    iota,
    lower_central_necessary,
    recombine_gamma,
    simple_commutator_decide,
    verify_coset_sums,
)
from windinv.invariant import winding_invariant
from windinv.laurent import LPoly, parse_poly
from windinv.lattice import coset_sums
from windinv.words import Word, basic_chain, commutator, engel, simple_commutator, w

from conftest import random_derived, random_poly, random_word


@pytest.mark.parametrize(
    "text",
    ["1 + X^2*Y^2", "1 - X*Y + X^2*Y^2 + X^3*Y^3", "2 + 2*X - Y"],
)
def test_golden_obstructions(text):
    assert commutator_obstruction(parse_poly(text)).verdict is Verdict.OBSTRUCTED


def test_inconclusive_on_one():
    r = commutator_obstruction(LPoly.constant(1))
    assert r.verdict is Verdict.INCONCLUSIVE and r.iota == 1


def test_must_contain_restricts():
    p = parse_poly("1 + X")
    assert commutator_obstruction(p).verdict is Verdict.INCONCLUSIVE
    assert commutator_obstruction(p, must_contain=[(1, 0)]).obstructed


def test_ab_squared():
    p = parse_poly("1 - X^-1") * parse_poly("1 + Y^-1")
    assert ab_squared_obstruction(p).obstructed
    assert ab_squared_obstruction(LPoly.constant(2)).obstructed
    # the obstruction rules out [a^2, b] but p is still a commutator
    witness = commutator(w("YXy^2xY"), w("x"))
    assert winding_invariant(witness) == p
    assert not commutator_obstruction(p).obstructed


def test_coset_sums_equal_iota_everywhere():
    rng = random.Random(21)
    for _ in range(200):
        a = random_word(rng, rng.randint(1, 8))
        b = random_word(rng, rng.randint(1, 8))
        lat = commutator_lattice(a, b)
        p = winding_invariant(commutator(a, b))
        sums = coset_sums(p, lat)
        s = iota(a, b)
        assert all(v == s for v in sums.values())
        assert verify_coset_sums(a, b)


def test_obstruction_sound_on_commutators():
    rng = random.Random(22)
    for _ in range(150):
        a = random_word(rng, rng.randint(1, 6))
        b = random_word(rng, rng.randint(1, 6))
        p = winding_invariant(commutator(a, b))
        assert not commutator_obstruction(p).obstructed
        assert not commutator_obstruction(p, must_contain=[a.exponents]).obstructed
        q = winding_invariant(commutator(a * a, b))
        assert not ab_squared_obstruction(q).obstructed


def test_simple_commutator_finds_constructed_factors():
    rng = random.Random(23)
    for _ in range(60):
        k = rng.randint(1, 3)
        p = random_poly(rng, terms=3, spread=2, coef=3) or LPoly.constant(1)
        for _ in range(k):
            n, m = rng.randint(-2, 2), rng.randint(-2, 2)
            if (n, m) == (0, 0):
                n = 1
            p = p * (LPoly.monomial(n, m) - 1)
        found = simple_commutator_decide(p, k)
        assert found is not None
        assert found.product() == p


def test_simple_commutator_examples():
    xm, ym = parse_poly("X - 1"), parse_poly("Y - 1")
    r = simple_commutator_decide(xm * parse_poly("1 + X^2"), 1)
    assert r.monomials == ((1, 0),)
    r = simple_commutator_decide(xm * ym, 2)
    assert r.monomials == ((1, 0), (0, 1)) and r.cofactor == LPoly.constant(1)
    assert simple_commutator_decide(LPoly.constant(1), 1) is None
    assert simple_commutator_decide(parse_poly("1 + X"), 1) is None


def test_simple_commutator_words_pass():
    rng = random.Random(24)
    for _ in range(40):
        k = rng.randint(2, 4)
        ws = [random_word(rng, rng.randint(1, 4)) for _ in range(k - 1)]
        c = simple_commutator(ws + [random_derived(rng, 6)])
        p = winding_invariant(c)
        assert simple_commutator_decide(p, k - 1) is not None


def test_gamma_engel_and_chains():
    for n in range(2, 8):
        ok, parts = gamma_membership(engel(n), n + 1)
        assert ok
        assert recombine_gamma(parts, n + 1) == winding_invariant(engel(n))
        assert not gamma_membership(engel(n), n + 2)[0]
    for l in range(0, 4):
        for s in range(0, 4):
            c = basic_chain(l, s)
            weight = l + s + 2
            ok, parts = gamma_membership(c, weight)
            assert ok
            assert recombine_gamma(parts, weight) == winding_invariant(c)
    assert not gamma_membership(w("xyXY"), 3)[0]


def test_gamma_recombines_randomly():
    rng = random.Random(25)
    for _ in range(80):
        p = random_poly(rng, terms=4, spread=3, coef=4)
        m = rng.randint(2, 5)
        parts = gamma_decomposition(p, m)
        assert (parts is not None) == lower_central_necessary(p, m)
        if parts is not None:
            assert recombine_gamma(parts, m) == p


def test_gamma_of_commutators_of_long_words():
    rng = random.Random(26)
    for _ in range(30):
        a, b, c = (random_word(rng, 4) for _ in range(3))
        u = simple_commutator([a, b, c])
        assert gamma_membership(u, 3)[0]


def test_single_factor_against_divisor_enumeration():
    from windinv.laurent import divides

    rng = random.Random(27)
    for _ in range(120):
        p = random_poly(rng, terms=3, spread=2, coef=2)
        if rng.random() < 0.5:
            p = p * (LPoly.monomial(rng.randint(0, 2), rng.randint(-2, 2)) - 1)
        brute = any(
            divides(LPoly.monomial(n, m) - 1, p)
            for n in range(-6, 7)
            for m in range(-6, 7)
            if (n, m) != (0, 0)
        )
        got = simple_commutator_decide(p, 1)
        assert (got is not None) == (brute or not p)


def test_changing_first_entry_within_a_coset():
    from windinv.laurent import divides

    rng = random.Random(28)
    for _ in range(100):
        a1 = random_word(rng, 5)
        a2 = random_derived(rng, 6) * a1
        b = random_word(rng, rng.randint(1, 5))
        n, m = b.exponents
        diff = winding_invariant(commutator(a1, b)) - winding_invariant(commutator(a2, b))
        if (n, m) != (0, 0):
            assert divides(LPoly.monomial(n, m) - 1, diff)
        else:
            assert not diff
