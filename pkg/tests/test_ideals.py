import random

import pytest
import sympy

from windinv.errors import NonZeroExponents, ResourceExceeded
from windinv.ideals import (
    THOMPSON_RELATORS,
    Presentation,
    center_obstruction,
    embed,
    groebner_basis,
    in_second_derived_of_quotient_necessary,
    is_quasi_perfect,
    laurent_membership,
    laurent_normal_form,
    unembed,
    winding_class_mod,
)
from windinv.invariant import winding_invariant
from windinv.laurent import LPoly, divides, parse_poly
from windinv.words import Word, commutator, w

from conftest import random_poly

SX, SY, SU = sympy.symbols("X Y U")


def to_sympy(p: LPoly):
    return sum(
        (c * SX ** (a + s) * SY ** (b + s) * SU**s for (a, b), c in p.items() for s in [max(0, -a, -b)]),
        sympy.Integer(0),
    )


def rational_member(p, gens):
    g = sympy.groebner([to_sympy(q) for q in gens] + [SU * SX * SY - 1], SU, SX, SY, order="grevlex", domain="QQ")
    return g.contains(to_sympy(p))


def test_embed_roundtrip():
    rng = random.Random(51)
    for _ in range(100):
        p = random_poly(rng, terms=5, spread=4, coef=5)
        assert unembed(embed(p)) == p
        assert all(min(m) >= 0 for m in embed(p))


def test_trivial_ideals():
    assert groebner_basis([LPoly.constant(1)]).is_whole_ring()
    assert laurent_membership(parse_poly("X^3 - 7*Y"), [LPoly.constant(1)])
    assert groebner_basis([parse_poly("X*Y")]).is_whole_ring()
    assert not laurent_membership(LPoly.constant(1), [LPoly.constant(2)])


def test_parity_ideal():
    gens = [LPoly.constant(2), parse_poly("X - 1"), parse_poly("Y - 1")]
    rng = random.Random(52)
    for _ in range(50):
        p = random_poly(rng, terms=4, spread=3, coef=6)
        assert laurent_normal_form(p, gens) == LPoly.constant(p.area() % 2)


def test_thompson_is_quasi_perfect():
    pres = Presentation(THOMPSON_RELATORS)
    assert is_quasi_perfect(pres)
    one = parse_poly("1 + X^-1 - Y^-1")
    two = parse_poly("1 + X^-1 + X^-2 - Y^-1 - X^-1*Y^-1")
    assert laurent_membership(LPoly.constant(1), [one, two])
    assert not winding_class_mod(w("xyXY"), pres)


def test_known_nonmember():
    gens = [parse_poly("1 + X + Y"), parse_poly("1 + X^2")]
    p = parse_poly("1 + X + X*Y")
    assert not laurent_membership(p, gens)
    assert laurent_normal_form(p, gens)


def test_generators_are_members_and_shift_invariance():
    rng = random.Random(53)
    for _ in range(40):
        gens = [random_poly(rng, terms=3, spread=2, coef=3) for _ in range(rng.randint(1, 2))]
        gens = [g for g in gens if g] or [parse_poly("1 + X")]
        basis = groebner_basis(gens)
        combo = LPoly()
        for g in gens:
            assert basis.contains(g)
            combo = combo + g * random_poly(rng, terms=2, spread=2, coef=3)
        assert basis.contains(combo)
        p = random_poly(rng, terms=3, spread=2, coef=3)
        assert basis.contains(p) == basis.contains(p.shift(rng.randint(-3, 3), rng.randint(-3, 3)))
        # normal forms are canonical on residue classes
        assert basis.normal_form(p) == basis.normal_form(p + combo)


def test_principal_ideals_match_division():
    rng = random.Random(54)
    for _ in range(200):
        q = random_poly(rng, terms=3, spread=2, coef=3) or LPoly.constant(1)
        q = q + LPoly.monomial(3, 3)
        if rng.random() < 0.5:
            p = q * random_poly(rng, terms=3, spread=2, coef=3)
        else:
            p = random_poly(rng, terms=4, spread=3, coef=4)
        assert laurent_membership(p, [q]) == divides(q, p)


def test_integer_membership_implies_rational_membership():
    rng = random.Random(55)
    for _ in range(25):
        gens = [random_poly(rng, terms=2, spread=1, coef=3) for _ in range(2)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        p = random_poly(rng, terms=3, spread=2, coef=3)
        if laurent_membership(p, gens):
            assert rational_member(p, gens)
        if not rational_member(p, gens):
            assert not laurent_membership(p, gens)


def test_presentations():
    with pytest.raises(NonZeroExponents):
        Presentation((w("x"),))
    pres = Presentation.parse("# square of the commutator\nxyXYxyXY\n")
    assert winding_class_mod(w("xyXY"), pres) == LPoly.constant(1)
    assert winding_class_mod(pres.relators[0], pres) == LPoly()
    assert not in_second_derived_of_quotient_necessary(w("xyXY"), pres)
    assert not is_quasi_perfect(pres)


def test_center_obstruction():
    abelian = Presentation((w("xyXY"),))
    assert not center_obstruction(abelian, w("x"))
    square = Presentation((w("xyXY") ** 2,))
    assert center_obstruction(square, w("x"))
    assert not center_obstruction(square, w("xyXY"))


def test_resource_cap():
    gens = [parse_poly("3 + X^5*Y - 7*X^2"), parse_poly("5*Y^4 - X*Y + 2"), parse_poly("X^3 + 11*Y^3")]
    with pytest.raises(ResourceExceeded):
        groebner_basis(gens, max_pairs=3)


def test_parity_factors_through_even_ideals():
    rng = random.Random(56)
    for _ in range(20):
        gens = []
        while len(gens) < 2:
            g = random_poly(rng, terms=3, spread=2, coef=3)
            if g and g.area() % 2 == 0:
                gens.append(g)
        basis = groebner_basis(gens)
        assert basis.normal_form(LPoly.constant(1))
        for _ in range(5):
            member = gens[0] * random_poly(rng, 2, 2, 3) + gens[1] * random_poly(rng, 2, 2, 3)
            assert basis.contains(member) and member.area() % 2 == 0
    assert winding_invariant(w("xyXY")).area() % 2 == 1


def test_bases_are_closed_under_pair_reduction():
    from windinv.ideals import _Basis, _g_poly, _s_poly

    rng = random.Random(57)
    closed = 0
    for _ in range(60):
        gens = [random_poly(rng, terms=3, spread=2, coef=4) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if g]
        if not gens:
            continue
        try:
            basis = groebner_basis(gens)
        except ResourceExceeded:
            continue
        closed += 1
        b = _Basis()
        for g in basis.polys():
            b.add(g)
        for i in range(len(b.polys)):
            for j in range(i):
                args = (b.polys[i], b.polys[j], b.leads[i], b.leads[j], b.lcs[i], b.lcs[j])
                assert not b.reduce(_s_poly(*args))
                assert not b.reduce(_g_poly(*args))
    assert closed >= 50
