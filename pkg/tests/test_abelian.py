"""Finitely generated abelian groups, homomorphisms and characters."""

import random
from fractions import Fraction

import pytest

from satake.abelian import (
    FgAbGroup, GroupCharacter, GroupHom, all_characters, coinvariants,
    cokernel, divisible_extension, finite_dual, induced_endomorphism,
    invariants_of_induced_action, kernel_of_hom, subgroup_coordinates,
)
from satake.circle import ExactCircle, ONE
from satake.matrices import IntMatrix, Lattice, lattice_map


def test_canonical_form_and_describe():
    assert FgAbGroup.from_invariants((2, 6), 1).describe() == "Z/2 + Z/6 + Z"
    assert FgAbGroup.free(3).describe() == "Z^3"
    assert FgAbGroup.free(1).describe() == "Z"
    assert FgAbGroup.trivial().describe() == "0"
    with pytest.raises(ValueError):
        FgAbGroup.from_invariants((3, 2))   # not a divisibility chain
    with pytest.raises(ValueError):
        FgAbGroup.from_invariants((1,))     # trivial factors are not stored


def test_equality_ignores_presentation():
    quo = cokernel(lattice_map(IntMatrix([[2, 0], [0, 1]])))
    assert quo == FgAbGroup.from_invariants((2,))
    assert quo.describe() == "Z/2"
    # projection and lift stay consistent: proj o lift = identity
    comp = quo.proj @ quo.lift
    assert comp.is_identity()


def test_reduce_and_arithmetic():
    g = FgAbGroup.from_invariants((4,), 1)
    assert g.reduce((5, -2)) == (1, -2)
    assert g.add((3, 1), (2, 2)) == (1, 3)
    assert g.negate((1, 1)) == (3, -1)
    assert g.scale(3, (3, 1)) == (1, 3)
    assert g.order() is None
    assert FgAbGroup.from_invariants((2, 4)).order() == 8
    assert FgAbGroup.from_invariants((2, 4)).exponent() == 4
    assert list(FgAbGroup.from_invariants((2,)).elements()) == [(0,), (1,)]


def test_cokernel_presentations():
    # Z^2 / <(2,0),(0,3)> = Z/6 after invariant-factor normalization
    quo = cokernel(lattice_map(IntMatrix([[2, 0], [0, 3]])))
    assert quo.describe() == "Z/6"
    for vec in ((1, 0), (0, 1), (2, 3)):
        coords = quo.project(vec)
        assert quo.reduce(coords) == coords
        back = quo.lift_element(coords)
        # lifting and re-projecting is the identity on the quotient
        assert quo.project(back) == coords
    assert quo.project((1, 1)) != quo.zero()
    assert quo.project((2, 3)) == quo.zero()
    assert quo.project((2, 0)) == quo.zero()


def test_coinvariants_examples():
    swap = IntMatrix([[0, 1], [1, 0]])
    assert coinvariants(Lattice(2), [swap]).describe() == "Z"
    neg = IntMatrix([[-1]])
    assert coinvariants(Lattice(1), [neg]).describe() == "Z/2"
    assert coinvariants(Lattice(2), []).describe() == "Z^2"
    with pytest.raises(ValueError):
        coinvariants(Lattice(1), [IntMatrix([[2]])])


def test_hom_construction_checks_relations():
    z2 = FgAbGroup.from_invariants((2,))
    z = FgAbGroup.free(1)
    with pytest.raises(ValueError):
        GroupHom(z2, z, IntMatrix([[1]]))   # Z/2 -> Z must be zero
    zero = GroupHom(z2, z, IntMatrix([[0]]))
    assert zero.is_zero()
    double = GroupHom(z, z, IntMatrix([[2]]))
    assert double.is_injective() and not double.is_surjective()
    assert double.cokernel_group().describe() == "Z/2"
    assert double.preimage((3,)) is None
    assert double.preimage((4,)) == (2,)


def test_compose_is_self_after_other():
    z = FgAbGroup.free(1)
    double = GroupHom(z, z, IntMatrix([[2]]))
    triple = GroupHom(z, z, IntMatrix([[3]]))
    assert double.compose(triple).matrix == IntMatrix([[6]])
    assert (double.compose(triple) - triple.compose(double)).is_zero()


def test_kernel_of_hom_and_invariants():
    g = FgAbGroup.from_invariants((4,))
    triple = GroupHom(g, g, IntMatrix([[3]]))
    sub, incl = invariants_of_induced_action(g, triple)
    assert sub.describe() == "Z/2"
    assert incl.matrix.data == ((2,),)
    # mod-4 reduction Z -> Z/4 has kernel 4Z, still free of rank 1
    red = GroupHom(FgAbGroup.free(1), g, IntMatrix([[1]]))
    ker, kincl = kernel_of_hom(red)
    assert ker.describe() == "Z"
    assert kincl.matrix.data == ((4,),) or kincl.matrix.data == ((-4,),)
    assert subgroup_coordinates(incl, (2,)) == (1,)
    with pytest.raises(ValueError):
        subgroup_coordinates(incl, (1,))


def test_induced_endomorphism_descends():
    quo = cokernel(lattice_map(IntMatrix([[3, 0], [0, 1]])))
    assert quo.describe() == "Z/3"
    neg = induced_endomorphism(quo, IntMatrix([[-1, 0], [0, -1]]))
    fixed, _ = invariants_of_induced_action(quo, neg)
    assert fixed.is_trivial()


def test_character_torsion_constraint():
    g = FgAbGroup.from_invariants((2,), 1)
    with pytest.raises(ValueError):
        GroupCharacter(g, (ExactCircle(0, Fraction(1, 3)), ONE))
    chi = GroupCharacter(g, (ExactCircle(0, Fraction(1, 2)), ExactCircle(1, 0)))
    assert chi((1, 2)) == ExactCircle(2, Fraction(1, 2))
    assert chi((2, 0)) == ONE
    assert (chi * chi.inverse()).is_trivial()
    assert GroupCharacter.trivial(g).is_trivial()


def test_character_precompose():
    z = FgAbGroup.free(1)
    double = GroupHom(z, z, IntMatrix([[2]]))
    chi = GroupCharacter(z, (ExactCircle(1, 0),))
    assert chi.precompose(double).values[0] == ExactCircle(2, 0)


def test_divisible_extension_square_root():
    amb, sub = FgAbGroup.free(1), FgAbGroup.free(1)
    incl = GroupHom(sub, amb, IntMatrix([[2]]))
    chi = GroupCharacter(sub, (ExactCircle(1, 0),))
    ext = divisible_extension(chi, incl)
    assert ext.values[0] == ExactCircle(Fraction(1, 2), 0)
    assert ext.precompose(incl) == chi


def test_divisible_extension_with_torsion_target():
    # index-2 subgroup of Z/4: a character of the subgroup always extends
    g = FgAbGroup.from_invariants((4,))
    sub = FgAbGroup.from_invariants((2,))
    incl = GroupHom(sub, g, IntMatrix([[2]]))
    chi = GroupCharacter(sub, (ExactCircle(0, Fraction(1, 2)),))
    ext = divisible_extension(chi, incl)
    assert ext.precompose(incl) == chi
    assert (ext.values[0] ** 4).is_identity()


def test_all_characters_enumeration():
    g = FgAbGroup.from_invariants((2, 4))
    chars = list(all_characters(g))
    assert len(chars) == 8
    assert len({c.key() for c in chars}) == 8
    assert finite_dual(g) == g
    free = FgAbGroup.free(1)
    with pytest.raises(ValueError):
        list(all_characters(free))
    assert len(list(all_characters(free, torsion=6))) == 6
    # torsion bound interacts with generator orders through the gcd
    assert len(list(all_characters(g, torsion=2))) == 4


def test_random_hom_kernel_image_count():
    # |ker| * |im| = |G| for maps Z/12 -> Z/12, x -> a x
    rng = random.Random(5150)
    g = FgAbGroup.from_invariants((12,))
    for _ in range(40):
        a = rng.randrange(12)
        hom = GroupHom(g, g, IntMatrix([[a]]))
        ker, _ = kernel_of_hom(hom)
        img = 12 // (ker.order())
        assert ker.order() * img == 12
        assert hom.cokernel_group().order() == 12 // img
