"""Kottwitz groups, parameter classification, functoriality, envelopes."""

import random
from fractions import Fraction
from math import gcd

import pytest

from satake.abelian import GroupCharacter, all_characters
from satake.circle import ExactCircle, ONE
from satake.kottwitz import (
    TorusWithAction, build_induced_torus, character_from_dual_point, classify,
    cochar_torus, induced_character, induced_envelope, induced_torus_cocycle,
    kottwitz_group, kottwitz_hom, maximal_compact_quotient, modulus_character,
    parameter_from_character, parameters_equal, relative_weyl_action,
    setting_for_datum, setting_for_torus,
)
from satake.matrices import IntMatrix, Lattice
from satake.presets import split_gl
from satake.rootdata import BasedRootDatum, CapExceeded, galois_action

Q = ExactCircle(1, 0)
QINV = Q.inverse()
QHALF = ExactCircle(Fraction(1, 2), 0)

SL2 = BasedRootDatum(Lattice(1), ((2,), (-2,)), Lattice(1), ((1,), (-1,)),
                     (0,), label="SL2")
NORM_ONE = TorusWithAction(Lattice(1), IntMatrix([[-1]]),
                           IntMatrix.identity(1))


def unramified_setting(datum):
    n = datum.rank
    act = galois_action(datum, IntMatrix.identity(n), IntMatrix.identity(n))
    return setting_for_datum(datum, act)


def test_split_torus_group():
    split3 = TorusWithAction(Lattice(3), IntMatrix.identity(3),
                             IntMatrix.identity(3))
    assert kottwitz_group(split3).group.describe() == "Z^3"
    assert maximal_compact_quotient(split3).describe() == "Z^3"


def test_norm_one_torsion_group():
    kg = kottwitz_group(NORM_ONE)
    assert kg.group.describe() == "Z/2"
    assert maximal_compact_quotient(NORM_ONE).is_trivial()


def test_twist_relation_is_validated():
    # sigma tau sigma^(-1) = tau^q is required of every torus action
    with pytest.raises(ValueError):
        build_induced_torus(2, 1, 4)
    with pytest.raises(ValueError):
        TorusWithAction(Lattice(2), IntMatrix([[0, 1], [1, 0]]),
                        IntMatrix.identity(2), twist=2)


def test_induced_grid_is_infinite_cyclic():
    for e in range(1, 5):
        for f in range(1, 5):
            for q in (3, 5, 7):
                if gcd(q, e) != 1:
                    continue
                torus = build_induced_torus(e, f, q)
                kg = kottwitz_group(torus)
                assert kg.group.describe() == "Z", (e, f, q)
                assert maximal_compact_quotient(torus).describe() == "Z"


def test_cocycle_shape():
    chi, c = induced_torus_cocycle(build_induced_torus(2, 1, 3), Q)
    assert chi == (1, 1)
    assert c == Q
    chi12, _ = induced_torus_cocycle(build_induced_torus(1, 2, 5), Q)
    assert chi12 == (1, 0)
    with pytest.raises(ValueError):
        induced_torus_cocycle(NORM_ONE, Q)


def test_cocycle_round_trip_small():
    for (e, f) in ((2, 1), (1, 2), (2, 2), (3, 2)):
        torus = build_induced_torus(e, f, 5)
        kg = kottwitz_group(torus)
        for fval in (Q, QINV, QHALF, ExactCircle(0, Fraction(3, 8))):
            chi, c = induced_torus_cocycle(torus, fval)
            back = character_from_dual_point(kg, chi, c)
            assert back == induced_character(kg, fval), (e, f, fval)


def test_dual_point_requires_inertia_invariance():
    torus = build_induced_torus(2, 1, 3)
    kg = kottwitz_group(torus)
    with pytest.raises(ValueError):
        character_from_dual_point(kg, (1, 0), Q)   # not tau-fixed


def test_sl2_classification():
    setting = unramified_setting(SL2)
    assert setting.group.describe() == "Z"
    assert len(setting.weyl_homs) == 2

    def par(v):
        return parameter_from_character(
            setting.kottwitz, GroupCharacter(setting.group, (v,)))

    assert parameters_equal(setting, par(Q), par(QINV))
    assert not parameters_equal(setting, par(Q), par(Q ** 2))
    cls = classify(setting, par(Q))
    assert cls.orbit_size == 2
    assert cls.representative.character.values[0] == QINV
    assert classify(setting, par(ONE)).orbit_size == 1
    moved = relative_weyl_action(setting, IntMatrix([[-1]]), par(Q))
    assert moved.character.values[0] == QINV


def test_relative_weyl_action_checks_centralizing():
    torus = build_induced_torus(2, 1, 3)
    setting = setting_for_torus(torus)
    ch = GroupCharacter(setting.group, (Q,))
    par = parameter_from_character(setting.kottwitz, ch)
    with pytest.raises(ValueError):
        relative_weyl_action(setting, IntMatrix.diagonal([1, -1]), par)


def test_gl2_classification_and_modulus():
    setting = unramified_setting(split_gl(2))
    assert setting.group.describe() == "Z^2"
    assert len(setting.weyl_homs) == 2

    def par(a, b):
        return parameter_from_character(
            setting.kottwitz, GroupCharacter(setting.group, (a, b)))

    assert parameters_equal(setting, par(Q, ONE), par(ONE, Q))
    assert not parameters_equal(setting, par(Q, ONE), par(Q, Q))
    assert classify(setting, par(Q, ONE)).orbit_size == 2
    assert classify(setting, par(Q, Q)).orbit_size == 1
    # 2 rho = (1, -1): the central direction is modulus-free
    assert modulus_character(setting, (1, 0)) == QHALF
    assert modulus_character(setting, (1, 1)) == ONE


def test_sl2_modulus_at_coroot():
    setting = unramified_setting(SL2)
    assert modulus_character(setting, (1,)) == Q
    assert modulus_character(setting, (0,)) == ONE
    assert modulus_character(setting, (2,)) == Q ** 2


def test_torus_setting_modulus_is_trivial():
    setting = setting_for_torus(NORM_ONE)
    assert modulus_character(setting, (1,)) == ONE
    assert len(setting.weyl_homs) == 1


def test_norm_one_has_two_classes():
    setting = setting_for_torus(NORM_ONE)
    chars = list(all_characters(setting.group))
    assert len(chars) == 2
    keys = {classify(setting, parameter_from_character(setting.kottwitz, ch)).key()
            for ch in chars}
    assert len(keys) == 2


def test_classify_rejects_foreign_characters():
    setting = unramified_setting(SL2)
    other = setting_for_torus(NORM_ONE)
    ch = GroupCharacter(other.group, (ExactCircle(0, Fraction(1, 2)),))
    with pytest.raises(ValueError):
        classify(setting, parameter_from_character(other.kottwitz, ch))


def test_classify_cap():
    setting = unramified_setting(split_gl(3))
    ch = GroupCharacter(setting.group, (Q, ONE, QINV))
    par = parameter_from_character(setting.kottwitz, ch)
    with pytest.raises(CapExceeded):
        classify(setting, par, max_orbit=2)


def check_squares(mat, kga, kgb):
    khom, chom = kottwitz_hom(mat, kga, kgb)
    left = chom.compose(kga.inclusion)
    right = kgb.inclusion.compose(khom)
    assert (left - right).is_zero()
    for j in range(mat.ncols):
        col = tuple(mat.column(j))
        lhs = kgb.coinvariants.reduce(kgb.coinvariants.proj.apply(col))
        unit = tuple(int(i == j) for i in range(mat.ncols))
        rhs = chom(kga.coinvariants.project(unit))
        assert lhs == rhs
    return khom, chom


def test_envelope_of_norm_one():
    env = induced_envelope(NORM_ONE, 2)
    assert env.prime.rank == 2
    assert env.prime.tau == IntMatrix([[0, 1], [1, 0]])
    assert env.prime.sigma == IntMatrix.identity(2)
    kgp = kottwitz_group(env.prime)
    kgn = kottwitz_group(NORM_ONE)
    assert kgp.group.describe() == "Z"
    khom, _ = check_squares(env.norm.matrix, kgp, kgn)
    assert khom.is_surjective()
    # every character of the target is hit through the norm correspondence
    pulled = {ch.precompose(khom).key() for ch in all_characters(kgn.group)}
    assert len(pulled) == 2
    # the embedding direction collapses: Z/2 has no injection into Z
    khom_e, _ = kottwitz_hom(env.embed.matrix, kgn, kgp)
    assert khom_e.is_zero()
    check_squares(env.embed.matrix, kgn, kgp)


def test_envelope_degenerate_and_multiplicative():
    split3 = TorusWithAction(Lattice(3), IntMatrix.identity(3),
                             IntMatrix.identity(3))
    env1 = induced_envelope(split3, 1)
    assert env1.prime.rank == 3
    assert env1.embed.matrix == IntMatrix.identity(3)
    gm = TorusWithAction(Lattice(1), IntMatrix.identity(1),
                         IntMatrix.identity(1))
    env2 = induced_envelope(gm, 2)
    assert env2.prime.rank == 2
    assert env2.embed.matrix.data == ((1,), (1,))
    assert env2.prime.sigma == IntMatrix([[0, 1], [1, 0]])
    # norm after diagonal embedding is multiplication by the degree
    comp = env2.norm.matrix @ env2.embed.matrix
    assert comp == IntMatrix([[2]])


def test_kottwitz_hom_requires_equivariance():
    kgn = kottwitz_group(NORM_ONE)
    kg21 = kottwitz_group(build_induced_torus(2, 1, 3))
    check_squares(IntMatrix([[1], [-1]]), kgn, kg21)   # antidiagonal works
    with pytest.raises(ValueError):
        kottwitz_hom(IntMatrix([[1], [0]]), kgn, kg21)


def random_permutation_matrix(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return IntMatrix.from_columns([tuple(int(i == perm[j]) for i in range(n))
                                   for j in range(n)], nrows=n)


def test_random_equivariant_squares():
    """Seeded sweep: sign actions with arbitrary maps, permutation actions
    with transfer-averaged maps."""
    rng = random.Random(1984)
    for trial in range(60):
        if trial % 2 == 0:
            na, nb = rng.randint(1, 4), rng.randint(1, 4)
            eps = rng.choice((-1, 1))
            ta = IntMatrix.diagonal([eps] * na)
            tb = IntMatrix.diagonal([eps] * nb)
            sa = IntMatrix.identity(na)
            sb = IntMatrix.identity(nb)
            mat = IntMatrix([[rng.randint(-3, 3) for _ in range(na)]
                             for _ in range(nb)])
        else:
            n = rng.randint(1, 4)
            na = nb = n
            ta = tb = random_permutation_matrix(rng, n)
            k = rng.randint(0, n)
            sa = sb = ta.power(k)
            base = IntMatrix([[rng.randint(-2, 2) for _ in range(n)]
                              for _ in range(n)])
            mat = IntMatrix.zeros(n, n)
            g = IntMatrix.identity(n)
            order = ta.multiplicative_order()
            for _ in range(order):
                mat = mat + g @ base @ g.inverse_unimodular()
                g = g @ ta
        torus_a = TorusWithAction(Lattice(na), ta, sa)
        torus_b = TorusWithAction(Lattice(nb), tb, sb)
        check_squares(mat, kottwitz_group(torus_a), kottwitz_group(torus_b))
