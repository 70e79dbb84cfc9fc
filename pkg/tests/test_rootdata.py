"""Based root data, pinned automorphisms, Weyl groups, folding."""

import pytest

from satake.matrices import IntMatrix, Lattice
from satake.presets import (
    adjoint_d4, d4_flip_matrix, d4_triality_matrix, flip_negate, split_gl,
    split_pgl, split_sl, split_so, split_sp,
)
from satake.rootdata import (
    BasedRootDatum, CapExceeded, FoldingError, datum_from_simples,
    detect_type, dual_datum, fixed_weyl_subgroup, folded_generators,
    galois_action, identity_pin, mulclose, pinned_automorphism,
    restricted_root_data, root_closure, validate, weyl_group,
)

SL2 = BasedRootDatum(Lattice(1, "X"), ((2,), (-2,)), Lattice(1, "X^"),
                     ((1,), (-1,)), (0,), label="SL2")


def test_sl2_basics():
    assert validate(SL2) == []
    assert SL2.reflection_matrix(0) == IntMatrix([[-1]])
    assert SL2.coreflection_matrix(0) == IntMatrix([[-1]])
    assert weyl_group(SL2).order == 2
    assert SL2.two_rho() == (2,)
    assert SL2.cartan_entry(0, 0) == 2


def test_dual_datum_involution():
    dual = dual_datum(SL2)    # PGL2 shape
    assert validate(dual) == []
    assert dual_datum(dual).roots == SL2.roots
    dsp = dual_datum(split_sp(4))
    assert set(dsp.roots) == set(split_so(5).roots)
    assert set(dsp.coroots) == set(split_so(5).coroots)


def test_gl_weyl_orders():
    for n, worder in ((2, 2), (3, 6), (4, 24)):
        datum = split_gl(n)
        assert validate(datum) == []
        assert weyl_group(datum).order == worder
        assert weyl_group(datum, side="cochar").order == worder
    assert split_gl(3).two_rho() == (2, 0, -2)
    assert len(split_gl(4).positive_roots()) == 6


def test_root_closure_builds_full_systems():
    simples = [(1, 0), (0, 1)]                # root-lattice coordinates
    cosimples = [(2, -1), (-1, 2)]            # Cartan matrix columns
    roots, coroots = root_closure(simples, cosimples)
    assert len(roots) == 6
    datum = datum_from_simples(simples, cosimples, label="A2")
    assert validate(datum) == []
    assert detect_type(datum) == "A2"


def test_root_closure_rejects_mismatched_coroots():
    with pytest.raises(ValueError):
        root_closure([(2,)], [(2,)])    # <a, a^> must be 2


def test_validate_reports_violations():
    broken = BasedRootDatum(Lattice(1), ((2,),), Lattice(1), ((1,),), (0,))
    problems = validate(broken)
    assert problems, "missing -alpha must be flagged"
    assert any("permute" in p for p in problems)


def test_pinned_automorphism_checks():
    gl4 = split_gl(4)
    tau = pinned_automorphism(gl4, flip_negate(4))
    assert tau.order == 2
    assert identity_pin(gl4).order == 1
    with pytest.raises(ValueError):
        pinned_automorphism(gl4, IntMatrix.diagonal([1, 1, 1, -1]))
    with pytest.raises(ValueError):
        pinned_automorphism(gl4, IntMatrix.identity(3))


def test_galois_action_twist_relation():
    gl4 = split_gl(4)
    act = galois_action(gl4, flip_negate(4), IntMatrix.identity(4), twist=1)
    assert act.tau.order == 2
    with pytest.raises(ValueError):
        galois_action(gl4, flip_negate(4), IntMatrix.identity(4), twist=2)
    # unramified: tau = 1, any twist collapses mod 1
    act_u = galois_action(gl4, IntMatrix.identity(4), flip_negate(4), twist=7)
    assert act_u.sigma.order == 2


def test_weyl_cap_is_enforced():
    with pytest.raises(CapExceeded):
        weyl_group(split_gl(4), cap=5)
    with pytest.raises(CapExceeded):
        mulclose([split_gl(4).reflection_matrix(i)
                  for i in split_gl(4).simple_indices], cap=3)


def test_fixed_subgroup_a3_flip():
    gl4 = split_gl(4)
    tau = pinned_automorphism(gl4, flip_negate(4))
    fixed = fixed_weyl_subgroup(weyl_group(gl4), [tau])
    assert fixed.order == 8


def test_folding_a3_gives_c2():
    gl4 = split_gl(4)
    tau = pinned_automorphism(gl4, flip_negate(4))
    res = restricted_root_data(gl4, tau)
    assert not res.non_reduced
    assert res.type_name == "C2"
    assert len(res.datum.roots) == 8
    assert validate(res.datum) == []
    assert res.datum.char_lattice.rank == 2
    folded = folded_generators(gl4, tau)
    assert len(folded) == 2
    assert len(mulclose(folded)) == 8
    for m in folded:
        assert m @ tau.matrix == tau.matrix @ m


def test_folding_a2_is_non_reduced():
    gl3 = split_gl(3)
    tau = pinned_automorphism(gl3, flip_negate(3))
    res = restricted_root_data(gl3, tau)
    assert res.non_reduced
    assert "A1" in res.type_name and "non-reduced" in res.type_name
    assert len(res.datum.roots) == 4      # {a, -a, 2a, -2a}
    assert len(res.reduced_datum.roots) == 2
    rset = set(res.datum.roots)
    assert any(tuple(2 * v for v in r) in rset for r in rset)
    # single orbit {alpha_1, alpha_2} folds to s1 s2 s1
    gens = folded_generators(gl3, tau)
    assert len(gens) == 1
    s1 = gl3.reflection_matrix(gl3.simple_indices[0])
    s2 = gl3.reflection_matrix(gl3.simple_indices[1])
    assert gens[0] == s1 @ s2 @ s1


def test_folding_a4_gives_bc2():
    gl5 = split_gl(5)
    tau = pinned_automorphism(gl5, flip_negate(5))
    res = restricted_root_data(gl5, tau)
    assert res.non_reduced
    assert "C2" in res.type_name and "non-reduced" in res.type_name
    assert len(res.datum.roots) == 12     # BC2: 4 short + 4 long + 4 divisible
    assert len(res.reduced_datum.roots) == 8


def test_folding_torus_datum():
    torus = BasedRootDatum(Lattice(3, "X"), (), Lattice(3, "X^"), (), ())
    assert validate(torus) == []
    assert weyl_group(torus).order == 1
    res = restricted_root_data(torus, pinned_automorphism(torus, flip_negate(3)))
    assert res.type_name == "torus"
    assert res.datum.char_lattice.rank == 1


def test_detect_type_families():
    assert detect_type(SL2) == "A1"
    assert detect_type(split_gl(3)) == "A2"
    assert detect_type(split_gl(4)) == "A3"
    assert detect_type(split_sp(4)) == "C2"
    assert detect_type(split_so(5)) == "C2"    # rank-2 convention
    assert detect_type(split_so(8)) == "D4"
    assert detect_type(split_so(7)) == "B3"
    assert detect_type(split_sp(6)) == "C3"
    assert detect_type(adjoint_d4()) == "D4"


def test_d4_pins():
    d4 = adjoint_d4()
    tri = pinned_automorphism(d4, d4_triality_matrix())
    assert tri.order == 3
    res = restricted_root_data(d4, tri)
    assert res.type_name == "G2"
    so8 = split_so(8)
    flip = pinned_automorphism(so8, d4_flip_matrix())
    assert flip.order == 2
    assert restricted_root_data(so8, flip).type_name == "B3"


def test_folding_error_for_bad_simple_permutation():
    gl3 = split_gl(3)
    # swap is a root permutation but not compatible with every datum; a
    # non-pinned matrix cannot even be built
    with pytest.raises(ValueError):
        pinned_automorphism(gl3, IntMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
                            @ IntMatrix.diagonal([1, 1, 2]))


def test_simple_coefficients_are_exact():
    gl4 = split_gl(4)
    highest = max(gl4.positive_roots(),
                  key=lambda r: sum(gl4.simple_coefficients(r)))
    assert sum(gl4.simple_coefficients(highest)) == 3
