"""Exact classification of spherical representations by their parameters.

Everything is integer or rational arithmetic: Smith normal forms drive
finitely generated abelian group computations, characters take values in
an exact model of the circle times the positive reals, and Weyl orbits
are enumerated as sets of integer matrices.
"""

from .abelian import FgAbGroup, GroupCharacter, GroupHom, all_characters, \
    coinvariants, cokernel, divisible_extension, finite_dual, \
    induced_endomorphism, invariants_of_induced_action, kernel_of_hom, \
    subgroup_coordinates
from .circle import ExactCircle
from .components import CenterCoverCheck, DiagonalizableGroup, FoldCheck, \
    Pi0Certificate, check_center_covers_components, \
    check_fixed_weyl_is_folded, check_tad_connected, \
    diagonalizable_from_lattice, pi0_fixed
from .config import ConfigError, GroupConfig, ResolvedGroup, parse_config, \
    resolve, serialize_config
from .kottwitz import Envelope, KottwitzGroup, ParameterClass, \
    SatakeParameter, SphericalSetting, TorusWithAction, build_induced_torus, \
    character_from_dual_point, classify, cochar_torus, descend_to_kottwitz, \
    induced_character, induced_envelope, induced_torus_cocycle, kottwitz_group, \
    kottwitz_hom, maximal_compact_quotient, modulus_character, \
    parameter_from_character, parameters_equal, relative_weyl_action, \
    setting_for_datum, setting_for_torus
from .matrices import IntMatrix, Lattice, LatticeMap, SmithForm, \
    column_span_basis, kernel, kernel_basis, lattice_map, \
    smith_normal_form, solve, solve_mod
from .rootdata import BasedRootDatum, CapExceeded, DEFAULT_WEYL_CAP, \
    FoldingError, GaloisAction, PinnedAutomorphism, RestrictedRootData, \
    WeylGroup, datum_from_simples, detect_type, dual_datum, \
    fixed_weyl_subgroup, folded_generators, galois_action, identity_pin, \
    mulclose, pinned_automorphism, restricted_root_data, root_closure, \
    validate, weyl_group

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
