"""Kottwitz groups, Satake parameters, and parameter classification.

The pipeline runs on the cocharacter lattice X_*(T): inertia coinvariants
first (a cokernel), then Frobenius invariants of the induced action.  The
resulting group — T/T_0 under the Kottwitz isomorphism — carries the
characters that serve as Satake parameters; the relative Weyl group acts
through the same presentation, and classes are compared by a canonical
minimal orbit representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abelian import (FgAbGroup, GroupCharacter, GroupHom, coinvariants,
                      induced_endomorphism, invariants_of_induced_action,
                      subgroup_coordinates)
from .circle import ExactCircle
from .matrices import IntMatrix, Lattice, LatticeMap
from .rootdata import (BasedRootDatum, CapExceeded, DEFAULT_WEYL_CAP,
                       GaloisAction, weyl_group)


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class TorusWithAction:
    """Cocharacter lattice of a torus with inertia (tau) and Frobenius
    (sigma) automorphisms obeying the tame twist relation
    sigma tau sigma^-1 = tau^twist."""

    cochar_lattice: Lattice
    tau: IntMatrix
    sigma: IntMatrix
    twist: int = 1
    label: str = ""
    induced_params: tuple = None   # (e, f, q) when built by build_induced_torus

    def __post_init__(self):
        n = self.cochar_lattice.rank
        for name, m in (("tau", self.tau), ("sigma", self.sigma)):
            if m.shape != (n, n):
                raise ValueError(f"{name} does not act on a rank-{n} lattice")
            if not m.is_unimodular():
                raise ValueError(f"{name} is not a lattice automorphism")
        tau_order = self.tau.multiplicative_order(cap=10 ** 4)
        self.sigma.multiplicative_order(cap=10 ** 4)
        j = self.twist % tau_order
        lhs = self.sigma @ self.tau @ self.sigma.inverse_unimodular()
        if lhs != self.tau.power(j):
            raise ValueError("twist relation sigma tau sigma^-1 = tau^j fails")
        if tau_order > 1 and _gcd(self.twist, tau_order) != 1:
            raise ValueError("twist exponent must be invertible mod ord(tau)")

    @property
    def rank(self):
        return self.cochar_lattice.rank


def cochar_torus(datum, action, twist=1, label=""):
    """TorusWithAction on the cocharacter side of a based root datum.

    The action is given on the character lattice; the cocharacter side
    carries the dual (inverse-transpose) matrices.
    """
    tau = action.tau.matrix.inverse_unimodular().transpose()
    sigma = action.sigma.matrix.inverse_unimodular().transpose()
    return TorusWithAction(datum.cochar_lattice, tau, sigma,
                           twist=action.twist,
                           label=label or (datum.label + " torus" if datum.label
                                           else ""))


@dataclass(frozen=True)
class KottwitzGroup:
    """T/T_0 = sigma-invariants of the tau-coinvariants of X_*(T).

    `coinvariants` is presented over the cocharacter lattice; `group` is
    the invariant subgroup with `inclusion` mapping it into the
    coinvariants.
    """

    torus: TorusWithAction
    coinvariants: FgAbGroup
    group: FgAbGroup
    inclusion: GroupHom

    def ambient_lift(self, coords):
        """A cocharacter-lattice representative of an element of T/T_0."""
        return self.coinvariants.lift_element(self.inclusion(coords))


def kottwitz_group(torus):
    """Compute T/T_0 for a torus with Galois action.

    >>> t = TorusWithAction(Lattice(1), IntMatrix([[-1]]), IntMatrix([[1]]))
    >>> kottwitz_group(t).group.describe()
    'Z/2'
    """
    lat = torus.cochar_lattice
    coinv = coinvariants(lat, [LatticeMap(lat, lat, torus.tau)])
    sigma_bar = induced_endomorphism(coinv, torus.sigma)
    group, inclusion = invariants_of_induced_action(coinv, sigma_bar)
    return KottwitzGroup(torus, coinv, group, inclusion)


def maximal_compact_quotient(torus):
    """T/T_c: the Kottwitz group modulo its torsion subgroup."""
    kg = torus if isinstance(torus, KottwitzGroup) else kottwitz_group(torus)
    quo, _ = kg.group.free_quotient()
    return quo


def build_induced_torus(e, f, q):
    """Permutation model of an induced torus with ramification e, residue
    degree f, residue cardinality q.

    Basis indexed by pairs (i mod e, j mod f) at position i + e*j; tau is
    i -> i+1 within each block, sigma is (i, j) -> (q i, j+1); the tame
    twist relation holds with exponent q.
    """
    if e < 1 or f < 1:
        raise ValueError("e and f must be positive")
    if q < 2:
        raise ValueError("residue cardinality must be at least 2")
    if _gcd(q, e) != 1:
        raise ValueError("gcd(q, e) must be 1 (tameness)")
    n = e * f

    def idx(i, j):
        return (i % e) + e * (j % f)

    tau_cols = [None] * n
    sigma_cols = [None] * n
    for i in range(e):
        for j in range(f):
            src = idx(i, j)
            tau_cols[src] = idx(i + 1, j)
            sigma_cols[src] = idx(q * i, j + 1)

    def perm_matrix(cols):
        return IntMatrix([[1 if cols[j] == i else 0 for j in range(n)]
                          for i in range(n)])

    return TorusWithAction(Lattice(n, f"induced({e},{f})"),
                           perm_matrix(tau_cols), perm_matrix(sigma_cols),
                           twist=q, label=f"induced e={e} f={f} q={q}",
                           induced_params=(e, f, q))


def induced_torus_cocycle(torus, fval):
    """Dual-point data (chi, c) of a character of an induced torus.

    chi is the sum of the tau-orbit of the first basis functional (an
    inertia-invariant vector of the permutation lattice), c = fval, the
    character's value at the canonical generator of T/T_0 = Z.  The point
    chi (x) c of the fixed dual torus induces that character back; see
    character_from_dual_point.
    """
    if torus.induced_params is None:
        raise ValueError("cocycle extraction needs an induced torus")
    e, f, q = torus.induced_params
    chi = tuple(1 if k < e else 0 for k in range(e * f))
    return chi, fval


def induced_character(kg, fval):
    """The character of T/T_0 = Z of an induced torus taking value fval at
    the canonical generator (the class of the identity-coset basis sum)."""
    torus = kg.torus
    if torus.induced_params is None:
        raise ValueError("canonical generator defined only for induced tori")
    e, f, q = torus.induced_params
    vec = tuple(1 if (k % e == 0) else 0 for k in range(e * f))
    coords = subgroup_coordinates(kg.inclusion, kg.coinvariants.project(vec))
    if kg.group.ngens != 1 or len(coords) != 1 or abs(coords[0]) != 1:
        raise ValueError("induced Kottwitz group is not Z with unit generator")
    value = fval if coords[0] == 1 else fval.inverse()
    return GroupCharacter(kg.group, (value,))


def character_from_dual_point(kg, chi, c):
    """Character of the Kottwitz group induced by a point chi (x) c of the
    tau-fixed dual torus: value at y is c raised to <chi, lift(y)>.

    chi must be an inertia-invariant functional on the cocharacter
    lattice (tau-transpose fixed), which makes the pairing independent of
    the chosen lifts.
    """
    tau = kg.torus.tau
    if tuple(tau.transpose().apply(chi)) != tuple(chi):
        raise ValueError("dual point is not inertia-invariant")
    values = []
    for j in range(kg.group.ngens):
        unit = tuple(int(i == j) for i in range(kg.group.ngens))
        amb = kg.ambient_lift(unit)
        t = sum(a * b for a, b in zip(chi, amb))
        values.append(c ** t)
    return GroupCharacter(kg.group, tuple(values))


@dataclass(frozen=True)
class SatakeParameter:
    """A character of the Kottwitz group, prior to the Weyl quotient."""

    character: GroupCharacter

    def key(self):
        return self.character.key()


def parameter_from_character(kg, character):
    if character.domain != kg.group:
        raise ValueError("character is not defined on the Kottwitz group")
    return SatakeParameter(character)


@dataclass(frozen=True)
class ParameterClass:
    """Canonical representative of a W-orbit of parameters plus its size."""

    representative: SatakeParameter
    orbit_size: int

    def key(self):
        return self.representative.key()


def _action_key(hom):
    return tuple(hom(tuple(int(i == j) for i in range(hom.source.ngens)))
                 for j in range(hom.source.ngens))


def descend_to_kottwitz(kg, ambient_matrix):
    """GroupHom on T/T_0 induced by a cochar-lattice map commuting with
    tau (so it descends to coinvariants) and sigma (so it preserves the
    invariant subgroup)."""
    cbar = induced_endomorphism(kg.coinvariants, ambient_matrix)
    cols = []
    k = kg.group.ngens
    for j in range(k):
        unit = tuple(int(i == j) for i in range(k))
        img = cbar(kg.inclusion(unit))
        cols.append(subgroup_coordinates(kg.inclusion, img))
    return GroupHom(kg.group, kg.group, IntMatrix.from_columns(cols, nrows=k))


@dataclass(frozen=True)
class SphericalSetting:
    """Everything needed to classify parameters for one group: the based
    root datum (None for a bare torus), the torus action, its Kottwitz
    group, and the relative Weyl group's induced action on it."""

    datum: BasedRootDatum
    torus: TorusWithAction
    kottwitz: KottwitzGroup
    weyl_homs: tuple   # deduplicated GroupHoms on kottwitz.group

    @property
    def group(self):
        return self.kottwitz.group


def setting_for_torus(torus):
    kg = kottwitz_group(torus)
    return SphericalSetting(None, torus, kg,
                            (GroupHom.identity(kg.group),))


def setting_for_datum(datum, action, cap=DEFAULT_WEYL_CAP):
    """Build the classification setting: relative Weyl group = tau,sigma
    centralizer in the Weyl group, acting on T/T_0 through coinvariants."""
    torus = cochar_torus(datum, action)
    kg = kottwitz_group(torus)
    weyl = weyl_group(datum, side="cochar", cap=cap)
    homs = {}
    for w in weyl:
        if w @ torus.tau != torus.tau @ w or w @ torus.sigma != torus.sigma @ w:
            continue
        hom = descend_to_kottwitz(kg, w)
        homs.setdefault(_action_key(hom), hom)
    ordered = tuple(homs[k] for k in sorted(homs))
    return SphericalSetting(datum, torus, kg, ordered)


def relative_weyl_action(setting, w, parameter):
    """Act by an element of the relative Weyl group (a cochar-side matrix
    commuting with tau and sigma) on a parameter, by precomposition."""
    torus = setting.torus
    if w @ torus.tau != torus.tau @ w or w @ torus.sigma != torus.sigma @ w:
        raise ValueError("matrix does not centralize the Galois action")
    hom = descend_to_kottwitz(setting.kottwitz, w)
    return SatakeParameter(parameter.character.precompose(hom))


def classify(setting, parameter, max_orbit=None):
    """Canonical form of a parameter modulo the relative Weyl group.

    Enumerates the orbit under the precomputed induced action, returns
    the minimal representative in the documented character order and the
    orbit size.  `max_orbit` caps the enumeration (CapExceeded).
    """
    if parameter.character.domain != setting.group:
        raise ValueError("parameter does not live on this setting's group")
    orbit = {}
    for hom in setting.weyl_homs:
        moved = parameter.character.precompose(hom)
        orbit[moved.key()] = moved
        if max_orbit is not None and len(orbit) > max_orbit:
            raise CapExceeded(f"orbit enumeration exceeded cap {max_orbit}")
    best = orbit[min(orbit)]
    return ParameterClass(SatakeParameter(best), len(orbit))


def parameters_equal(setting, p1, p2, max_orbit=None):
    """True iff the two parameters lie in one relative-Weyl orbit."""
    c1 = classify(setting, p1, max_orbit)
    c2 = classify(setting, p2, max_orbit)
    return c1.representative.character == c2.representative.character


def modulus_character(setting, coords):
    """delta^{1/2} at an element of T/T_0: q to the power <2 rho, lift>/2.

    `coords` are coordinates in the Kottwitz group (the group-side
    object), unlike classify/parameters_equal which take dual-side
    SatakeParameter values.

    2 rho is the sum of the positive roots of the setting's datum (zero
    for a bare torus); the value is independent of the lift because 2 rho
    is invariant, and torsion elements land on exponent 0.
    """
    if isinstance(coords, (SatakeParameter, GroupCharacter)):
        raise TypeError("modulus_character evaluates at an element of T/T_0:"
                        " pass coordinates in the Kottwitz group, not a"
                        " dual-side character")
    if setting.datum is None:
        return ExactCircle.one()
    two_rho = setting.datum.two_rho()
    amb = setting.kottwitz.ambient_lift(coords)
    pair = sum(a * b for a, b in zip(two_rho, amb))
    return ExactCircle(Fraction(pair, 2), Fraction(0))


def kottwitz_hom(matrix, kg_source, kg_target):
    """Functorial maps induced by an equivariant cochar-lattice map:
    returns (map on Kottwitz groups, map on coinvariants)."""
    ts, tt = kg_source.torus, kg_target.torus
    if matrix @ ts.tau != tt.tau @ matrix:
        raise ValueError("map is not tau-equivariant")
    if matrix @ ts.sigma != tt.sigma @ matrix:
        raise ValueError("map is not sigma-equivariant")
    cs, ct = kg_source.coinvariants, kg_target.coinvariants
    chom = GroupHom(cs, ct, ct.proj @ matrix @ cs.lift)
    cols = []
    k = kg_source.group.ngens
    for j in range(k):
        unit = tuple(int(i == j) for i in range(k))
        img = chom(kg_source.inclusion(unit))
        cols.append(subgroup_coordinates(kg_target.inclusion, img))
    khom = GroupHom(kg_source.group, kg_target.group,
                    IntMatrix.from_columns(cols, nrows=kg_target.group.ngens))
    return khom, chom


@dataclass(frozen=True)
class Envelope:
    """Induced envelope T' of a torus T with Galois action.

    X_*(T') is the group ring of the finite group Gamma = A x Z/c (A the
    matrix group generated by tau and sigma, c chosen so |Gamma| equals
    the requested degree) tensored with X_*(T), with Gamma acting by left
    translation.  `embed` is the unit x -> sum_g g (x) g^{-1} x and `norm`
    the counit g (x) x -> g x; norm o embed is multiplication by the
    degree, and both are equivariant.
    """

    torus: TorusWithAction
    prime: TorusWithAction
    embed: LatticeMap
    norm: LatticeMap
    degree: int


def induced_envelope(torus, n):
    """Build the degree-n induced envelope of a torus with action.

    Requires the action group A = <tau, sigma> to have order dividing n.
    """
    from .rootdata import mulclose
    group_a = sorted(mulclose([torus.tau, torus.sigma], cap=10 ** 4),
                     key=lambda m: m.key())
    if n < 1 or n % len(group_a) != 0:
        raise ValueError("action does not factor through a group of order"
                         f" dividing {n}")
    c = n // len(group_a)
    gamma = [(a, r) for a in group_a for r in range(c)]
    index = {(a.key(), r): i for i, (a, r) in enumerate(gamma)}
    d = torus.rank

    def gmul(x, y):
        return ((x[0] @ y[0]), (x[1] + y[1]) % c)

    def left_mult_matrix(g):
        cols = [None] * (n * d)
        for gi, h in enumerate(gamma):
            target = index[(gmul(g, h)[0].key(), gmul(g, h)[1])]
            for k in range(d):
                cols[gi * d + k] = target * d + k
        return IntMatrix([[1 if cols[j] == i else 0 for j in range(n * d)]
                          for i in range(n * d)])

    tau_g = (torus.tau, 0)
    sigma_g = (torus.sigma, 1 % c)
    prime = TorusWithAction(Lattice(n * d, "envelope"),
                            left_mult_matrix(tau_g), left_mult_matrix(sigma_g),
                            twist=torus.twist,
                            label=(torus.label + f" envelope deg {n}").strip())

    embed_rows = []
    for a, r in gamma:
        inv = a.inverse_unimodular()
        embed_rows.extend(inv.row(i) for i in range(d))
    embed = LatticeMap(torus.cochar_lattice, prime.cochar_lattice,
                       IntMatrix(embed_rows, ncols=d))
    norm_cols = []
    for a, r in gamma:
        norm_cols.extend(a.column(k) for k in range(d))
    norm = LatticeMap(prime.cochar_lattice, torus.cochar_lattice,
                      IntMatrix.from_columns(norm_cols, nrows=d))

    if norm.matrix @ embed.matrix != IntMatrix.identity(d).scaled(n):
        raise RuntimeError("norm o embed is not multiplication by the degree")
    if (embed.matrix @ torus.tau != prime.tau @ embed.matrix
            or embed.matrix @ torus.sigma != prime.sigma @ embed.matrix):
        raise RuntimeError("embedding is not equivariant")
    if (torus.tau @ norm.matrix != norm.matrix @ prime.tau
            or torus.sigma @ norm.matrix != norm.matrix @ prime.sigma):
        raise RuntimeError("norm is not equivariant")
    return Envelope(torus, prime, embed, norm, n)
