"""Finitely generated abelian groups in Smith canonical form.

A group is recorded by its invariant factors (each >= 2, each dividing
the next) plus a free rank, together with a presentation over an ambient
lattice: a projection taking ambient vectors to canonical-generator
coordinates and a lift the other way.  Canonical generators are ordered
torsion first, then free.

Homomorphisms are integer matrices on canonical generators; characters
take values in the exact circle group.  Kernels of homomorphisms are
computed by lifting to the presentation and adjoining relation columns
(a congruence-augmented integer system), so groups with torsion need no
special casing.
"""

from __future__ import annotations

from itertools import product as iter_product

from .circle import ExactCircle
from .matrices import (IntMatrix, Lattice, LatticeMap, column_span_basis,
                       hstack, kernel_basis, smith_normal_form, solve,
                       solve_mod)


class FgAbGroup:
    """(+) Z/d_i (+) Z^free_rank with d_1 | d_2 | ... and every d_i >= 2.

    >>> g = FgAbGroup.from_invariants((2, 4), 1)
    >>> g.describe()
    'Z/2 + Z/4 + Z'
    >>> g.order() is None
    True
    """

    __slots__ = ("invariant_factors", "free_rank", "ambient_rank", "proj", "lift")

    def __init__(self, invariant_factors, free_rank, proj=None, lift=None):
        factors = tuple(int(d) for d in invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        self.invariant_factors = factors
        self.free_rank = int(free_rank)
        n = self.ngens
        if proj is None:
            proj = IntMatrix.identity(n)
        if lift is None:
            lift = IntMatrix.identity(n)
        if proj.nrows != n or lift.ncols != n or proj.ncols != lift.nrows:
            raise ValueError("presentation shapes do not match the group")
        self.proj = proj
        self.lift = lift
        self.ambient_rank = proj.ncols

    @classmethod
    def from_invariants(cls, factors, free_rank=0):
        return cls(factors, free_rank)

    @classmethod
    def free(cls, rank):
        return cls((), rank)

    @classmethod
    def trivial(cls):
        return cls((), 0)

    @property
    def ngens(self):
        return len(self.invariant_factors) + self.free_rank

    @property
    def torsion_count(self):
        return len(self.invariant_factors)

    def generator_orders(self):
        """Order per canonical generator; 0 marks infinite order."""
        return self.invariant_factors + (0,) * self.free_rank

    def relation_matrix(self):
        """Columns d_i * e_i spanning the relation lattice in Z^ngens."""
        k = self.torsion_count
        cols = [tuple(self.invariant_factors[j] * int(i == j)
                      for i in range(self.ngens)) for j in range(k)]
        return IntMatrix.from_columns(cols, nrows=self.ngens)

    def reduce(self, coords):
        """Canonical coordinates: torsion entries reduced mod their order."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ngens:
            raise ValueError("coordinate length mismatch")
        out = []
        for c, d in zip(coords, self.generator_orders()):
            out.append(c % d if d else c)
        return tuple(out)

    def zero(self):
        return (0,) * self.ngens

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def negate(self, x):
        return self.reduce(tuple(-a for a in x))

    def scale(self, k, x):
        return self.reduce(tuple(k * a for a in x))

    def project(self, ambient_vector):
        """Class of an ambient lattice vector, in canonical coordinates."""
        return self.reduce(self.proj.apply(ambient_vector))

    def lift_element(self, coords):
        """Some ambient vector mapping onto the given class."""
        return self.lift.apply(tuple(coords))

    def is_trivial(self):
        return self.ngens == 0

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if not self.is_finite():
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def exponent(self):
        if not self.is_finite():
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def elements(self):
        """All elements of a finite group, in lexicographic coordinate order."""
        if not self.is_finite():
            raise ValueError("infinite group")
        for tup in iter_product(*(range(d) for d in self.invariant_factors)):
            yield tup

    def torsion_subgroup(self):
        """(subgroup, inclusion) for the torsion part."""
        k = self.torsion_count
        sub = FgAbGroup(self.invariant_factors, 0)
        cols = [tuple(int(i == j) for i in range(self.ngens)) for j in range(k)]
        incl = GroupHom(sub, self, IntMatrix.from_columns(cols, nrows=self.ngens))
        return sub, incl

    def free_quotient(self):
        """(Z^free_rank, quotient map) killing the torsion subgroup."""
        quo = FgAbGroup((), self.free_rank)
        k = self.torsion_count
        rows = [[int(j == k + i) for j in range(self.ngens)]
                for i in range(self.free_rank)]
        qmap = GroupHom(self, quo, IntMatrix(rows, ncols=self.ngens))
        return quo, qmap

    # isomorphism tests compare canonical forms; presentations are ignored
    def __eq__(self, other):
        return (isinstance(other, FgAbGroup)
                and self.invariant_factors == other.invariant_factors
                and self.free_rank == other.free_rank)

    def __hash__(self):
        return hash((self.invariant_factors, self.free_rank))

    def describe(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FgAbGroup({self.invariant_factors!r}, {self.free_rank!r})"


class GroupHom:
    """Homomorphism between FgAbGroups as a matrix on canonical generators.

    Construction checks well-definedness: each source relation d_i * e_i
    must land in the target's relation lattice.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, _unchecked=False):
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError("matrix shape does not match generator counts")
        self.source = source
        self.target = target
        self.matrix = matrix
        if not _unchecked:
            t_orders = target.generator_orders()
            for j, d in enumerate(source.generator_orders()):
                if d == 0:
                    continue
                for i in range(target.ngens):
                    v = d * matrix.entry(i, j)
                    if t_orders[i] == 0:
                        ok = v == 0
                    else:
                        ok = v % t_orders[i] == 0
                    if not ok:
                        raise ValueError(
                            f"not a homomorphism: relation {d}*g{j} "
                            "does not map to zero")

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.ngens), _unchecked=True)

    def __call__(self, coords):
        return self.target.reduce(self.matrix.apply(self.source.reduce(coords)))

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def __sub__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("difference of mismatched homomorphisms")
        return GroupHom(self.source, self.target, self.matrix - other.matrix)

    def is_zero(self):
        return all(self(tuple(int(i == j) for i in range(self.source.ngens)))
                   == self.target.zero() for j in range(self.source.ngens))

    def preimage(self, coords):
        """Some x with self(x) = coords, or None."""
        rel = self.target.relation_matrix()
        x = solve_mod(self.matrix, rel, self.target.reduce(coords))
        if x is None:
            return None
        return self.source.reduce(x)

    def cokernel_group(self):
        """target / image(self) with the quotient projection retained."""
        stacked = hstack(self.matrix, self.target.relation_matrix())
        lm = LatticeMap(Lattice(stacked.ncols), Lattice(self.target.ngens), stacked)
        return cokernel(lm)

    def is_surjective(self):
        return self.cokernel_group().is_trivial()

    def is_injective(self):
        grp, _ = kernel_of_hom(self)
        return grp.is_trivial()


def cokernel(lm):
    """Cokernel of a lattice map as an FgAbGroup presented over lm.target.

    >>> from .matrices import lattice_map
    >>> cokernel(lattice_map([[-2]])).describe()
    'Z/2'
    """
    sf = smith_normal_form(lm.matrix)
    m = lm.target.rank
    diag = sf.diagonal
    torsion_rows = [i for i, d in enumerate(diag) if d >= 2]
    free_rows = [i for i in range(m) if i >= len(diag) or diag[i] == 0]
    factors = [diag[i] for i in torsion_rows]
    rows = torsion_rows + free_rows
    proj = IntMatrix([sf.U.row(i) for i in rows], ncols=m)
    lift = IntMatrix.from_columns([sf.U_inv.column(i) for i in rows], nrows=m)
    return FgAbGroup(factors, len(free_rows), proj=proj, lift=lift)


def coinvariants(lattice, automorphisms):
    """Largest quotient of the lattice on which every automorphism acts
    trivially: the cokernel of the stacked (gamma - 1).

    >>> from .matrices import IntMatrix, Lattice
    >>> swap = IntMatrix([[0, 1], [1, 0]])
    >>> coinvariants(Lattice(2), [swap]).describe()
    'Z'
    """
    n = lattice.rank
    blocks = []
    for g in automorphisms:
        mat = g.matrix if isinstance(g, LatticeMap) else g
        if mat.shape != (n, n):
            raise ValueError("automorphism has the wrong shape")
        if not mat.is_unimodular():
            raise ValueError("not a lattice automorphism (determinant not ±1)")
        blocks.append(mat - IntMatrix.identity(n))
    stacked = hstack(*blocks) if blocks else IntMatrix.zeros(n, 0)
    return cokernel(LatticeMap(Lattice(stacked.ncols), lattice, stacked))


def induced_endomorphism(group, ambient_matrix):
    """Endomorphism of a presented group induced by an ambient lattice map.

    Raises if the ambient map does not descend.
    """
    mat = group.proj @ ambient_matrix @ group.lift
    return GroupHom(group, group, mat)


def kernel_of_hom(hom):
    """(kernel group, inclusion into the source) of a GroupHom.

    Solved by an integer system augmented with the target's relation
    columns; the subgroup is then presented modulo the source relations.
    """
    src, tgt = hom.source, hom.target
    n = src.ngens
    aug = hstack(hom.matrix, tgt.relation_matrix())
    kb = kernel_basis(aug)
    # solution sublattice of Z^n: spans of the x-parts, plus nothing else
    x_part = IntMatrix([kb.row(i) for i in range(n)], ncols=kb.ncols)
    basis = column_span_basis(x_part)
    # present the subgroup modulo the source relations, which it contains
    rel_cols = []
    for j in range(src.torsion_count):
        r = src.relation_matrix().column(j)
        c = solve(basis, r)
        if c is None:
            raise ValueError("source relation escapes the solution lattice")
        rel_cols.append(c)
    rel_in_basis = IntMatrix.from_columns(rel_cols, nrows=basis.ncols)
    grp = cokernel(LatticeMap(Lattice(rel_in_basis.ncols),
                              Lattice(basis.ncols), rel_in_basis))
    incl_cols = [src.reduce(basis.apply(grp.lift.column(j)))
                 for j in range(grp.ngens)]
    incl = GroupHom(grp, src, IntMatrix.from_columns(incl_cols, nrows=n))
    return grp, incl


def invariants_of_induced_action(group, endo):
    """Fixed subgroup of an endomorphism: (subgroup, inclusion).

    >>> g = FgAbGroup.from_invariants((4,))
    >>> triple = GroupHom(g, g, IntMatrix([[3]]))
    >>> sub, incl = invariants_of_induced_action(g, triple)
    >>> sub.describe(), incl.matrix.data
    ('Z/2', ((2,),))
    """
    if endo.source != group or endo.target != group:
        raise ValueError("endomorphism does not act on the given group")
    return kernel_of_hom(endo - GroupHom.identity(group))


def subgroup_coordinates(inclusion, coords):
    """Coordinates in the subgroup of an element known to lie in its image."""
    x = inclusion.preimage(coords)
    if x is None:
        raise ValueError("element does not lie in the subgroup")
    return x


class GroupCharacter:
    """Character of an FgAbGroup valued in the exact circle.

    Stored as one value per canonical generator; torsion constraints are
    enforced at construction.
    """

    __slots__ = ("domain", "values")

    def __init__(self, domain, values):
        values = tuple(values)
        if len(values) != domain.ngens:
            raise ValueError("one value per canonical generator is required")
        for v, d in zip(values, domain.generator_orders()):
            if d and not (v ** d).is_identity():
                raise ValueError(f"value of order-{d} generator must be {d}-torsion")
        self.domain = domain
        self.values = values

    @classmethod
    def trivial(cls, domain):
        return cls(domain, tuple(ExactCircle.one() for _ in range(domain.ngens)))

    def __call__(self, coords):
        coords = self.domain.reduce(coords)
        out = ExactCircle.one()
        for c, v in zip(coords, self.values):
            out = out * (v ** c)
        return out

    def __mul__(self, other):
        if self.domain != other.domain:
            raise ValueError("characters of different groups")
        return GroupCharacter(self.domain,
                              tuple(a * b for a, b in zip(self.values, other.values)))

    def inverse(self):
        return GroupCharacter(self.domain, tuple(v.inverse() for v in self.values))

    def precompose(self, hom):
        """Character of hom.source obtained by following hom first."""
        if hom.target != self.domain:
            raise ValueError("homomorphism does not land in the character's domain")
        vals = []
        for j in range(hom.source.ngens):
            col = hom.matrix.column(j)
            acc = ExactCircle.one()
            for c, v in zip(col, self.values):
                acc = acc * (v ** c)
            vals.append(acc)
        return GroupCharacter(hom.source, tuple(vals))

    def is_trivial(self):
        return all(v.is_identity() for v in self.values)

    def key(self):
        """Canonical total-order key (basis-dependent, deterministic)."""
        return tuple(v.sort_key() for v in self.values)

    def __eq__(self, other):
        return (isinstance(other, GroupCharacter) and self.domain == other.domain
                and self.values == other.values)

    def __hash__(self):
        return hash((self.domain, self.values))

    def __repr__(self):
        return f"GroupCharacter({self.domain!r}, {self.values!r})"


def character_restrict(character, inclusion):
    """Restriction of a character along a subgroup inclusion."""
    return character.precompose(inclusion)


def divisible_extension(character, inclusion):
    """Extend a character of a subgroup to the whole group.

    `inclusion` must be injective.  Existence follows from divisibility
    of the value group; the result is one canonical choice (n-th roots
    are taken with argument representative in [0, 1)), so two runs agree
    but the extension is unique only up to a character trivial on the
    subgroup.

    >>> amb = FgAbGroup.free(1)
    >>> sub = FgAbGroup.free(1)
    >>> incl = GroupHom(sub, amb, IntMatrix([[2]]))
    >>> chi = GroupCharacter(sub, (ExactCircle(1),))   # 2 |-> q
    >>> divisible_extension(chi, incl).values[0]
    ExactCircle(Fraction(1, 2), Fraction(0, 1))
    """
    if character.domain != inclusion.source:
        raise ValueError("character does not live on the inclusion's source")
    big = inclusion.target
    cols = hstack(inclusion.matrix, big.relation_matrix())
    targets = list(character.values) + [ExactCircle.one()] * big.torsion_count
    # want w in Hom(Z^ngens, circle) with w(col_l) = targets[l] for all l
    sf = smith_normal_form(cols.transpose())
    diag = sf.diagonal
    # transformed targets s = U * t  (integer combinations in the circle)
    s = []
    for i in range(sf.U.nrows):
        acc = ExactCircle.one()
        for c, t in zip(sf.U.row(i), targets):
            acc = acc * (t ** c)
        s.append(acc)
    y = []
    for i in range(big.ngens):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if i < len(s) and not s[i].is_identity():
                raise ValueError("character does not extend (inclusion not injective?)")
            y.append(ExactCircle.one())
        else:
            y.append(s[i].nth_root(d))
    for i in range(big.ngens, len(s)):
        if not s[i].is_identity():
            raise ValueError("character does not extend (inconsistent system)")
    w = []
    for i in range(big.ngens):
        acc = ExactCircle.one()
        for c, t in zip(sf.V.row(i), y):
            acc = acc * (t ** c)
        w.append(acc)
    return GroupCharacter(big, tuple(w))


def finite_dual(group):
    """The character group of a finite group (isomorphic to the group)."""
    if not group.is_finite():
        raise ValueError("dual of an infinite group is not finite")
    return FgAbGroup(group.invariant_factors, 0)


def all_characters(group, torsion=None):
    """All characters with values in the given torsion of the circle.

    For a finite group with `torsion=None` this enumerates the full dual.
    Free generators require an explicit `torsion` bound.
    """
    orders = group.generator_orders()
    if torsion is None:
        if not group.is_finite():
            raise ValueError("free generators need an explicit torsion bound")
        choice_sets = [[ExactCircle.root_of_unity(k, d) for k in range(d)]
                       for d in orders]
    else:
        n = int(torsion)
        choice_sets = []
        for d in orders:
            g = n if d == 0 else _gcd(d, n)
            choice_sets.append([ExactCircle.root_of_unity(k, g) for k in range(g)])
    for combo in iter_product(*choice_sets):
        yield GroupCharacter(group, combo)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
