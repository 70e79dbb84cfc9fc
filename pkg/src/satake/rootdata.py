"""Based root data, pinned automorphisms, Weyl groups, and folding.

Root data are recorded concretely: the character lattice is Z^n with the
standard dot pairing against the cocharacter side, roots and coroots are
integer vectors, and a marked subset of the roots is simple.  Weyl
groups are enumerated as sets of integer matrices by breadth-first
closure over the simple reflections, with a hard element cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import cokernel
from .matrices import IntMatrix, Lattice, LatticeMap, kernel, lattice_map

DEFAULT_WEYL_CAP = 10 ** 6


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured cap."""


class FoldingError(ValueError):
    """A diagram orbit is not of a foldable shape."""


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class BasedRootDatum:
    """(X, roots, X^, coroots) with a marked simple system.

    `roots[i]` pairs with `coroots[i]`; the pairing is the standard dot
    product between the character and cocharacter coordinate vectors.
    """

    char_lattice: Lattice
    roots: tuple
    cochar_lattice: Lattice
    coroots: tuple
    simple_indices: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "roots",
                           tuple(tuple(int(v) for v in r) for r in self.roots))
        object.__setattr__(self, "coroots",
                           tuple(tuple(int(v) for v in r) for r in self.coroots))
        object.__setattr__(self, "simple_indices",
                           tuple(int(i) for i in self.simple_indices))
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots must be in bijection")

    @property
    def rank(self):
        return self.char_lattice.rank

    @property
    def nroots(self):
        return len(self.roots)

    def pairing(self, x, yv):
        return _dot(x, yv)

    def simple_roots(self):
        return [self.roots[i] for i in self.simple_indices]

    def simple_coroots(self):
        return [self.coroots[i] for i in self.simple_indices]

    def cartan_entry(self, i, j):
        """<alpha_i, alpha_j^> over the simple system."""
        return _dot(self.roots[self.simple_indices[i]],
                    self.coroots[self.simple_indices[j]])

    def reflection_matrix(self, root_index):
        """s_alpha on the character lattice: x - <x, alpha^> alpha."""
        a = self.roots[root_index]
        av = self.coroots[root_index]
        n = self.rank
        return IntMatrix([[int(i == j) - a[i] * av[j] for j in range(n)]
                          for i in range(n)])

    def coreflection_matrix(self, root_index):
        """s_alpha on the cocharacter lattice: y - <alpha, y> alpha^."""
        a = self.roots[root_index]
        av = self.coroots[root_index]
        n = self.cochar_lattice.rank
        return IntMatrix([[int(i == j) - av[i] * a[j] for j in range(n)]
                          for i in range(n)])

    def simple_coefficients(self, root):
        """Rational coefficients of a root over the simple roots, or None."""
        simples = self.simple_roots()
        if not simples:
            return None if any(root) else ()
        cols = [list(s) for s in simples]
        mat = [[Fraction(cols[j][i]) for j in range(len(simples))]
               for i in range(self.rank)]
        rhs = [Fraction(v) for v in root]
        # exact Gaussian elimination on the overdetermined system
        rows = [mat[i] + [rhs[i]] for i in range(self.rank)]
        ncols = len(simples)
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            p = rows[r][c]
            rows[r] = [v / p for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        for i in range(r, len(rows)):
            if rows[i][ncols] != 0:
                return None
        coeffs = [Fraction(0)] * ncols
        for i, c in enumerate(pivots):
            coeffs[c] = rows[i][ncols]
        return tuple(coeffs)

    def positive_roots(self):
        """Roots whose simple coefficients are all >= 0."""
        out = []
        for r in self.roots:
            coeffs = self.simple_coefficients(r)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                out.append(r)
        return out

    def two_rho(self):
        """Sum of the positive roots."""
        acc = [0] * self.rank
        for r in self.positive_roots():
            acc = [a + b for a, b in zip(acc, r)]
        return tuple(acc)


def root_closure(simple_roots, simple_coroots, cap=10 ** 5):
    """All (root, coroot) pairs generated from the simple ones by the
    simple reflections, acting on both sides at once.  Deterministic
    breadth-first order; raises CapExceeded past `cap` pairs."""
    simples = [tuple(int(v) for v in r) for r in simple_roots]
    cosimples = [tuple(int(v) for v in r) for r in simple_coroots]
    if len(simples) != len(cosimples):
        raise ValueError("one coroot per simple root is required")
    for a, av in zip(simples, cosimples):
        if _dot(a, av) != 2:
            raise ValueError("simple pairing <alpha, alpha^> must be 2")
    seen = {}
    frontier = list(zip(simples, cosimples))
    for b, bv in frontier:
        seen[b] = bv
    while frontier:
        nxt = []
        for b, bv in frontier:
            for a, av in zip(simples, cosimples):
                p = _dot(b, av)
                pv = _dot(a, bv)
                nb = tuple(x - p * y for x, y in zip(b, a))
                nbv = tuple(x - pv * y for x, y in zip(bv, av))
                prev = seen.get(nb)
                if prev is None:
                    seen[nb] = nbv
                    nxt.append((nb, nbv))
                    if len(seen) > cap:
                        raise CapExceeded(f"root generation exceeded cap {cap}")
                elif prev != nbv:
                    raise ValueError("inconsistent coroots generated")
        frontier = nxt
    roots = sorted(seen)
    return roots, [seen[r] for r in roots]


def datum_from_simples(simple_roots, simple_coroots, label="", cap=10 ** 5):
    """Based root datum generated by reflection closure of a simple system."""
    roots, coroots = root_closure(simple_roots, simple_coroots, cap)
    rank = len(simple_roots[0]) if simple_roots else 0
    corank = len(simple_coroots[0]) if simple_coroots else rank
    simple_idx = tuple(roots.index(tuple(int(v) for v in r))
                       for r in simple_roots)
    return BasedRootDatum(Lattice(rank, "X"), tuple(roots),
                          Lattice(corank, "X^"), tuple(coroots),
                          simple_idx, label=label)


def validate(datum):
    """Structural checks; returns a list of violation strings (empty = valid).

    Checked: <alpha, alpha^> = 2 for every pair; each reflection permutes
    the root set (and dually the coroot set); every root is an integer
    combination of simple roots with coefficients all of one sign.
    """
    problems = []
    root_set = set(datum.roots)
    coroot_set = set(datum.coroots)
    if len(root_set) != len(datum.roots):
        problems.append("duplicate roots")
    for idx, (a, av) in enumerate(zip(datum.roots, datum.coroots)):
        if len(a) != datum.rank or len(av) != datum.cochar_lattice.rank:
            problems.append(f"root/coroot {idx} has wrong length")
            continue
        p = _dot(a, av)
        if p != 2:
            problems.append(f"<root {idx}, coroot {idx}> = {p}, expected 2")
    if problems:
        return problems
    for i in datum.simple_indices:
        if not 0 <= i < len(datum.roots):
            problems.append(f"simple index {i} out of range")
    if problems:
        return problems
    for idx in range(len(datum.roots)):
        s = datum.reflection_matrix(idx)
        image = {s.apply(r) for r in datum.roots}
        if image != root_set:
            problems.append(f"reflection in root {idx} does not permute the roots")
        sv = datum.coreflection_matrix(idx)
        coimage = {sv.apply(r) for r in datum.coroots}
        if coimage != coroot_set:
            problems.append(f"coreflection in root {idx} does not permute the coroots")
    for idx, r in enumerate(datum.roots):
        coeffs = datum.simple_coefficients(r)
        if coeffs is None:
            problems.append(f"root {idx} is not in the span of the simple roots")
            continue
        if any(c.denominator != 1 for c in coeffs):
            problems.append(f"root {idx} is not an integer combination of simple roots")
            continue
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            problems.append(f"root {idx} has mixed-sign simple coefficients")
    return problems


def dual_datum(datum):
    """Swap the two sides; applying twice returns the original."""
    return BasedRootDatum(
        char_lattice=datum.cochar_lattice,
        roots=datum.coroots,
        cochar_lattice=datum.char_lattice,
        coroots=datum.roots,
        simple_indices=datum.simple_indices,
        label=(datum.label + "^") if datum.label else "")


@dataclass(frozen=True)
class PinnedAutomorphism:
    """Finite-order lattice automorphism preserving the based structure."""

    matrix: IntMatrix
    order: int

    def __post_init__(self):
        if not self.matrix.is_unimodular():
            raise ValueError("pinned automorphism must be unimodular")
        if self.order < 1 or not self.matrix.power(self.order).is_identity():
            raise ValueError("declared order is wrong")

    def inverse(self):
        return PinnedAutomorphism(self.matrix.power(self.order - 1), self.order)


def pinned_automorphism(datum, matrix):
    """Build a PinnedAutomorphism, checking it permutes roots, coroots and
    the simple set; for a torus datum (no roots) only finite order is checked."""
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix(matrix)
    if matrix.shape != (datum.rank, datum.rank):
        raise ValueError("automorphism shape does not match the lattice")
    order = matrix.multiplicative_order(cap=10 ** 4)
    aut = PinnedAutomorphism(matrix, order)
    problems = pinned_violations(datum, aut)
    if problems:
        raise ValueError("; ".join(problems))
    return aut


def pinned_violations(datum, aut):
    problems = []
    if datum.nroots == 0:
        return problems
    root_index = {r: i for i, r in enumerate(datum.roots)}
    dual = aut.matrix.inverse_unimodular().transpose()
    for i, r in enumerate(datum.roots):
        img = aut.matrix.apply(r)
        j = root_index.get(img)
        if j is None:
            problems.append(f"image of root {i} is not a root")
            continue
        if dual.apply(datum.coroots[i]) != datum.coroots[j]:
            problems.append(f"coroot of root {i} is not carried to the matching coroot")
    simple_set = {datum.roots[i] for i in datum.simple_indices}
    for i in datum.simple_indices:
        if aut.matrix.apply(datum.roots[i]) not in simple_set:
            problems.append(f"simple root {i} is not carried to a simple root")
    return problems


def identity_pin(datum):
    return PinnedAutomorphism(IntMatrix.identity(datum.rank), 1)


@dataclass(frozen=True)
class GaloisAction:
    """A pair of pinned automorphisms with the tame twist relation
    sigma tau sigma^-1 = tau^twist."""

    tau: PinnedAutomorphism
    sigma: PinnedAutomorphism
    twist: int = 1

    def __post_init__(self):
        t, s = self.tau.matrix, self.sigma.matrix
        lhs = s @ t @ s.inverse_unimodular()
        if lhs != t.power(self.twist % self.tau.order if self.tau.order > 1
                          else 1):
            raise ValueError("twist relation sigma tau sigma^-1 = tau^j fails")
        if self.tau.order > 1 and _gcd(self.twist, self.tau.order) != 1:
            raise ValueError("twist exponent must be invertible mod ord(tau)")


def galois_action(datum, tau_matrix, sigma_matrix, twist=1):
    tau = pinned_automorphism(datum, tau_matrix)
    sigma = pinned_automorphism(datum, sigma_matrix)
    return GaloisAction(tau, sigma, twist)


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


class WeylGroup:
    """A finite set of integer matrices closed under multiplication."""

    __slots__ = ("elements", "generators")

    def __init__(self, elements, generators=()):
        self.elements = tuple(sorted(elements, key=lambda m: m.key()))
        self.generators = tuple(generators)

    @property
    def order(self):
        return len(self.elements)

    def element_set(self):
        return frozenset(self.elements)

    def __contains__(self, m):
        return m in self.element_set()

    def __iter__(self):
        return iter(self.elements)

    def same_group(self, other):
        return self.element_set() == other.element_set()


def mulclose(generators, cap=DEFAULT_WEYL_CAP):
    """Closure of a generator list under multiplication (BFS, deterministic)."""
    gens = sorted(set(generators), key=lambda m: m.key())
    if not gens:
        return [IntMatrix.identity(0)]
    n = gens[0].nrows
    seen = {IntMatrix.identity(n)}
    frontier = [IntMatrix.identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                wg = w @ g
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"group enumeration exceeded cap {cap}")
        frontier = sorted(nxt, key=lambda m: m.key())
    return seen


def weyl_group(datum, side="char", cap=DEFAULT_WEYL_CAP):
    """The Weyl group as matrices on the chosen side of the datum.

    side="char" acts on the character lattice, side="cochar" on the
    cocharacter lattice.  Raises CapExceeded past `cap` elements.
    """
    if side == "char":
        gens = [datum.reflection_matrix(i) for i in datum.simple_indices]
        n = datum.rank
    elif side == "cochar":
        gens = [datum.coreflection_matrix(i) for i in datum.simple_indices]
        n = datum.cochar_lattice.rank
    else:
        raise ValueError("side must be 'char' or 'cochar'")
    if not gens:
        return WeylGroup([IntMatrix.identity(n)], [])
    return WeylGroup(mulclose(gens, cap), gens)


def fixed_weyl_subgroup(weyl, commuting_with):
    """Subgroup of elements commuting with every given matrix."""
    mats = [m.matrix if isinstance(m, (PinnedAutomorphism, LatticeMap)) else m
            for m in commuting_with]
    kept = [w for w in weyl.elements
            if all(w @ m == m @ w for m in mats)]
    return WeylGroup(kept, ())


def _simple_orbit_partition(datum, tau):
    """tau-orbits on the simple indices (as index tuples, in first-seen order)."""
    simples = list(datum.simple_indices)
    root_pos = {datum.roots[i]: i for i in simples}
    seen = set()
    orbits = []
    for i in simples:
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        cur = i
        while True:
            img = tau.matrix.apply(datum.roots[cur])
            nxt = root_pos.get(img)
            if nxt is None:
                raise FoldingError("automorphism does not permute the simple roots")
            if nxt == i:
                break
            if nxt in seen:
                raise FoldingError("automorphism does not permute the simple roots")
            orbit.append(nxt)
            seen.add(nxt)
            cur = nxt
        orbits.append(tuple(orbit))
    return orbits


def _orbit_type(datum, orbit):
    """'a1' for pairwise-orthogonal orbits, 'a2' for an adjacent pair."""
    pairs = [(i, j) for i in orbit for j in orbit if i < j]
    adjacent = [(i, j) for (i, j) in pairs
                if _dot(datum.roots[i], datum.coroots[j]) != 0]
    if not adjacent:
        return "a1"
    if len(orbit) == 2 and len(adjacent) == 1:
        i, j = adjacent[0]
        if (_dot(datum.roots[i], datum.coroots[j]) == -1
                and _dot(datum.roots[j], datum.coroots[i]) == -1):
            return "a2"
    raise FoldingError(
        f"orbit {orbit} spans a subsystem that is neither A1^k nor A2")


def folded_generators(datum, tau, side="char"):
    """Longest elements of the orbit parabolics: one matrix per tau-orbit
    of simple roots.  A1^k orbits give the product of the commuting
    reflections; adjacent A2 pairs give s_i s_j s_i.
    """
    refl = (datum.reflection_matrix if side == "char"
            else datum.coreflection_matrix)
    out = []
    for orbit in _simple_orbit_partition(datum, tau):
        kind = _orbit_type(datum, orbit)
        if kind == "a1":
            m = IntMatrix.identity(datum.rank if side == "char"
                                   else datum.cochar_lattice.rank)
            for i in sorted(orbit):
                m = m @ refl(i)
        else:
            i, j = sorted(orbit)
            m = refl(i) @ refl(j) @ refl(i)
        out.append(m)
    return out


@dataclass(frozen=True)
class RestrictedRootData:
    """Folded data for a pinned automorphism tau.

    `invariants` includes the saturated fixed lattice X^tau into X.
    `projection` maps X onto the torsion-free tau-coinvariants, the
    character lattice of the fixed subtorus; the restricted roots live
    there.  `datum` may be non-reduced (flagged); `reduced_datum` keeps
    only indivisible roots.
    """

    invariants: LatticeMap
    projection: LatticeMap
    datum: BasedRootDatum
    non_reduced: bool
    reduced_datum: BasedRootDatum
    type_name: str


def restricted_root_data(datum, tau, side_label=""):
    """Restricted (folded) root data of a pinned automorphism.

    Restricted roots are the images of the roots in the torsion-free
    tau-coinvariants of X; restricted coroots are tau-invariant orbit
    sums of coroots, doubled on orbits spanning an A2 (which is what
    produces the non-reduced case).  Raises FoldingError when the folded
    images fail the root-datum axioms.
    """
    n = datum.rank
    tau_m = tau.matrix
    inv = kernel(lattice_map(tau_m - IntMatrix.identity(n),
                             source=datum.char_lattice,
                             target=datum.char_lattice))
    coinv = cokernel(lattice_map(tau_m - IntMatrix.identity(n),
                                 source=datum.char_lattice,
                                 target=datum.char_lattice))
    k = coinv.torsion_count
    r = coinv.free_rank
    proj_free = IntMatrix([coinv.proj.row(k + i) for i in range(r)], ncols=n)
    lift_free = IntMatrix.from_columns(
        [coinv.lift.column(k + i) for i in range(r)], nrows=n)
    projection = LatticeMap(datum.char_lattice, Lattice(r, "X_tau/tors"),
                            proj_free)

    dual_tau = tau_m.inverse_unimodular().transpose()
    root_index = {rt: i for i, rt in enumerate(datum.roots)}

    # orbit partition on the full root set
    seen = set()
    orbit_list = []
    for i, rt in enumerate(datum.roots):
        if i in seen:
            continue
        orbit = [i]
        seen.add(i)
        cur = tau_m.apply(rt)
        while root_index[cur] != i:
            j = root_index[cur]
            orbit.append(j)
            seen.add(j)
            cur = tau_m.apply(cur)
        orbit_list.append(tuple(orbit))

    restricted = {}
    for orbit in orbit_list:
        members = [datum.roots[i] for i in orbit]
        image = proj_free.apply(members[0])
        a2 = any(tuple(x + y for x, y in zip(members[p], members[q])) in root_index
                 for p in range(len(members)) for q in range(len(members)) if p != q)
        cosum = [0] * datum.cochar_lattice.rank
        for i in orbit:
            cosum = [a + b for a, b in zip(cosum, datum.coroots[i])]
        if a2:
            cosum = [2 * a for a in cosum]
        if dual_tau.apply(cosum) != tuple(cosum):
            raise FoldingError("restricted coroot is not tau-invariant")
        # coroot as a functional on the coinvariant lattice
        cofun = tuple(_dot(cosum, lift_free.column(j)) for j in range(r))
        prev = restricted.get(image)
        if prev is not None and prev != cofun:
            raise FoldingError("inconsistent coroots for one restricted root")
        restricted[image] = cofun

    roots = sorted(restricted)
    coroots = [restricted[rt] for rt in roots]
    pos = {rt: i for i, rt in enumerate(roots)}
    simple = []
    for orbit in _simple_orbit_partition(datum, tau):
        img = proj_free.apply(datum.roots[orbit[0]])
        if pos[img] not in simple:
            simple.append(pos[img])
    full = BasedRootDatum(Lattice(r, "X_tau/tors"), tuple(roots),
                          Lattice(r, "(X^)^tau"), tuple(coroots),
                          tuple(simple),
                          label=side_label or "restricted")
    root_set = set(roots)
    divisible = {rt for rt in roots
                 if all(v % 2 == 0 for v in rt)
                 and tuple(v // 2 for v in rt) in root_set}
    non_reduced = bool(divisible)
    if non_reduced:
        keep = [i for i, rt in enumerate(roots) if rt not in divisible]
        remap = {old: new for new, old in enumerate(keep)}
        reduced = BasedRootDatum(full.char_lattice,
                                 tuple(roots[i] for i in keep),
                                 full.cochar_lattice,
                                 tuple(coroots[i] for i in keep),
                                 tuple(remap[i] for i in full.simple_indices),
                                 label=(full.label + " (reduced)"))
    else:
        reduced = full
    problems = validate(reduced)
    if problems:
        raise FoldingError("folded images fail root axioms: " + "; ".join(problems))
    name = detect_type(reduced)
    if non_reduced:
        name = f"BC-type (non-reduced), reduced {name}"
    return RestrictedRootData(invariants=inv, projection=projection,
                              datum=full, non_reduced=non_reduced,
                              reduced_datum=reduced, type_name=name)


def detect_type(datum):
    """Cartan-type label of a reduced based root datum from its simple system.

    Rank-2 double-bond systems are reported as C2 (= B2).  Unrecognized
    shapes come back as 'unknown'.
    """
    k = len(datum.simple_indices)
    if k == 0:
        return "torus"
    cartan = [[datum.cartan_entry(i, j) for j in range(k)] for i in range(k)]
    unvisited = set(range(k))
    names = []
    while unvisited:
        comp = [min(unvisited)]
        queue = [min(unvisited)]
        unvisited.discard(comp[0])
        while queue:
            i = queue.pop()
            for j in list(unvisited):
                if cartan[i][j] != 0:
                    comp.append(j)
                    unvisited.discard(j)
                    queue.append(j)
        names.append(_component_type(cartan, sorted(comp)))
    return " x ".join(sorted(names))


def _component_type(cartan, comp):
    n = len(comp)
    if n == 1:
        return "A1"
    bonds = {}
    degree = {i: 0 for i in comp}
    for a in range(n):
        for b in range(a + 1, n):
            i, j = comp[a], comp[b]
            m = cartan[i][j] * cartan[j][i]
            if m:
                bonds[(i, j)] = m
                degree[i] += 1
                degree[j] += 1
    triple = [e for e, m in bonds.items() if m == 3]
    double = [e for e, m in bonds.items() if m == 2]
    if triple:
        return "G2" if n == 2 and not double else "unknown"
    branch = [i for i, d in degree.items() if d >= 3]
    if branch:
        if double or len(branch) > 1:
            return "unknown"
        arms = sorted(_arm_lengths(bonds, branch[0], comp))
        if arms[:2] == [1, 1]:
            return f"D{n}"
        if arms == [1, 2, 2] and n == 6:
            return "E6"
        if arms == [1, 2, 3] and n == 7:
            return "E7"
        if arms == [1, 2, 4] and n == 8:
            return "E8"
        return "unknown"
    if not double:
        return f"A{n}"
    if len(double) > 1:
        return "unknown"
    (i, j) = double[0]
    if n == 2:
        return "C2"
    # the double bond must sit at an end of the chain
    end = i if degree[i] == 1 else (j if degree[j] == 1 else None)
    if end is None:
        return "F4" if n == 4 else "unknown"
    inner = j if end == i else i
    # <alpha_inner, alpha_end^> = -2 means the end root is short: type B
    if cartan[inner][end] == -2:
        return f"B{n}"
    if cartan[end][inner] == -2:
        return f"C{n}"
    return "unknown"


def _arm_lengths(bonds, center, comp):
    adj = {i: set() for i in comp}
    for (i, j) in bonds:
        adj[i].add(j)
        adj[j].add(i)
    lengths = []
    for start in sorted(adj[center]):
        length = 1
        prev, cur = center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths
