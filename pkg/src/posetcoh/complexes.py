"""Cochain complexes of presented groups and homology with lift data.

Homology at a middle group B = Z^g / relations is presented in three steps:
the cycle lattice {x : d_out(x) lies in the target relation lattice} is the
projection of an explicit kernel, its generating columns become the homology
generators, and their relation lattice is again a kernel projection.  The
generator-to-cycle matrix is kept, so cocycles can be expressed in homology
coordinates and homology classes lifted back; that is exactly what an induced
map between two complexes needs.
"""

from __future__ import annotations

from .groups import (
    CanonicalGroup,
    GroupHom,
    PresentedAbGroup,
    canonical_form,
    hom_well_defined,
    homs_equal,
    is_zero_hom,
)
from .linalg import IntMatrix, snf


class ComplexError(ValueError):
    """Raised when data fails to form a complex or a chain map."""


class ProductGroup:
    """A finite product of presented groups with named coordinates."""

    __slots__ = ("names", "factors", "offsets", "group")

    def __init__(self, names, factors):
        names = tuple(names)
        factors = tuple(factors)
        if len(names) != len(factors):
            raise ValueError("coordinate name count mismatch")
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be distinct")
        offsets = []
        total = 0
        for f in factors:
            offsets.append(total)
            total += f.generators
        self.names = names
        self.factors = factors
        self.offsets = tuple(offsets)
        rel = IntMatrix.block_diag([f.relations for f in factors]) if factors else None
        self.group = PresentedAbGroup(total, rel)

    @classmethod
    def zero(cls):
        return cls((), ())

    def coordinate_range(self, k):
        start = self.offsets[k]
        return range(start, start + self.factors[k].generators)

    def position(self, name):
        return self.names.index(name)

    def projection(self, k):
        rows = [
            [1 if j == i else 0 for j in range(self.group.generators)]
            for i in self.coordinate_range(k)
        ]
        matrix = IntMatrix(self.factors[k].generators, self.group.generators, rows)
        return GroupHom(self.group, self.factors[k], matrix)

    def __len__(self):
        return len(self.factors)


class Complex:
    """C^0 -> C^1 -> ... -> C^N with d(n+1) after d(n) equal to zero.

    `groups[n]` is a ProductGroup and `diffs[n]` maps degree n to degree n+1;
    both the well-definedness of every differential and the vanishing of all
    composites are checked at construction time.
    """

    __slots__ = ("groups", "diffs")

    def __init__(self, groups, diffs):
        self.groups = list(groups)
        self.diffs = list(diffs)
        if len(self.diffs) != max(len(self.groups) - 1, 0):
            raise ComplexError("need one differential between consecutive degrees")
        for n, d in enumerate(self.diffs):
            if d.source != self.groups[n].group or d.target != self.groups[n + 1].group:
                raise ComplexError("differential %d endpoint mismatch" % n)
            if not hom_well_defined(d):
                raise ComplexError("differential %d is not well defined" % n)
        for n in range(len(self.diffs) - 1):
            if not is_zero_hom(self.diffs[n + 1].compose(self.diffs[n])):
                raise ComplexError("composite of differentials %d and %d is nonzero" % (n, n + 1))

    def top_degree(self):
        return len(self.groups) - 1

    def incoming(self, n):
        if 1 <= n <= len(self.diffs):
            return self.diffs[n - 1]
        return GroupHom.zero(PresentedAbGroup.zero(), self.groups[n].group)

    def outgoing(self, n):
        if n < len(self.diffs):
            return self.diffs[n]
        return GroupHom.zero(self.groups[n].group, PresentedAbGroup.zero())

    def homology(self, n):
        if not 0 <= n <= self.top_degree():
            raise ComplexError("degree %d outside the built range" % n)
        return homology_at(self.incoming(n), self.outgoing(n))

    def homology_group(self, n):
        if n > self.top_degree():
            return CanonicalGroup(0)
        return canonical_form(self.homology(n).group)


class HomologyData:
    """A homology presentation together with its cycle-lift matrix.

    Column j of `cycles` is a middle-group vector representing generator j;
    `coordinates` inverts that correspondence for arbitrary cycle vectors.
    """

    __slots__ = ("group", "middle", "cycles", "_dec")

    def __init__(self, group, middle, cycles):
        self.group = group
        self.middle = middle
        self.cycles = cycles
        self._dec = None

    def lift(self, j):
        return self.cycles.column(j)

    def lift_combination(self, vector):
        return self.cycles.apply(vector)

    def coordinates(self, cycle_vector):
        """Express a middle-group cycle as a vector on homology generators."""
        if self._dec is None:
            self._dec = snf(self.cycles)
        y = self._dec.solve(cycle_vector)
        if y is None:
            raise ComplexError("vector is not a cycle of this homology computation")
        return y


def homology_at(d_in, d_out):
    """Homology ker(d_out)/im(d_in) at the shared middle group.

    Both kernels below are kernels of integer matrices augmented with the
    relevant relation lattices, projected back to the leading block; the
    projections generate exactly the cycle lattice and its relation lattice.
    """
    if d_in.target != d_out.source:
        raise ComplexError("homology needs a shared middle group")
    middle = d_out.source
    if not is_zero_hom(d_out.compose(d_in)):
        raise ComplexError("differentials do not compose to zero")
    g = middle.generators
    out_combined = d_out.matrix.hstack(d_out.target.relations)
    cycles = snf(out_combined).kernel_basis().take_rows(range(g))
    boundary_sources = cycles.hstack(d_in.matrix).hstack(middle.relations)
    relations = snf(boundary_sources).kernel_basis().take_rows(range(cycles.cols))
    return HomologyData(PresentedAbGroup(cycles.cols, relations), middle, cycles)


class ChainMap:
    """Degreewise homomorphisms between two complexes."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.maps = list(maps)
        if len(self.maps) != len(source.groups):
            raise ComplexError("need one map per source degree")

    def verify(self, degrees=None):
        """Check commutation with the differentials, naming the bad degree."""
        if degrees is None:
            degrees = range(len(self.source.diffs))
        for n in degrees:
            if not 0 <= n < len(self.source.diffs):
                continue
            if n + 1 >= len(self.maps) or n + 1 > self.target.top_degree():
                continue
            left = self.target.diffs[n].compose(self.maps[n])
            right = self.maps[n + 1].compose(self.source.diffs[n])
            if not homs_equal(left, right):
                raise ComplexError("chain map does not commute at degree %d" % n)


def induced_on_homology(chain_map, n):
    """The well-defined map on degree-n homology along a chain map."""
    chain_map.verify(degrees=[n - 1, n])
    src = chain_map.source.homology(n)
    if n > chain_map.target.top_degree():
        # target complex is zero there; so is its homology
        tgt_group = PresentedAbGroup.zero()
        matrix = IntMatrix.zero(0, src.group.generators)
        return GroupHom(src.group, tgt_group, matrix)
    tgt = chain_map.target.homology(n)
    cols = []
    for j in range(src.group.generators):
        image = chain_map.maps[n].apply(src.lift(j))
        cols.append(tgt.coordinates(image))
    matrix = (
        IntMatrix.from_columns(cols, nrows=tgt.group.generators)
        if cols
        else IntMatrix.zero(tgt.group.generators, 0)
    )
    hom = GroupHom(src.group, tgt.group, matrix)
    assert hom_well_defined(hom)
    return hom


def simplicial_homology(chain_sets, n):
    """H_n of the chain complex of free groups on strict chains.

    `chain_sets` lists the ChainSets of an order complex by degree; boundaries
    are alternating sums of face deletions.
    """
    if n < 0 or n >= len(chain_sets) or len(chain_sets[n]) == 0:
        return CanonicalGroup(0)
    d_out = _boundary_hom(chain_sets, n)
    d_in = _boundary_hom(chain_sets, n + 1)
    if d_in is None:
        top = PresentedAbGroup.free(len(chain_sets[n]))
        d_in = GroupHom.zero(PresentedAbGroup.zero(), top)
    return canonical_form(homology_at(d_in, d_out).group)


def _boundary_hom(chain_sets, n):
    """Boundary from degree n to degree n-1, or None when degree n is absent."""
    if n >= len(chain_sets) or len(chain_sets[n]) == 0:
        return None
    source = PresentedAbGroup.free(len(chain_sets[n]))
    if n == 0:
        return GroupHom.zero(source, PresentedAbGroup.zero())
    below = {chain: k for k, chain in enumerate(chain_sets[n - 1].chains)}
    target = PresentedAbGroup.free(len(chain_sets[n - 1]))
    data = [[0] * source.generators for _ in range(target.generators)]
    for col, chain in enumerate(chain_sets[n].chains):
        for i in range(n + 1):
            face = chain[:i] + chain[i + 1 :]
            data[below[face]][col] += (-1) ** i
    return GroupHom(source, target, IntMatrix(target.generators, source.generators, data))


class AcyclicityVerdict:
    """Either acyclic, or the first failing degree with its homology group."""

    __slots__ = ("acyclic", "degree", "group", "via")

    def __init__(self, acyclic, degree=None, group=None, via="homology"):
        self.acyclic = acyclic
        self.degree = degree
        self.group = group
        self.via = via

    def __bool__(self):
        return self.acyclic

    def __repr__(self):
        if self.acyclic:
            return "AcyclicityVerdict(acyclic, via=%s)" % self.via
        return "AcyclicityVerdict(fails at degree %d with %s)" % (
            self.degree,
            self.group.render(),
        )


def acyclicity_check(poset, shortcuts=True):
    """Whether the order complex has the homology of a point.

    A disconnected comparability graph fails at degree 0 before any matrix
    work; a least element makes the complex a cone and, with shortcuts on,
    settles the verdict without homology.  Otherwise H_n is computed for all
    degrees up to the longest chain length (it vanishes above).
    """
    from .poset import chains

    n = len(poset.elements)
    seen = set()
    components = 0
    for start in range(n):
        if start in seen:
            continue
        components += 1
        stack = [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            for j in poset.down[i] | poset.up[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    if components > 1:
        return AcyclicityVerdict(False, 0, CanonicalGroup(components), via="components")
    if shortcuts:
        for i in range(n):
            if len(poset.up[i]) == n:
                return AcyclicityVerdict(True, via="least-element")
    height = poset.height()
    complex_chains = [chains(poset, k) for k in range(height + 1)]
    start = 0 if not shortcuts else 1
    for degree in range(start, height + 1):
        h = simplicial_homology(complex_chains, degree)
        expected = CanonicalGroup(1) if degree == 0 else CanonicalGroup(0)
        if h != expected:
            return AcyclicityVerdict(False, degree, h)
    return AcyclicityVerdict(True, via="homology")
