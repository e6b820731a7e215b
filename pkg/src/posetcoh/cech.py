"""Cech and topos cohomology of presheaves on a finite Alexandrov space.

A presheaf is stored by its values on the intersection poset of the minimal
basic opens; both cohomology theories in scope depend on nothing else.  The
Cech groups are derived limits over that node poset, the topos groups are
derived limits of the diagram pulled back to the underlying poset along the
principal-open assignment, and the comparison map is induced by the cochain
map that evaluates a node cochain on chains of principal opens.  An ordered
Cech complex over tuples of basic opens provides a second, independent route
to the Cech groups.
"""

from __future__ import annotations

from .complexes import ChainMap, Complex, ProductGroup, induced_on_homology
from .diagrams import (
    Diagram,
    DiagramError,
    derived_limit,
    random_diagram,
    sheafify_value,
)
from .groups import GroupHom, PresentedAbGroup, canonical_form, is_isomorphism
from .linalg import IntMatrix
from .poset import IntersectionPoset, chains


class Presheaf:
    """Abelian groups on the intersection poset, restriction on reverse inclusion."""

    __slots__ = ("intersection", "diagram", "_pulled", "_rho")

    def __init__(self, intersection, diagram):
        nodes = intersection.poset
        if diagram.base.elements != nodes.elements or diagram.base.down != nodes.down:
            raise DiagramError("presheaf diagram must live on the intersection poset")
        self.intersection = intersection
        self.diagram = diagram
        self._pulled = None
        self._rho = None

    @property
    def space(self):
        return self.intersection.base

    def node_value(self, k):
        return self.diagram.value(k)

    def pulled_diagram(self):
        """The diagram on the base poset with value(i) = presheaf(basic open of i)."""
        if self._pulled is None:
            lam = self.intersection.lambda_map
            values = [self.diagram.value(lam[i]) for i in range(len(self.space))]
            maps = {
                (high, low): self.diagram.map(lam[high], lam[low])
                for low, high in self.space.covers()
            }
            self._pulled = Diagram(self.space, values, maps)
        return self._pulled

    def cech_complex(self):
        return self.diagram.reduced_complex()

    def topos_complex(self):
        return self.pulled_diagram().reduced_complex()

    def comparison_chain_map(self):
        """The cochain map from node cochains to principal-chain cochains.

        A cochain on strictly decreasing node chains is read off on the chains
        of principal opens; every block is an identity because the coordinate
        groups agree.  Commutation with both differentials is asserted in all
        degrees before any induced map is taken.
        """
        if self._rho is None:
            source = self.cech_complex()
            target = self.topos_complex()
            lam = self.intersection.lambda_map
            maps = []
            for n in range(len(source.groups)):
                if n > target.top_degree():
                    maps.append(
                        GroupHom.zero(source.groups[n].group, PresentedAbGroup.zero())
                    )
                    continue
                src, tgt = source.groups[n], target.groups[n]
                node_chains = chains(self.intersection.poset, n)
                position = {c: k for k, c in enumerate(node_chains.chains)}
                data = [[0] * src.group.generators for _ in range(tgt.group.generators)]
                for row_k, chain in enumerate(chains(self.space, n).chains):
                    col_k = position[tuple(lam[i] for i in chain)]
                    block = self.diagram.value(lam[chain[-1]]).generators
                    for t in range(block):
                        data[tgt.offsets[row_k] + t][src.offsets[col_k] + t] = 1
                matrix = IntMatrix(tgt.group.generators, src.group.generators, data)
                maps.append(GroupHom(src.group, tgt.group, matrix))
            rho = ChainMap(source, target, maps)
            rho.verify()
            self._rho = rho
        return self._rho


def cech_cohomology(presheaf, n):
    """H^n of the covering by all minimal basic opens."""
    return derived_limit(presheaf.diagram, n)


def topos_cohomology(presheaf, n):
    """H^n of the generated sheaf, as a derived limit over the base poset."""
    return derived_limit(presheaf.pulled_diagram(), n)


def comparison_map(presheaf, n):
    """The canonical homomorphism from degree-n Cech to topos cohomology."""
    if n < 0:
        raise DiagramError("degree must be nonnegative")
    rho = presheaf.comparison_chain_map()
    if n > rho.source.top_degree():
        return GroupHom.zero(PresentedAbGroup.zero(), PresentedAbGroup.zero())
    return induced_on_homology(rho, n)


def cech_ordered_complex(presheaf, order=None):
    """The alternating Cech complex over increasing tuples of basic opens.

    `order` is a total order on the base elements (a sequence of names); the
    default is the element order of the base poset.  A tuple contributes the
    presheaf value at the node of its intersection; tuples with empty
    intersection are simply absent, so the complex stops at the last populated
    degree.  Its cohomology must agree with `cech_cohomology` in every degree
    no matter which order is chosen.
    """
    space = presheaf.space
    if order is None:
        sequence = list(range(len(space)))
    else:
        sequence = [space.index[name] for name in order]
        if sorted(sequence) != list(range(len(space))):
            raise DiagramError("order must list every element exactly once")
    node_at = {node.indices: k for k, node in enumerate(presheaf.intersection.nodes)}

    def meet(tup):
        common = space.down[tup[0]]
        for i in tup[1:]:
            common = common & space.down[i]
        return node_at[common] if common else None

    levels = []
    degree = 0
    while True:
        here = []
        for tup in _increasing_tuples(sequence, degree + 1):
            node = meet(tup)
            if node is not None:
                here.append((tup, node))
        if not here:
            break
        levels.append(here)
        degree += 1

    groups = []
    for here in levels:
        names = ["&".join(space.elements[i] for i in tup) for tup, _ in here]
        groups.append(ProductGroup(names, [presheaf.node_value(w) for _, w in here]))
    diffs = []
    for n in range(len(levels) - 1):
        src, tgt = groups[n], groups[n + 1]
        position = {tup: k for k, (tup, _) in enumerate(levels[n])}
        data = [[0] * src.group.generators for _ in range(tgt.group.generators)]
        for row_k, (tup, node) in enumerate(levels[n + 1]):
            for drop in range(len(tup)):
                face = tup[:drop] + tup[drop + 1 :]
                col_k = position[face]
                block = presheaf.diagram.map(levels[n][col_k][1], node).matrix
                sign = (-1) ** drop
                for i in range(block.rows):
                    for j in range(block.cols):
                        if block.entries[i][j]:
                            data[tgt.offsets[row_k] + i][src.offsets[col_k] + j] += (
                                sign * block.entries[i][j]
                            )
        matrix = IntMatrix(tgt.group.generators, src.group.generators, data)
        diffs.append(GroupHom(src.group, tgt.group, matrix))
    return Complex(groups, diffs)


def _increasing_tuples(sequence, size):
    def extend(prefix, start):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for k in range(start, len(sequence)):
            prefix.append(sequence[k])
            yield from extend(prefix, k + 1)
            prefix.pop()

    yield from extend([], 0)


class ComparisonRow:
    """One degree of the comparison: both groups, the map, and the verdict."""

    __slots__ = ("degree", "cech", "topos", "map", "iso")

    def __init__(self, degree, hom):
        self.degree = degree
        self.cech = canonical_form(hom.source)
        self.topos = canonical_form(hom.target)
        self.map = hom
        self.iso = is_isomorphism(hom)


class ComparisonReport:
    """Per-degree comparison rows up to a degree cap."""

    __slots__ = ("rows", "cap", "all_iso")

    def __init__(self, rows, cap):
        self.rows = list(rows)
        self.cap = cap
        self.all_iso = all(row.iso for row in self.rows)


def compare_report(presheaf, cap=None):
    """Compare Cech and topos cohomology in all degrees up to the cap.

    The default cap is the top degree of the base poset's chain complex;
    above it the topos side is identically zero, and on posets where the two
    theories agree the Cech side vanishes there as well.
    """
    if cap is None:
        cap = presheaf.space.height()
    if cap < 0:
        raise DiagramError("degree cap must be nonnegative")
    rows = [ComparisonRow(n, comparison_map(presheaf, n)) for n in range(cap + 1)]
    return ComparisonReport(rows, cap)


def random_presheaf(
    intersection,
    seed,
    max_generators=3,
    max_relators=2,
    max_coefficient=3,
    constant=False,
):
    """A reproducible random presheaf on the given intersection poset."""
    diagram = random_diagram(
        intersection.poset,
        seed,
        max_generators=max_generators,
        max_relators=max_relators,
        max_coefficient=max_coefficient,
        constant=constant,
    )
    return Presheaf(intersection, diagram)


def sheaf_presheaf(F):
    """The presheaf of the sheaf generated by a diagram on the base poset.

    Every node of the intersection poset receives the sections of the
    generated sheaf over it (the compatible-thread limit); restriction between
    nested nodes forgets the coordinates outside the smaller node.
    """
    intersection = IntersectionPoset(F.base)
    cones = [sheafify_value(F, node.indices) for node in intersection.nodes]
    values = [cone.group for cone in cones]
    offsets = []
    for node in intersection.nodes:
        table = {}
        at = 0
        for i in sorted(node.indices):
            table[i] = at
            at += F.value(i).generators
        offsets.append(table)
    maps = {}
    for low, high in intersection.poset.covers():
        small = sorted(intersection.nodes[low].indices)
        cols = []
        for j in range(values[high].generators):
            thread = cones[high].data.lift(j)
            restricted = []
            for i in small:
                at = offsets[high][i]
                restricted.extend(thread[at : at + F.value(i).generators])
            cols.append(cones[low].data.coordinates(tuple(restricted)))
        matrix = IntMatrix.from_columns(cols, nrows=values[low].generators)
        maps[(high, low)] = GroupHom(values[high], values[low], matrix)
    diagram = Diagram(intersection.poset, values, maps)
    return Presheaf(intersection, diagram)
