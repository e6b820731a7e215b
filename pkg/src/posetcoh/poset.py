"""Finite posets and their Alexandrov topology.

A finite poset I carries the topology whose open sets are the downward closed
subsets; the minimal basic open at i is the principal down-set L(i) = {j : j <= i}
and these form the canonical covering of the space.  This module owns the
carrier type, the bound operators X^- and X^+, the poset of distinct nonempty
intersections of the L(i) (the values of X^-), strict-chain enumeration, and
the plumbing needed to build and serialize posets.
"""

from __future__ import annotations

import random


class PosetError(ValueError):
    """Raised for inputs that do not describe a finite poset."""


class Poset:
    """A finite partially ordered set over named elements.

    `down[i]` is the index set {j : j <= i} and `up[i]` is {j : j >= i}; all
    order queries reduce to membership in these frozen sets.  Instances are
    immutable and compare by value.
    """

    __slots__ = ("elements", "index", "down", "up")

    def __init__(self, elements, down):
        self.elements = tuple(elements)
        if not self.elements:
            raise PosetError("empty poset")
        self.index = {name: i for i, name in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            seen = set()
            for name in self.elements:
                if name in seen:
                    raise PosetError("duplicate element name: %r" % name)
                seen.add(name)
        self.down = tuple(frozenset(s) for s in down)
        n = len(self.elements)
        if len(self.down) != n:
            raise PosetError("down-set count mismatch")
        ups = [set() for _ in range(n)]
        for i, s in enumerate(self.down):
            if i not in s or not s <= set(range(n)):
                raise PosetError("invalid down-set for %r" % self.elements[i])
            for j in s:
                if j != i and i in self.down[j]:
                    raise PosetError(
                        "antisymmetry violated by %r and %r"
                        % (self.elements[i], self.elements[j])
                    )
                if not self.down[j] <= s:
                    raise PosetError(
                        "transitivity violated below %r at %r"
                        % (self.elements[i], self.elements[j])
                    )
                ups[j].add(i)
        self.up = tuple(frozenset(s) for s in ups)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.elements == other.elements
            and self.down == other.down
        )

    def __hash__(self):
        return hash((self.elements, self.down))

    def __repr__(self):
        return "Poset(%r)" % (self.elements,)

    def leq(self, i, j):
        """Whether element i <= element j (by index)."""
        return i in self.down[j]

    def covers(self):
        """Hasse cover pairs (low, high), low covered by high, sorted by name."""
        pairs = []
        for j in range(len(self.elements)):
            strictly_below = self.down[j] - {j}
            for i in strictly_below:
                if not any(k != i and i in self.down[k] for k in strictly_below):
                    pairs.append((i, j))
        named = sorted((self.elements[i], self.elements[j]) for i, j in pairs)
        return [(self.index[a], self.index[b]) for a, b in named]

    def height(self):
        """Length in edges of the longest strict chain."""
        order = self.linear_extension()
        best = [0] * len(self.elements)
        for i in order:
            below = [best[j] + 1 for j in self.down[i] if j != i]
            best[i] = max(below, default=0)
        return max(best)

    def linear_extension(self):
        """Element indices in an order listing smaller elements first."""
        return sorted(range(len(self.elements)), key=lambda i: (len(self.down[i]), i))

    def subset(self, indices):
        return Subset(self, indices)

    def full_subset(self):
        return Subset(self, range(len(self.elements)))


class Subset:
    """An immutable subset of a poset's elements, compared by value."""

    __slots__ = ("poset", "indices")

    def __init__(self, poset, indices):
        self.poset = poset
        self.indices = frozenset(indices)
        for i in self.indices:
            if not 0 <= i < len(poset.elements):
                raise PosetError("subset index %r out of range" % (i,))

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(sorted(self.indices))

    def __contains__(self, i):
        return i in self.indices

    def __eq__(self, other):
        return (
            isinstance(other, Subset)
            and self.poset == other.poset
            and self.indices == other.indices
        )

    def __hash__(self):
        return hash(self.indices)

    def names(self):
        return sorted(self.poset.elements[i] for i in self.indices)

    def canonical_name(self):
        return "{" + ",".join(self.names()) + "}"

    def __repr__(self):
        return "Subset(%s)" % self.canonical_name()


class ChainSet:
    """All strictly decreasing (n+1)-tuples of a poset, in lexicographic order."""

    __slots__ = ("poset", "degree", "chains")

    def __init__(self, poset, degree, chains):
        self.poset = poset
        self.degree = degree
        self.chains = tuple(tuple(c) for c in chains)

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def name(self, chain):
        return ">".join(self.poset.elements[i] for i in chain)


class IntersectionPoset:
    """The distinct nonempty intersections of the minimal basic opens.

    Every nonempty set of lower bounds X^- is a finite intersection of down
    sets L(x), so the closure of {L(i)} under pairwise nonempty intersection
    enumerates exactly the candidate lower halves of cuts.  Nodes are ordered
    by inclusion; `lambda_map` locates L(i), and each node remembers one
    generating subset of the base poset as a witness.
    """

    __slots__ = ("base", "poset", "nodes", "lambda_map", "witnesses")

    def __init__(self, base):
        self.base = base
        found = {}
        for i in range(len(base.elements)):
            found.setdefault(base.down[i], (i,))
        changed = True
        while changed:
            changed = False
            current = sorted(found, key=lambda s: sorted(s))
            for a in current:
                for b in current:
                    c = a & b
                    if c and c not in found:
                        found[c] = tuple(sorted(set(found[a]) | set(found[b])))
                        changed = True

        def node_key(s):
            return (len(s), sorted(base.elements[i] for i in s))

        ordered = sorted(found, key=node_key)
        self.nodes = tuple(Subset(base, s) for s in ordered)
        names = [n.canonical_name() for n in self.nodes]
        down_sets = []
        for s in ordered:
            down_sets.append(frozenset(k for k, t in enumerate(ordered) if t <= s))
        self.poset = Poset(names, down_sets)
        position = {s: k for k, s in enumerate(ordered)}
        self.lambda_map = tuple(position[base.down[i]] for i in range(len(base.elements)))
        self.witnesses = tuple(found[s] for s in ordered)
        for i in range(len(base.elements)):
            for j in range(len(base.elements)):
                if base.leq(i, j):
                    a, b = self.lambda_map[i], self.lambda_map[j]
                    assert self.poset.leq(a, b) and (i == j or a != b)

    def node_of(self, member_indices):
        """Node index whose member set equals the given base indices, if any."""
        target = frozenset(member_indices)
        for k, node in enumerate(self.nodes):
            if node.indices == target:
                return k
        return None

    def __len__(self):
        return len(self.nodes)


def bounds(poset, subset, direction):
    """The set of common lower or upper bounds of a subset.

    X^- is the intersection of the down-sets of the members of X, X^+ the
    intersection of the up-sets; for the empty subset both equal the whole
    carrier.
    """
    if direction not in ("lower", "upper"):
        raise PosetError("direction must be 'lower' or 'upper'")
    table = poset.down if direction == "lower" else poset.up
    indices = subset.indices if isinstance(subset, Subset) else frozenset(subset)
    result = set(range(len(poset.elements)))
    for x in indices:
        if not 0 <= x < len(poset.elements):
            raise PosetError("subset index %r out of range" % (x,))
        result &= table[x]
    return Subset(poset, result)


def intersection_poset(poset):
    return IntersectionPoset(poset)


def chains(poset, n):
    """All strictly decreasing chains c_0 > c_1 > ... > c_n."""
    if n < 0:
        raise PosetError("chain degree must be nonnegative")
    size = len(poset.elements)
    out = []

    def extend(prefix, last):
        if len(prefix) == n + 1:
            out.append(tuple(prefix))
            return
        for j in range(size):
            if j != last and j in poset.down[last]:
                prefix.append(j)
                extend(prefix, j)
                prefix.pop()

    for c0 in range(size):
        extend([c0], c0)
    return ChainSet(poset, n, out)


def induced_subposet(poset, subset):
    """The restriction of the order to a nonempty subset, names preserved."""
    indices = sorted(subset.indices if isinstance(subset, Subset) else subset)
    if not indices:
        raise PosetError("induced subposet needs a nonempty subset")
    old_to_new = {old: new for new, old in enumerate(indices)}
    elements = [poset.elements[i] for i in indices]
    down = [frozenset(old_to_new[j] for j in poset.down[i] if j in old_to_new) for i in indices]
    return Poset(elements, down)


def parse_poset(doc):
    """Build a poset from a description with 'elements' and 'relations'.

    Relation pairs [a, b] assert a <= b; they may be arbitrary assertions, not
    only covers, and the reflexive-transitive closure is taken.  Raises
    PosetError naming the offenders for duplicate elements, unknown names and
    antisymmetry (cycle) violations.
    """
    if not isinstance(doc, dict):
        raise PosetError("poset document must be an object")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise PosetError("poset document needs a nonempty 'elements' list")
    for name in elements:
        if not isinstance(name, str):
            raise PosetError("element names must be strings, got %r" % (name,))
    seen = set()
    for name in elements:
        if name in seen:
            raise PosetError("duplicate element name: %r" % name)
        seen.add(name)
    index = {name: i for i, name in enumerate(elements)}
    n = len(elements)
    preds = [set() for _ in range(n)]
    for pair in doc.get("relations", []):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise PosetError("relation entries must be [low, high] pairs, got %r" % (pair,))
        low, high = pair
        for name in (low, high):
            if name not in index:
                raise PosetError("unknown element in relation: %r" % (name,))
        preds[index[high]].add(index[low])

    down = []
    for i in range(n):
        reach = {i}
        stack = [i]
        while stack:
            j = stack.pop()
            for k in preds[j]:
                if k not in reach:
                    reach.add(k)
                    stack.append(k)
        down.append(frozenset(reach))
    for i in range(n):
        for j in down[i]:
            if j != i and i in down[j]:
                raise PosetError(
                    "antisymmetry violated by %r and %r (relation cycle)"
                    % (elements[i], elements[j])
                )
    return Poset(elements, down)


def serialize_poset(poset):
    """Canonical document: sorted elements plus the Hasse covers only."""
    covers = [
        [poset.elements[i], poset.elements[j]] for i, j in poset.covers()
    ]
    return {"elements": sorted(poset.elements), "relations": covers}


def random_poset(n, density, seed):
    """A reproducible random poset on n elements.

    A shuffled labeling is drawn, each forward pair of the resulting linear
    extension becomes a relation with the given probability, and the closure
    is taken, so the output is always a valid poset and density 0 yields an
    antichain.
    """
    if n < 1:
        raise PosetError("need at least one element")
    if not 0 <= density <= 1:
        raise PosetError("density must lie in [0, 1]")
    rng = random.Random(seed)
    width = len(str(n - 1)) if n > 1 else 1
    elements = ["x%0*d" % (width, i) for i in range(n)]
    ranks = list(range(n))
    rng.shuffle(ranks)
    relations = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                relations.append([elements[ranks[a]], elements[ranks[b]]])
    return parse_poset({"elements": elements, "relations": relations})
