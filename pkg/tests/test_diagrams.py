import random

import pytest

from posetcoh.complexes import acyclicity_check, simplicial_homology
from posetcoh.diagrams import (
    Diagram,
    DiagramError,
    derived_colimit,
    derived_limit,
    full_complex_truncated,
    random_diagram,
    sheafify_value,
)
from posetcoh.groups import (
    CanonicalGroup,
    GroupHom,
    PresentedAbGroup,
    canonical_form,
    is_isomorphism,
)
from posetcoh.linalg import IntMatrix
from posetcoh.poset import bounds, chains, parse_poset, random_poset

import builders

Z = PresentedAbGroup.free(1)


def diagram_on(P, values_by_name, maps_by_names):
    values = [values_by_name[name] for name in P.elements]
    maps = {}
    for (a, b), matrix in maps_by_names.items():
        ia, ib = P.index[a], P.index[b]
        maps[(ia, ib)] = GroupHom(
            values[ia],
            values[ib],
            IntMatrix(values[ib].generators, values[ia].generators, matrix),
        )
    return Diagram(P, values, maps)


def constant_diagram(P):
    return random_diagram(P, seed=0, constant=True)


def vee_diagram(m0_rows, m1_rows, groups=(Z, Z, Z)):
    P = builders.vee()
    g0, g1, g2 = groups
    return diagram_on(
        P,
        {"p0": g0, "p1": g1, "p2": g2},
        {("p0", "p2"): m0_rows, ("p1", "p2"): m1_rows},
    )


def test_point_diagram_limits():
    P = builders.point()
    A = PresentedAbGroup.from_invariants(1, (4,))
    F = Diagram(P, [A], {})
    assert derived_limit(F, 0) == canonical_form(A)
    for n in range(1, 5):
        assert derived_limit(F, n) == CanonicalGroup(0)


def test_point_full_complex_alternates():
    P = builders.point()
    A = PresentedAbGroup.free(1)
    F = Diagram(P, [A], {})
    cx = full_complex_truncated(F, 3)
    assert [g.group.generators for g in cx.groups] == [1] * 5
    mats = [d.matrix.entries for d in cx.diffs]
    assert mats == [((0,),), ((1,),), ((0,),), ((1,),)]
    assert cx.homology_group(0) == CanonicalGroup(1)
    for n in range(1, 3):
        assert cx.homology_group(n) == CanonicalGroup(0)


def test_vee_zero_maps_first_derived_limit():
    F = vee_diagram([[0]], [[0]])
    assert derived_limit(F, 1) == CanonicalGroup(1)
    assert derived_limit(F, 0) == CanonicalGroup(2)
    assert derived_limit(F, 2) == CanonicalGroup(0)


def test_vee_coboundary_matrix_layout():
    # chains p0>p2 and p1>p2; columns ordered p0, p1, p2
    F = vee_diagram([[3]], [[5]])
    cx = F.reduced_complex()
    assert cx.groups[0].names == ("p0", "p1", "p2")
    assert cx.groups[1].names == ("p0>p2", "p1>p2")
    assert cx.diffs[0].matrix.entries == ((-3, 0, 1), (0, -5, 1))


def test_vee_general_maps_match_direct_cokernel():
    rng = random.Random(71)
    for _ in range(25):
        g2 = rng.randint(1, 2)
        g0, g1 = rng.randint(0, 2), rng.randint(0, 2)
        m0 = [[rng.randint(-4, 4) for _ in range(g0)] for _ in range(g2)]
        m1 = [[rng.randint(-4, 4) for _ in range(g1)] for _ in range(g2)]
        F = vee_diagram(
            m0,
            m1,
            groups=(
                PresentedAbGroup.free(g0),
                PresentedAbGroup.free(g1),
                PresentedAbGroup.free(g2),
            ),
        )
        images = IntMatrix(g2, g0, m0).hstack(IntMatrix(g2, g1, m1))
        direct = canonical_form(PresentedAbGroup(g2, images))
        assert derived_limit(F, 1) == direct


def test_square_constant_diagram():
    F = constant_diagram(builders.square())
    assert derived_limit(F, 0) == CanonicalGroup(1)
    assert derived_limit(F, 1) == CanonicalGroup(1)
    assert derived_limit(F, 2) == CanonicalGroup(0)
    assert derived_colimit(F, 0) == CanonicalGroup(1)


def test_square_random_diagrams_limit_vs_colimit():
    P = builders.square()
    for seed in range(30):
        F = random_diagram(P, seed=seed)
        assert derived_limit(F, 1) == derived_colimit(F, 0)
        for n in (2, 3):
            assert derived_limit(F, n) == CanonicalGroup(0)


def test_diagram_validation_errors():
    P = builders.square()
    values = [Z] * 4
    with pytest.raises(DiagramError, match="missing map"):
        Diagram(P, values, {})
    diamond = parse_poset(
        {
            "elements": ["top", "m1", "m2", "bot"],
            "relations": [["m1", "top"], ["m2", "top"], ["bot", "m1"], ["bot", "m2"]],
        }
    )

    def build(scale):
        maps = {
            ("top", "m1"): [[1]],
            ("top", "m2"): [[1]],
            ("m1", "bot"): [[1]],
            ("m2", "bot"): [[scale]],
        }
        return diagram_on(
            diamond, {"top": Z, "m1": Z, "m2": Z, "bot": Z}, maps
        )

    build(1)
    with pytest.raises(DiagramError, match="routes via"):
        build(2)


def test_diagram_composite_maps():
    chain = parse_poset(
        {"elements": ["a", "b", "c"], "relations": [["c", "b"], ["b", "a"]]}
    )
    F = diagram_on(
        chain,
        {"a": Z, "b": Z, "c": Z},
        {("a", "b"): [[2]], ("b", "c"): [[3]]},
    )
    assert F.map(chain.index["a"], chain.index["c"]).matrix.entries == ((6,),)
    assert F.map(0, 0).matrix == IntMatrix.identity(1)


def test_full_complex_matches_reduced_on_samples():
    rng = random.Random(97)
    for trial in range(12):
        P = random_poset(rng.randint(1, 4), rng.random(), seed=7000 + trial)
        F = random_diagram(P, seed=trial, max_generators=2, max_relators=1)
        cap = P.height()
        full = full_complex_truncated(F, cap)
        for n in range(cap + 1):
            assert full.homology_group(n) == derived_limit(F, n)


def test_colimit_of_constant_diagram_is_order_complex_homology():
    rng = random.Random(113)
    for trial in range(15):
        P = random_poset(rng.randint(1, 6), rng.random(), seed=8000 + trial)
        F = constant_diagram(P)
        K = [chains(P, k) for k in range(P.height() + 1)]
        for n in range(P.height() + 2):
            assert derived_colimit(F, n) == simplicial_homology(K, n)


def test_colimit_point_and_square_identity():
    F = constant_diagram(builders.point())
    assert derived_colimit(F, 0) == CanonicalGroup(1)
    assert derived_colimit(F, 1) == CanonicalGroup(0)
    G = constant_diagram(builders.square())
    assert derived_colimit(G, 1) == CanonicalGroup(1)  # order complex is a circle


def test_sheafify_principal_open_collapses():
    P = builders.pass8()
    F = random_diagram(P, seed=5)
    for i in range(len(P)):
        cone = sheafify_value(F, P.down[i])
        assert canonical_form(cone.group) == canonical_form(F.value(i))
        assert is_isomorphism(cone.projections[i])


def test_sheafify_constant_counts_components():
    P = builders.sphere()
    F = constant_diagram(P)
    whole = sheafify_value(F, range(len(P)))
    assert canonical_form(whole.group) == CanonicalGroup(1)
    two = sheafify_value(F, {P.index["4"], P.index["5"]})
    assert canonical_form(two.group) == CanonicalGroup(2)


def test_sheafify_rejects_non_open():
    P = builders.sphere()
    F = constant_diagram(P)
    with pytest.raises(DiagramError, match="downward closed"):
        sheafify_value(F, {P.index["0"]})


def test_sheafify_equals_degree_zero_limit():
    rng = random.Random(131)
    for trial in range(10):
        P = random_poset(rng.randint(1, 6), rng.random(), seed=9000 + trial)
        F = random_diagram(P, seed=100 + trial)
        cone = sheafify_value(F, range(len(P)))
        assert canonical_form(cone.group) == derived_limit(F, 0)


def test_random_diagram_contract():
    P = builders.pass8()
    a = random_diagram(P, seed=9)
    b = random_diagram(P, seed=9)
    assert [canonical_form(v) for v in a.values] == [canonical_form(v) for v in b.values]
    for key in a.edge_maps:
        assert a.edge_maps[key].matrix == b.edge_maps[key].matrix
    c = constant_diagram(P)
    assert all(canonical_form(v) == CanonicalGroup(1) for v in c.values)
