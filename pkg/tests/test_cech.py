import random

import pytest

from posetcoh.cech import (
    Presheaf,
    cech_cohomology,
    cech_ordered_complex,
    compare_report,
    comparison_map,
    random_presheaf,
    sheaf_presheaf,
)
from posetcoh.diagrams import DiagramError, random_diagram, sheafify_value
from posetcoh.documents import load_presheaf
from posetcoh.groups import CanonicalGroup, canonical_form, is_isomorphism
from posetcoh.poset import IntersectionPoset, random_poset

import builders


def presheaf_over(P, seed, **params):
    return random_presheaf(IntersectionPoset(P), seed, **params)


def test_skyscraper_comparison_fails_at_degree_zero():
    ps = load_presheaf(builders.SKYSCRAPER_DOC)
    assert cech_cohomology(ps, 0) == CanonicalGroup(1)
    assert topos(ps, 0) == CanonicalGroup(2)
    lam = comparison_map(ps, 0)
    assert canonical_form(lam.source) == CanonicalGroup(1)
    assert canonical_form(lam.target) == CanonicalGroup(2)
    assert not is_isomorphism(lam)
    assert sorted(abs(row[0]) for row in lam.matrix.entries) == [1, 1]
    report = compare_report(ps)
    assert report.cap == 1
    assert not report.all_iso
    assert [row.iso for row in report.rows] == [False, True]


def topos(ps, n):
    from posetcoh.cech import topos_cohomology

    return topos_cohomology(ps, n)


def test_constant_square_comparison_fails_at_degree_one():
    ps = load_presheaf(builders.CONSTANT_SQUARE_DOC)
    assert cech_cohomology(ps, 0) == CanonicalGroup(1)
    assert cech_cohomology(ps, 1) == CanonicalGroup(0)
    assert topos(ps, 1) == CanonicalGroup(1)
    assert is_isomorphism(comparison_map(ps, 0))
    lam = comparison_map(ps, 1)
    assert canonical_form(lam.source) == CanonicalGroup(0)
    assert canonical_form(lam.target) == CanonicalGroup(1)
    assert not is_isomorphism(lam)
    report = compare_report(ps, cap=3)
    assert [row.iso for row in report.rows] == [True, False, True, True]
    assert not report.all_iso


def test_sphere_sheaf_mode_splits_at_degree_two():
    ps = load_presheaf(builders.CONSTANT_SPHERE_DIAGRAM_DOC)
    assert cech_cohomology(ps, 0) == CanonicalGroup(1)
    assert cech_cohomology(ps, 1) == CanonicalGroup(0)
    assert cech_cohomology(ps, 2) == CanonicalGroup(0)
    assert cech_cohomology(ps, 3) == CanonicalGroup(0)
    assert topos(ps, 2) == CanonicalGroup(1)
    report = compare_report(ps)
    assert report.cap == 2
    assert [row.iso for row in report.rows] == [True, True, False]
    assert report.rows[2].cech == CanonicalGroup(0)
    assert report.rows[2].topos == CanonicalGroup(1)


def test_sheaf_mode_pulled_values_recover_the_diagram():
    ps = load_presheaf(builders.CONSTANT_SPHERE_DIAGRAM_DOC)
    pulled = ps.pulled_diagram()
    for i in range(len(ps.space)):
        assert canonical_form(pulled.value(i)) == CanonicalGroup(1)
    for hom in pulled.edge_maps.values():
        assert is_isomorphism(hom)


def test_node_values_of_sheaf_presheaf_match_section_limits():
    rng = random.Random(17)
    for trial in range(8):
        P = random_poset(rng.randint(1, 5), rng.random(), seed=4000 + trial)
        F = random_diagram(P, seed=trial)
        ps = sheaf_presheaf(F)
        lam = ps.intersection.lambda_map
        for i in range(len(P)):
            assert canonical_form(ps.node_value(lam[i])) == canonical_form(F.value(i))
        for k, node in enumerate(ps.intersection.nodes):
            cone = sheafify_value(F, node.indices)
            assert canonical_form(ps.node_value(k)) == canonical_form(cone.group)


def test_ordered_complex_matches_derived_limit_route():
    rng = random.Random(23)
    for trial in range(10):
        P = random_poset(rng.randint(1, 5), rng.random(), seed=4100 + trial)
        ps = presheaf_over(P, seed=trial)
        names = list(P.elements)
        shuffled = names[:]
        rng.shuffle(shuffled)
        for order in (None, shuffled):
            cx = cech_ordered_complex(ps, order)
            for n in range(max(cx.top_degree(), ps.cech_complex().top_degree()) + 2):
                assert cx.homology_group(n) == cech_cohomology(ps, n)


def test_ordered_complex_point_and_validation():
    ps = presheaf_over(builders.point(), seed=3)
    cx = cech_ordered_complex(ps)
    assert cx.top_degree() == 0
    assert cx.homology_group(0) == cech_cohomology(ps, 0)
    with pytest.raises(DiagramError, match="every element exactly once"):
        cech_ordered_complex(ps, ["a", "a"])


def test_point_comparison_all_iso():
    ps = presheaf_over(builders.point(), seed=11)
    report = compare_report(ps)
    assert report.cap == 0
    assert report.all_iso


def test_zigzag_always_iso():
    P = builders.zigzag()
    U = IntersectionPoset(P)
    for seed in range(10):
        report = compare_report(random_presheaf(U, seed))
        assert report.all_iso
        for row in report.rows:
            assert row.cech == row.topos


def test_comparison_above_every_chain_is_between_zero_groups():
    ps = load_presheaf(builders.CONSTANT_SQUARE_DOC)
    lam = comparison_map(ps, 9)
    assert canonical_form(lam.source) == CanonicalGroup(0)
    assert canonical_form(lam.target) == CanonicalGroup(0)
    assert is_isomorphism(lam)
    with pytest.raises(DiagramError, match="nonnegative"):
        comparison_map(ps, -1)


def test_random_presheaf_determinism():
    U = IntersectionPoset(builders.pass7())
    a = random_presheaf(U, seed=21)
    b = random_presheaf(U, seed=21)
    assert [canonical_form(v) for v in a.diagram.values] == [
        canonical_form(v) for v in b.diagram.values
    ]
    for key in a.diagram.edge_maps:
        assert a.diagram.edge_maps[key].matrix == b.diagram.edge_maps[key].matrix
    c = random_presheaf(U, seed=0, constant=True)
    assert all(canonical_form(v) == CanonicalGroup(1) for v in c.diagram.values)


def test_presheaf_requires_the_node_poset():
    P = builders.square()
    U = IntersectionPoset(P)
    with pytest.raises(DiagramError, match="intersection poset"):
        Presheaf(U, random_diagram(P, seed=1))
