import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorgraphs.classify import (
    GTadpolePlanarity,
    ModelMismatchError,
    classify,
    find_color_assignment,
    find_sign_assignment,
    gtadpole_planarity,
    has_tadface,
    is_colorable,
    is_generalized_tadpole,
    is_multi_orientable,
    is_tadpole,
)
from tensorgraphs.core import Edge, VertexKind, build_graph
from tensorgraphs.enumeration import enumerate_pairings
from tensorgraphs.fixtures import nonplanar_tadpole, planar_tadpole, tadface_graph
from tensorgraphs.topology import UnsupportedDimensionError

from oracles import all_raw_graphs, brute_colorable, brute_mo, random_matching, raw_graph, relabel

MO3D = VertexKind.MO3D

# every one- and two-vertex graph with 0 or 2 legs, regardless of signs
RAW = [g for n, k in [(1, 0), (1, 2), (2, 0), (2, 2)] for g in all_raw_graphs(n, k)]


def _random_three_vertex(seed):
    rng = random.Random(seed)
    corners = [(v, c) for v in range(3) for c in range(4)]
    legs = rng.choice([0, 2])
    rng.shuffle(corners)
    ext, rest = corners[:legs], corners[legs:]
    return raw_graph([MO3D] * 3, random_matching(rest, rng), ext)


def test_raw_corpus_size():
    # 1 + 6*1 + 105 + 28*15 labelled corner matchings
    assert len(RAW) == 3 + 6 + 105 + 420


def test_mo_matches_exhaustive_search():
    for g in RAW:
        assert is_multi_orientable(g) == brute_mo(g), g


def test_colorability_matches_exhaustive_search():
    for g in RAW:
        assert is_colorable(g) == brute_colorable(g), g


@pytest.mark.parametrize("seed", range(40))
def test_three_vertex_graphs_against_oracles(seed):
    g = _random_three_vertex(seed)
    assert is_multi_orientable(g) == brute_mo(g)
    assert is_colorable(g) == brute_colorable(g)


def test_assignments_are_valid_witnesses():
    for g in RAW:
        s = find_sign_assignment(g)
        if s is not None:
            assert s.check(g)
        c = find_color_assignment(g)
        if c is not None:
            assert c.check(g)
            for v in range(g.order):
                assert sorted(c.color(v, k) for k in range(4)) == [0, 1, 2, 3]


def test_tampered_witness_is_rejected():
    g = next(enumerate_pairings("colored3d", 2, 0))
    c = find_color_assignment(g)
    assert c.check(g)
    bad = type(c)(c.vertex_types, (c.rotations[0], (c.rotations[1] + 1) % 4), c.edge_colors)
    assert not bad.check(g)
    s = find_sign_assignment(g)
    assert not type(s)(tuple(1 - p for p in s.parities[:1]) + s.parities[1:]).check(g)


def test_parallel_edges_graph_is_mo_but_not_colorable():
    g = build_graph(3, [MO3D, MO3D], [Edge((0, c), (1, c)) for c in range(4)])
    assert not is_tadpole(g)
    assert is_multi_orientable(g) and brute_mo(g)
    assert not is_colorable(g) and not brute_colorable(g)


def test_fixture_classification():
    r8 = classify(planar_tadpole())
    assert r8.is_tadpole and r8.is_generalized_tadpole and r8.is_multi_orientable
    assert r8.is_colorable is False and not r8.has_tadface
    assert r8.gtadpole_planarity is GTadpolePlanarity.PLANAR
    r9 = classify(nonplanar_tadpole())
    assert r9.is_tadpole and not r9.is_multi_orientable
    assert r9.gtadpole_planarity is GTadpolePlanarity.NONPLANAR
    r11 = classify(tadface_graph())
    assert r11.has_tadface and not r11.is_multi_orientable
    assert not r11.is_generalized_tadpole


def test_vacuum_graph_planarity_not_applicable():
    g = next(enumerate_pairings("mo3d", 1, 0))
    assert not is_generalized_tadpole(g)
    assert gtadpole_planarity(g) is GTadpolePlanarity.NOT_APPLICABLE


def test_bare_vertex_with_four_legs_is_planar():
    g = build_graph(3, [MO3D], [], [(0, c) for c in range(4)])
    rec = classify(g)
    assert rec.topology.broken_faces == 1
    assert rec.gtadpole_planarity is GTadpolePlanarity.PLANAR
    assert not rec.notes


def test_colored_vertices_in_mo_check_raise():
    g = build_graph(3, [MO3D, VertexKind.COLORED_PHIBAR],
                    [Edge((0, c), (1, c)) for c in range(4)])
    with pytest.raises(ModelMismatchError):
        is_multi_orientable(g)


def test_colored_graph_read_as_bare_vertices():
    for g in enumerate_pairings("colored3d", 2, 2):
        assert is_multi_orientable(g) and is_colorable(g)


def test_four_dimensional_graphs():
    g = next(enumerate_pairings("mo4d", 2, 0))
    with pytest.raises(UnsupportedDimensionError):
        is_colorable(g)
    rec = classify(g)
    assert rec.topology is None and rec.is_colorable is None
    assert rec.gtadpole_planarity is GTadpolePlanarity.NOT_APPLICABLE
    assert rec.is_multi_orientable
    assert rec.to_dict()["is_colorable"] is None


def _record(g):
    r = classify(g)
    t = r.topology
    return (r.is_tadpole, r.is_generalized_tadpole, r.gtadpole_planarity, r.has_tadface,
            r.is_multi_orientable, r.is_colorable, t.jacket_genus, t.broken_faces,
            t.face_count_closed, t.face_count_open)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10_000), st.permutations([0, 1, 2]),
       st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_classification_invariant_under_relabelling(seed, perm, rots):
    g = _random_three_vertex(seed)
    assert _record(relabel(g, perm, rots)) == _record(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_classification_invariant_under_edge_reversal(seed):
    # edge orientation is bookkeeping; none of the predicates may depend on it
    g = _random_three_vertex(seed)
    flipped = build_graph(3, g.vertex_kinds, [Edge(e.plus_end, e.minus_end) for e in g.edges],
                          g.external_legs)
    assert _record(flipped) == _record(g)


def test_tadface_predicate_on_fixtures():
    assert has_tadface(tadface_graph())
    assert not has_tadface(planar_tadpole())
