from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from npcx import errors
from npcx.builders import named_graph
from npcx.complex import Arc, LinkGraph, build_complex, graph_link
from npcx.curvature import (SimplicialComplex2, check_bridged, check_flag,
                            check_generalized_mgon, check_gromov, check_systolic,
                            weighted_girth)

from conftest import clique_complex, girth_oracle, icosahedron, octahedron, torus_complex


def named_link(name, w):
    G = named_graph(name)
    return graph_link(G.nodes, G.edges, w)


def test_girth_k33_right_angles():
    g = weighted_girth(named_link("K33", Fraction(1, 2)))
    assert g.minimum == 2
    assert len(g.witness) == 4


def test_girth_triangle():
    assert weighted_girth(named_link("K4", Fraction(1, 3))).minimum == 1


def test_girth_forest_is_infinite():
    L = graph_link([0, 1, 2], [(0, 1), (1, 2)])
    assert weighted_girth(L).infinite


def test_loops_and_parallel_arcs_count():
    loop = LinkGraph((0,), (Arc((0, 0), Fraction(1, 3)),))
    assert weighted_girth(loop).minimum == Fraction(1, 3)
    pair = LinkGraph((0, 1), (Arc((0, 1), Fraction(1, 2)), Arc((0, 1), Fraction(1, 4))))
    assert weighted_girth(pair).minimum == Fraction(3, 4)


def test_nonpositive_weight():
    with pytest.raises(errors.NonPositiveWeight):
        weighted_girth(LinkGraph((0, 1), (Arc((0, 1), Fraction(0)),)))


weights = st.fractions(min_value=Fraction(1, 12), max_value=Fraction(3, 2), max_denominator=12)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 10))
    m = draw(st.integers(0, 16))
    arcs = [(draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)), draw(weights))
            for _ in range(m)]
    return list(range(n)), arcs


@settings(max_examples=80, deadline=None)
@given(multigraphs())
def test_girth_matches_cycle_enumeration(g):
    nodes, arcs = g
    L = LinkGraph(tuple(nodes), tuple(Arc((u, v), w, i) for i, (u, v, w) in enumerate(arcs)))
    rep = weighted_girth(L)
    assert rep.minimum == girth_oracle(nodes, arcs)
    if rep.witness:
        assert sum(L.arcs[j].weight for j in rep.witness) == rep.minimum


def test_gromov_torus_exact():
    v = check_gromov(torus_complex())
    assert v.passed and v.vertices[0].girth.minimum == 2
    assert v.claim == "locally CAT(0)"


def test_gromov_kl_ball(k4_balls):
    for X in k4_balls.values():
        verdict = check_gromov(X)
        assert verdict.passed
        assert {v.girth.minimum for v in verdict.vertices} == {2}


def test_gromov_fails_on_three_squares():
    # three squares around a vertex: link is a triangle of right angles
    X = build_complex({
        "vertices": list(range(7)),
        "edges": [[0, 1], [0, 2], [0, 3], [1, 4], [4, 2], [2, 5], [5, 3], [3, 6], [6, 1]],
        "faces": [
            {"boundary": [[0, False], [3, False], [4, False], [1, True]], "angles": ["1/2"] * 4},
            {"boundary": [[1, False], [5, False], [6, False], [2, True]], "angles": ["1/2"] * 4},
            {"boundary": [[2, False], [7, False], [8, False], [0, True]], "angles": ["1/2"] * 4},
        ],
    })
    verdict = check_gromov(X, include_boundary=True)
    bad = verdict.failures()
    assert [v.vertex for v in bad] == [0]
    assert bad[0].girth.minimum == Fraction(3, 2)
    assert not verdict.passed


def test_mixed_geometry():
    X = build_complex({
        "vertices": [0, 1, 2, 3, 4],
        "edges": [[0, 1], [1, 2], [2, 0], [2, 3], [3, 4], [4, 0]],
        "faces": [{"boundary": [[0, False], [1, False], [2, False]], "angles": ["1/3"] * 3},
                  {"boundary": [[2, True], [3, False], [4, False], [5, False]],
                   "angles": ["1/3"] * 4, "geometry": "hyperbolic"}],
    })
    with pytest.raises(errors.MixedGeometry):
        check_gromov(X)


def test_flag_examples():
    hollow = SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    rep = check_flag(hollow)
    assert not rep.flag and sorted(rep.witness) == [0, 1, 2]
    square = SimplicialComplex2.create(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert check_flag(square).flag
    o = octahedron()
    assert len(o.triangles) == 8 and check_flag(o).flag


def test_flag_monotone():
    S = SimplicialComplex2.create(range(4), [(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)])
    assert not check_flag(S)
    S2 = SimplicialComplex2.create(S.vertices, S.edges, [(0, 1, 2)])
    assert not check_flag(S2)
    S3 = SimplicialComplex2.create(S.vertices, S.edges, [(0, 1, 2), (1, 2, 3)])
    assert check_flag(S3)


def test_systolic_examples():
    single = SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])
    assert check_systolic(single).passed
    o = check_systolic(octahedron())
    assert not o.passed
    assert {len(w) for _, p, w in o.vertices if not p} == {4}
    i = check_systolic(icosahedron())
    assert not i.passed
    assert {len(w) for _, p, w in i.vertices if not p} == {5}


def test_systolic_requires_flag():
    with pytest.raises(errors.NotFlag):
        check_systolic(SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)]))


def test_bridged_examples():
    assert check_bridged(range(5), [(0, 1), (1, 2), (1, 3), (3, 4)])
    c4 = named_graph("C4")
    assert not check_bridged(c4.nodes, c4.edges)
    k4 = named_graph("K4")
    assert check_bridged(k4.nodes, k4.edges)
    with pytest.raises(errors.Disconnected):
        check_bridged([0, 1, 2, 3], [(0, 1), (2, 3)])


def test_bridged_links_imply_systolic():
    # clique complex of K5: every vertex link is K4, which is bridged
    k4 = named_graph("K4")
    cone = clique_complex(list(range(5)), list(k4.edges) + [(4, i) for i in range(4)])
    assert check_bridged(k4.nodes, k4.edges)
    assert check_systolic(cone).passed


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_complete_bipartite_is_generalized_digon(q):
    G = named_graph(f"K{q},{q}")
    assert check_generalized_mgon(G.nodes, G.edges, 2)


def test_generalized_mgon_examples():
    c6 = named_graph("C6")
    assert check_generalized_mgon(c6.nodes, c6.edges, 3)
    h = named_graph("heawood")
    assert check_generalized_mgon(h.nodes, h.edges, 3)
    p = named_graph("petersen")
    assert not check_generalized_mgon(p.nodes, p.edges, 3)
