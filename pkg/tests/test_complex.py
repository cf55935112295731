from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from npcx import errors
from npcx.builders import bourdon_ball, named_graph, sl2_tree_ball
from npcx.complex import ball, build_complex, graph_link, link, subdivide_barycentric
from npcx.isomorphism import are_isomorphic, link_isomorphism

from conftest import polygon_complex, torus_complex


def test_triangle_builds():
    X = polygon_complex(3)
    assert X.summary()["vertices"] == 3
    assert (len(X.edges), len(X.faces)) == (3, 1)


def test_torus_builds_with_loops():
    X = torus_complex()
    assert X.vertices == (0,)
    assert X.edges == {0: (0, 0), 1: (0, 0)}
    assert X.euler_characteristic() == 0


def test_angle_count_mismatch():
    with pytest.raises(errors.AngleCountMismatch):
        build_complex({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [2, 0]],
                       "faces": [{"boundary": [[0, False], [1, False], [2, False]],
                                  "angles": ["1/3", "1/3"]}]})


def test_open_boundary_and_dangling():
    with pytest.raises(errors.OpenBoundary):
        build_complex({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [2, 0]],
                       "faces": [{"boundary": [[0, False], [2, False], [1, False]],
                                  "angles": ["1/3"] * 3}]})
    with pytest.raises(errors.DanglingReference):
        build_complex({"vertices": [0, 1], "edges": [[0, 5]]})


def test_angle_sum_rules():
    with pytest.raises(errors.EuclideanAngleSum):
        polygon_complex(4, ["1/2", "1/2", "1/2", "1/3"])
    with pytest.raises(errors.HyperbolicAngleSum):
        polygon_complex(4, ["1/2"] * 4, "hyperbolic")
    polygon_complex(5, ["1/2"] * 5, "hyperbolic")


def test_torus_link_is_four_cycle():
    L = link(torus_complex(), 0)
    assert len(L.nodes) == 4 and len(L.arcs) == 4
    assert {a.weight for a in L.arcs} == {Fraction(1, 2)}
    C4 = named_graph("C4")
    assert link_isomorphism(L, graph_link(C4.nodes, C4.edges)) is not None


def test_square_corner_link_is_path():
    L = link(polygon_complex(4), 0)
    assert len(L.nodes) == 2 and len(L.arcs) == 1


def test_unknown_vertex():
    with pytest.raises(errors.UnknownVertex):
        link(torus_complex(), 7)


def test_bourdon_interior_link():
    X = bourdon_ball(5, 3, 2)
    K33 = named_graph("K33")
    target = graph_link(K33.nodes, K33.edges)
    inner = X.interior_vertices()
    assert inner
    assert all(link_isomorphism(link(X, v), target) for v in inner)


@pytest.mark.parametrize("k, V, F", [(3, 7, 6), (5, 11, 10)])
def test_subdivision_counts(k, V, F):
    Y = subdivide_barycentric(polygon_complex(k))
    assert (len(Y.vertices), len(Y.faces)) == (V, F)


def test_double_subdivision():
    Y = subdivide_barycentric(subdivide_barycentric(polygon_complex(3)))
    assert len(Y.faces) == 36


def test_ball_examples():
    X = polygon_complex(4)
    B = ball(X, 0, 0)
    assert B.vertices == (0,) and not B.edges
    T = torus_complex()
    assert are_isomorphic(ball(T, 0, 1), T)
    tree = sl2_tree_ball(2, 3).complex
    assert len(ball(tree, 0, 2).vertices) == 10


def test_ball_nested():
    X = bourdon_ball(5, 2, 2)
    prev = None
    for r in range(4):
        B = ball(X, 0, r)
        if prev is not None:
            assert set(prev.vertices) <= set(B.vertices)
            assert set(prev.faces) <= set(B.faces)
        prev = B


def test_isomorphism_basic(k4_balls):
    T = torus_complex()
    assert are_isomorphic(T, T) is not None
    assert are_isomorphic(polygon_complex(3), polygon_complex(4)) is None
    assert are_isomorphic(k4_balls["trivial"], k4_balls["nontrivial"]) is None


def test_isomorphism_budget():
    with pytest.raises(errors.SizeLimitExceeded):
        are_isomorphic(torus_complex(), torus_complex(), budget=3)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2))
def test_subdivision_keeps_euler_characteristic(k, times):
    X = polygon_complex(k)
    chi = X.euler_characteristic()
    for _ in range(times):
        X = subdivide_barycentric(X)
    assert X.euler_characteristic() == chi


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3))
def test_link_degree_sum(r):
    X = bourdon_ball(5, 2, min(r, 2))
    for v in X.vertices:
        L = link(X, v)
        assert sum(L.degree(n) for n in L.nodes) == 2 * len(L.arcs)


def test_constant_multiplicity_gives_constant_degree():
    X = torus_complex()
    # each loop edge lies in the square twice
    L = link(X, 0)
    assert {L.degree(n) for n in L.nodes} == {2}
