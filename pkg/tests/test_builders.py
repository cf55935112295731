from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from npcx import errors
from npcx.builders import (KLBuildParams, Seeded, bourdon_ball, canonical_class,
                           coxeter_system_for, davis_moussong_ball, holonomy, incident,
                           kl_build, label_as_cayley, named_graph, sl2_tree_ball,
                           sl3_vertex_link)
from npcx.builders.graphs import cycle_graph, path_graph
from npcx.complex import graph_link, link
from npcx.curvature import check_generalized_mgon, check_gromov
from npcx.groups import parse_presentation
from npcx.isomorphism import are_isomorphic, graphs_isomorphic, link_isomorphism

HALF = Fraction(1, 2)


def _link_of(G):
    return graph_link(G.nodes, G.edges)


def _interior_links_match(X, G):
    target = graph_link(G.nodes, G.edges, X.faces[0].angles[0])
    inner = X.interior_vertices()
    return bool(inner) and all(
        link_isomorphism(link(X, v), target, weighted=False) is not None for v in inner)


def _holonomies(X):
    out = {}
    for f in X.faces:
        try:
            out[f] = holonomy(X, f)
        except (errors.BoundaryCell, errors.AmbiguousPairing):
            pass
    return out


# -- (k, L)-complexes --------------------------------------------------------


def test_square_grid():
    X = kl_build(KLBuildParams(4, named_graph("K22"), 2))
    assert X.summary()["faces"] == 13
    assert _interior_links_match(X, named_graph("K22"))
    assert all(len(X.edges_at(v)) == 4 for v in X.interior_vertices())
    assert check_gromov(X).passed
    hs = _holonomies(X)
    assert hs and all(h.trivial for h in hs.values())


@pytest.mark.parametrize("strategy", ["trivial", "nontrivial"])
def test_k4_balls(k4_balls, strategy):
    X = k4_balls[strategy]
    assert X.summary()["faces"] == 79
    assert _interior_links_match(X, named_graph("K4"))
    hs = _holonomies(X)
    assert hs
    assert {h.classification for h in hs.values()} == {strategy}


def test_k4_balls_differ(k4_balls):
    assert are_isomorphic(k4_balls["trivial"], k4_balls["nontrivial"]) is None


def test_holonomy_base_independent(k4_balls):
    for strategy, X in k4_balls.items():
        for f, h in _holonomies(X).items():
            for step in range(1, len(X.faces[f])):
                other = holonomy(X, f, step)
                assert other.classification == h.classification
                assert other.order() == h.order()


def test_holonomy_boundary_face(k4_balls):
    X = k4_balls["trivial"]
    outer = max(X.faces)
    with pytest.raises(errors.BoundaryCell):
        holonomy(X, outer)


def test_seeds():
    builds = [kl_build(KLBuildParams(6, named_graph("K4"), 2, Seeded(s))) for s in range(3)]
    again = kl_build(KLBuildParams(6, named_graph("K4"), 2, Seeded(0)))
    assert builds[0] == again
    assert all(_interior_links_match(X, named_graph("K4")) for X in builds)
    assert are_isomorphic(builds[0], builds[1]) is None


def test_kl_refusals():
    with pytest.raises(errors.NotNonpositivelyCurved):
        kl_build(KLBuildParams(4, cycle_graph(3), 1))
    with pytest.raises(errors.InvalidInput):
        kl_build(KLBuildParams(3, named_graph("K4"), 1))
    with pytest.raises(errors.LocalObstruction):
        kl_build(KLBuildParams(5, named_graph("K23"), 2))
    with pytest.raises(errors.BudgetExceeded):
        kl_build(KLBuildParams(6, named_graph("K4"), 3, face_budget=50))


# -- Cayley labellings -------------------------------------------------------

GIESEKING = parse_presentation("<a, b | b a a B B A>")
OTHER = parse_presentation("<a, b | a b a a B B>")


def test_cayley_trivial(k4_balls):
    X = k4_balls["trivial"]
    lab = label_as_cayley(X, GIESEKING)
    assert lab is not None
    # rotations of baaBBA and of its inverse abbAAB
    readings = {w[i:] + w[:i] for w in ("baaBBA", "abbAAB") for i in range(6)}
    assert all(lab.word(X, f) in readings for f in X.faces)
    for v in X.interior_vertices():
        out = [lab.labels[e][0] for e in X.edges_at(v)]
        assert sorted(out) == ["a", "a", "b", "b"]
    assert label_as_cayley(X, OTHER) is None


def test_cayley_nontrivial(k4_balls):
    X = k4_balls["nontrivial"]
    assert label_as_cayley(X, OTHER) is not None
    assert label_as_cayley(X, GIESEKING) is None


def test_cayley_rejects_length_mismatch(k4_balls):
    with pytest.raises(errors.InvalidInput):
        label_as_cayley(k4_balls["trivial"], parse_presentation("<a | aaaa>"))


def test_cayley_budget(k4_balls):
    with pytest.raises(errors.SizeLimitExceeded):
        label_as_cayley(k4_balls["trivial"], OTHER, node_budget=5)


# -- Davis-Moussong ----------------------------------------------------------


def test_dm_single_edge():
    X = davis_moussong_ball(2, path_graph(2), 2)
    assert X.summary()["vertices"] == 4 and X.summary()["faces"] == 1
    H = davis_moussong_ball(3, path_graph(2), 3)
    assert (len(H.vertices), len(H.faces)) == (6, 1)
    assert len(H.faces[0]) == 6
    assert H.faces[0].angles[0] == Fraction(2, 3)


def test_dm_square_tiling():
    X = davis_moussong_ball(2, cycle_graph(4), 2)
    assert len(X.vertices) == 13 and len(X.faces) == 4
    assert 0 in X.interior_vertices()
    assert link_isomorphism(link(X, 0), _link_of(cycle_graph(4)), weighted=False)


def test_dm_identity_link_is_l():
    L = named_graph("K33")
    X = davis_moussong_ball(3, L, 3)
    assert graphs_isomorphic(list(link(X, 0).nodes), [a.ends for a in link(X, 0).arcs],
                             list(L.nodes), list(L.edges))


def test_dm_short_circuit():
    with pytest.raises(errors.CircuitTooShort):
        coxeter_system_for(2, named_graph("K4"))


# -- p-adic objects ----------------------------------------------------------


def _tree_oracle(p, d):
    """Index-p^d classes in Z_p^2 via upper-triangular Hermite forms, no shared code."""
    out = set()
    for a in range(d + 1):
        c = d - a
        for b in range(p ** a):
            M = ((p ** a, b), (0, p ** c))
            if any(x % p for row in M for x in row):
                out.add(M)
    return out


@pytest.mark.parametrize("p, r, counts", [(2, 3, [1, 3, 6, 12]), (3, 2, [1, 4, 12]),
                                          (5, 1, [1, 6]), (2, 0, [1])])
def test_tree_levels(p, r, counts):
    B = sl2_tree_ball(p, r)
    assert B.level_counts() == counts
    X = B.complex
    assert len(X.vertices) == len(X.edges) + 1
    for d in range(r + 1):
        found = {c.matrix for c, dd in zip(B.classes, B.depth) if dd == d}
        assert found == _tree_oracle(p, d)


def test_tree_degrees():
    B = sl2_tree_ball(3, 3)
    X = B.complex
    for v, d in enumerate(B.depth):
        if d < 3:
            assert len(X.edges_at(v)) == 4


def test_tree_limits():
    with pytest.raises(errors.UnsupportedPrime):
        sl2_tree_ball(17, 1)
    with pytest.raises(errors.InvalidInput):
        sl2_tree_ball(4, 1)
    with pytest.raises(errors.PrecisionExceeded):
        canonical_class(2, [[8, 0], [0, 1]], 3)


CLASSES = sl2_tree_ball(3, 3).classes
unimodular = st.lists(st.tuples(st.integers(0, 1), st.integers(-4, 4)), max_size=6)


def _apply(cols, ops):
    cols = [list(c) for c in cols]
    for which, t in ops:
        src, dst = (0, 1) if which else (1, 0)
        cols[dst] = [x + t * y for x, y in zip(cols[dst], cols[src])]
    return cols


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(CLASSES), unimodular, st.integers(0, 2), st.booleans())
def test_canonical_form_invariance(L, ops, s, swap):
    cols = _apply(L.columns(), ops)
    if swap:
        cols = cols[::-1]
    cols = [[3 ** s * x for x in c] for c in cols]
    rows = [[c[i] for c in cols] for i in range(2)]
    assert canonical_class(3, rows, 12) == L


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CLASSES), st.sampled_from(CLASSES))
def test_incidence_symmetric(A, B):
    assert incident(A, B) == incident(B, A)
    if incident(A, B):
        assert not A.contains(B) or not B.contains(A)


def test_tree_adjacency_is_incidence():
    B = sl2_tree_ball(2, 2)
    edges = {frozenset(e) for e in B.complex.edges.values()}
    n = len(B.classes)
    for i in range(n):
        for j in range(i + 1, n):
            assert (frozenset((i, j)) in edges) == incident(B.classes[i], B.classes[j])


def _fano_incidence(p):
    """Points and lines of P^2(F_p) by brute force over F_p^3."""
    vecs = [v for v in product(range(p), repeat=3) if any(v)]

    def normal(v):
        lead = next(x for x in v if x)
        inv = pow(lead, -1, p)
        return tuple(x * inv % p for x in v)

    pts = sorted({normal(v) for v in vecs})
    edges = [(("P", a), ("L", b)) for a in pts for b in pts
             if sum(x * y for x, y in zip(a, b)) % p == 0]
    nodes = [("P", a) for a in pts] + [("L", b) for b in pts]
    return nodes, edges


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sl3_link(p):
    L = sl3_vertex_link(p)
    side = p * p + p + 1
    assert len(L.nodes) == 2 * side and len(L.arcs) == side * (p + 1)
    assert all(L.degree(n) == p + 1 for n in L.nodes)
    assert sorted(c.profile() for c in L.nodes) == sorted(
        [(1, 1, p)] * side + [(1, p, p)] * side)
    nodes, edges = [n for n in L.nodes], [a.ends for a in L.arcs]
    mg = check_generalized_mgon(nodes, edges, 3)
    assert mg.passed and (mg.diameter, mg.girth) == (3, 6)
    if p <= 3:
        assert graphs_isomorphic(nodes, edges, *_fano_incidence(p))


def test_sl3_unsupported():
    with pytest.raises(errors.UnsupportedPrime):
        sl3_vertex_link(7)


# -- Bourdon ------------------------------------------------------------------


@pytest.mark.parametrize("p, q, r", [(5, 3, 1), (5, 3, 2), (6, 2, 2)])
def test_bourdon_matches_kl(p, q, r):
    B = bourdon_ball(p, q, r)
    K = kl_build(KLBuildParams(p, named_graph(f"K{q}{q}"), r, "trivial", "hyperbolic", HALF))
    assert are_isomorphic(B, K) is not None


def test_bourdon_ball():
    B = bourdon_ball(5, 3, 2)
    assert bourdon_ball(5, 3, 1).summary()["faces"] == 11
    assert _interior_links_match(B, named_graph("K33"))
    v = check_gromov(B)
    assert v.passed
    assert min(x.girth.minimum for x in v.vertices) == 2
    with pytest.raises(errors.RadiusBudget):
        bourdon_ball(5, 3, 3)
