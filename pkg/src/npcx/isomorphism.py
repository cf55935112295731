"""Isomorphism testing by colour refinement and individualisation backtracking.

Complexes and link graphs are encoded as vertex-coloured multigraphs; two
objects are isomorphic exactly when their encodings are.  The search refines
the joint colouring of both graphs to a stable partition, individualises the
first vertex of the smallest non-trivial cell and backtracks over its possible
images.  Leaves are verified edge by edge, so a returned map is always a
genuine isomorphism.  The result is deterministic for a given input order;
there is no canonical-form guarantee.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence

from . import errors
from .complex import LinkGraph, PolygonalComplex

DEFAULT_CELL_BUDGET = 5000


@dataclass
class ColouredGraph:
    adj: list[list[int]]
    colours: list[Hashable]

    def __len__(self):
        return len(self.adj)


def _refine(adj1, adj2, c1, c2):
    """Jointly refine two colourings to equitable partitions.

    Returns ``None`` as soon as the colour histograms of the graphs differ.
    """
    n1 = len(adj1)
    while True:
        sig1 = [(c1[v], tuple(sorted(c1[w] for w in adj1[v]))) for v in range(n1)]
        sig2 = [(c2[v], tuple(sorted(c2[w] for w in adj2[v]))) for v in range(len(adj2))]
        if Counter(sig1) != Counter(sig2):
            return None
        table = {s: i for i, s in enumerate(sorted(set(sig1)))}
        new1 = [table[s] for s in sig1]
        new2 = [table[s] for s in sig2]
        if len(table) == len(set(c1)):
            return new1, new2
        c1, c2 = new1, new2


def _verify(adj1, adj2, mapping) -> bool:
    for u in range(len(adj1)):
        image = Counter(mapping[w] for w in adj1[u])
        if image != Counter(adj2[mapping[u]]):
            return False
    return True


def find_isomorphism(g1: ColouredGraph, g2: ColouredGraph) -> list[int] | None:
    """Colour-preserving isomorphism ``g1 -> g2`` as a list, or ``None``."""
    if len(g1) != len(g2):
        return None
    if Counter(g1.colours) != Counter(g2.colours):
        return None
    palette = {c: i for i, c in enumerate(sorted(set(g1.colours), key=repr))}
    c1 = [palette[c] for c in g1.colours]
    c2 = [palette[c] for c in g2.colours]
    adj1, adj2 = g1.adj, g2.adj

    def search(c1, c2):
        refined = _refine(adj1, adj2, c1, c2)
        if refined is None:
            return None
        c1, c2 = refined
        sizes = Counter(c1)
        open_cells = [c for c, s in sizes.items() if s > 1]
        if not open_cells:
            inverse = {c: v for v, c in enumerate(c2)}
            mapping = [inverse[c] for c in c1]
            return mapping if _verify(adj1, adj2, mapping) else None
        cell = min(open_cells, key=lambda c: (sizes[c], c))
        u = c1.index(cell)
        fresh = max(c1) + 1
        for w in [v for v in range(len(c2)) if c2[v] == cell]:
            d1 = list(c1)
            d2 = list(c2)
            d1[u] = fresh
            d2[w] = fresh
            found = search(d1, d2)
            if found is not None:
                return found
        return None

    return search(c1, c2)


# -- encodings ---------------------------------------------------------------


@dataclass(frozen=True)
class ComplexIsomorphism:
    vertices: dict
    edges: dict
    faces: dict


def _encode_complex(X: PolygonalComplex):
    index: dict = {}
    colours: list = []

    def node(key, colour):
        index[key] = len(colours)
        colours.append(colour)

    for v in X.vertices:
        node(("V", v), ("V",))
    for e in X.edges:
        node(("E", e), ("E",))
        node(("D", e, 0), ("D",))
        node(("D", e, 1), ("D",))
    for f, face in X.faces.items():
        node(("F", f), ("F", face.geometry, len(face)))
        for i in range(len(face)):
            node(("S", f, i), ("S",))
            node(("C", f, i), ("C", face.angles[i]))
    adj = [[] for _ in colours]

    def join(a, b):
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])

    for e, (u, v) in X.edges.items():
        join(("D", e, 0), ("E", e))
        join(("D", e, 1), ("E", e))
        join(("D", e, 0), ("V", u))
        join(("D", e, 1), ("V", v))
    for f, face in X.faces.items():
        k = len(face)
        for i, (e, _) in enumerate(face.boundary):
            join(("S", f, i), ("F", f))
            join(("C", f, i), ("F", f))
            join(("S", f, i), ("E", e))
            join(("C", f, i), ("S", f, i))
            join(("C", f, i), ("S", f, (i - 1) % k))
            d_in, d_out = X.corner_directions(f, i)
            join(("C", f, i), ("D",) + d_in)
            join(("C", f, i), ("D",) + d_out)
    return ColouredGraph(adj, colours), list(index)


def are_isomorphic(X1: PolygonalComplex, X2: PolygonalComplex,
                   budget: int = DEFAULT_CELL_BUDGET) -> ComplexIsomorphism | None:
    """Dimension-, incidence- and angle-preserving cell bijection, or ``None``."""
    for X in (X1, X2):
        if X.cell_count() > budget:
            raise errors.SizeLimitExceeded(
                f"complex has {X.cell_count()} cells; budget is {budget}")
    if (len(X1.vertices), len(X1.edges), len(X1.faces)) != (
            len(X2.vertices), len(X2.edges), len(X2.faces)):
        return None
    g1, keys1 = _encode_complex(X1)
    g2, keys2 = _encode_complex(X2)
    mapping = find_isomorphism(g1, g2)
    if mapping is None:
        return None
    out = {"V": {}, "E": {}, "F": {}}
    for i, key in enumerate(keys1):
        if key[0] in out:
            out[key[0]][key[1]] = keys2[mapping[i]][1]
    return ComplexIsomorphism(out["V"], out["E"], out["F"])


def _encode_link(L: LinkGraph, weighted: bool):
    index = {n: i for i, n in enumerate(L.nodes)}
    colours: list = [("N",)] * len(L.nodes)
    adj: list[list[int]] = [[] for _ in L.nodes]
    for a in L.arcs:
        colours.append(("A", a.weight if weighted else None))
        adj.append([])
        i = len(adj) - 1
        for end in a.ends:
            adj[i].append(index[end])
            adj[index[end]].append(i)
    return ColouredGraph(adj, colours)


def link_isomorphism(L1: LinkGraph, L2: LinkGraph, weighted: bool = True) -> dict | None:
    """Node bijection between two weighted multigraphs, or ``None``."""
    if len(L1.nodes) != len(L2.nodes) or len(L1.arcs) != len(L2.arcs):
        return None
    mapping = find_isomorphism(_encode_link(L1, weighted), _encode_link(L2, weighted))
    if mapping is None:
        return None
    return {L1.nodes[i]: L2.nodes[mapping[i]] for i in range(len(L1.nodes))}


def graphs_isomorphic(nodes1: Sequence, edges1, nodes2: Sequence, edges2) -> bool:
    from .complex import graph_link

    return link_isomorphism(graph_link(nodes1, edges1), graph_link(nodes2, edges2)) is not None
