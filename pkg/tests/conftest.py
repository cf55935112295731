from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from npcx.builders import KLBuildParams, kl_build, named_graph
from npcx.complex import build_complex
from npcx.curvature import SimplicialComplex2

RIGHT = Fraction(1, 2)


def torus_complex():
    return build_complex({
        "vertices": [0],
        "edges": [{"id": 0, "ends": [0, 0]}, {"id": 1, "ends": [0, 0]}],
        "faces": [{"boundary": [[0, False], [1, False], [0, True], [1, True]],
                   "angles": ["1/2"] * 4}],
    })


def polygon_complex(k, angles=None, geometry="euclidean"):
    angles = angles or [Fraction(k - 2, k)] * k
    return build_complex({
        "vertices": list(range(k)),
        "edges": [[i, (i + 1) % k] for i in range(k)],
        "faces": [{"boundary": [[i, False] for i in range(k)], "angles": angles,
                   "geometry": geometry}],
    })


def clique_complex(nodes, edges) -> SimplicialComplex2:
    nb = {v: set() for v in nodes}
    for a, b in edges:
        nb[a].add(b)
        nb[b].add(a)
    tris = [t for t in combinations(nodes, 3)
            if t[1] in nb[t[0]] and t[2] in nb[t[0]] and t[2] in nb[t[1]]]
    return SimplicialComplex2.create(nodes, edges, tris)


def octahedron() -> SimplicialComplex2:
    nodes = range(6)
    edges = [(a, b) for a, b in combinations(nodes, 2) if abs(a - b) != 3]
    return clique_complex(list(nodes), edges)


def icosahedron() -> SimplicialComplex2:
    # apex 0, upper ring 1-5, lower ring 6-10, apex 11
    edges = []
    for i in range(5):
        up, up2 = 1 + i, 1 + (i + 1) % 5
        lo, lo2 = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up2), (up, lo), (up2, lo), (lo, lo2), (lo, 11)]
    return clique_complex(list(range(12)), edges)


def girth_oracle(nodes, arcs):
    """Brute force over loops, parallel pairs and simple cycles of the simple graph."""
    best = None

    def take(x):
        nonlocal best
        if best is None or x < best:
            best = x

    lightest = {}
    by_pair: dict = {}
    for u, v, w in arcs:
        if u == v:
            take(w)
            continue
        key = frozenset((u, v))
        by_pair.setdefault(key, []).append(w)
    for key, ws in by_pair.items():
        ws = sorted(ws)
        lightest[key] = ws[0]
        if len(ws) > 1:
            take(ws[0] + ws[1])
    G = nx.Graph()
    G.add_nodes_from(nodes)
    G.add_edges_from(tuple(k) for k in lightest)
    for cyc in nx.simple_cycles(G):
        if len(cyc) >= 3:
            take(sum(lightest[frozenset((cyc[i], cyc[i - 1]))] for i in range(len(cyc))))
    return best


@pytest.fixture(scope="session")
def k4_balls():
    L = named_graph("K4")
    return {s: kl_build(KLBuildParams(6, L, 2, s)) for s in ("trivial", "nontrivial")}
