"""Link-based curvature verdicts.

All thresholds are exact: angles are Fractions in units of pi and the Gromov
link condition compares the weighted girth of each link against ``2``.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from . import errors
from .complex import EUCLIDEAN, LinkGraph, PolygonalComplex, format_angle, link

TWO_PI = Fraction(2)


@dataclass(frozen=True)
class GirthReport:
    """Minimal weight of an injective loop; ``minimum is None`` means infinite."""

    minimum: Fraction | None
    witness: tuple[int, ...] = ()  # arc indices in cyclic order

    @property
    def infinite(self) -> bool:
        return self.minimum is None

    def at_least(self, bound: Fraction) -> bool:
        return self.minimum is None or self.minimum >= bound


def weighted_girth(L: LinkGraph) -> GirthReport:
    """Minimum total weight over vertex-injective cycles of a weighted multigraph.

    Loop arcs and pairs of parallel arcs count as cycles.  For each arc
    ``(u, v)`` the cheapest cycle through it is the arc plus a shortest
    ``v``-to-``u`` path avoiding it; the minimum over arcs is the girth.
    """
    for a in L.arcs:
        if a.weight <= 0:
            raise errors.NonPositiveWeight(f"arc {a.label!r} has weight {a.weight}")
    inc = L.incidence()
    best: Fraction | None = None
    witness: tuple[int, ...] = ()
    for i, a in enumerate(L.arcs):
        u, v = a.ends
        if u == v:
            if best is None or a.weight < best:
                best, witness = a.weight, (i,)
            continue
        # Dijkstra from v to u without arc i
        dist = {v: Fraction(0)}
        prev: dict = {}
        heap = [(Fraction(0), 0, v)]
        tie = 1
        done = set()
        while heap:
            d, _, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            if x == u or (best is not None and d + a.weight >= best):
                break
            for j in inc[x]:
                if j == i:
                    continue
                y = L.arcs[j].other(x)
                nd = d + L.arcs[j].weight
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    prev[y] = (x, j)
                    heapq.heappush(heap, (nd, tie, y))
                    tie += 1
        if u in done:
            total = dist[u] + a.weight
            if best is None or total < best:
                path = []
                x = u
                while x != v:
                    x, j = prev[x]
                    path.append(j)
                best, witness = total, (i,) + tuple(reversed(path))
    return GirthReport(best, witness)


@dataclass(frozen=True)
class VertexVerdict:
    vertex: Hashable
    passed: bool
    girth: GirthReport
    link: LinkGraph | None = None

    def report(self) -> dict:
        out = {"vertex": self.vertex, "pass": self.passed,
               "total": None if self.girth.infinite else format_angle(self.girth.minimum),
               "witness": []}
        if self.link is not None and self.girth.witness:
            out["witness"] = [list(self.link.arcs[j].label) if isinstance(
                self.link.arcs[j].label, tuple) else self.link.arcs[j].label
                for j in self.girth.witness]
        return out


@dataclass(frozen=True)
class CurvatureVerdict:
    vertices: tuple[VertexVerdict, ...]
    claim: str
    skipped: tuple = ()

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.vertices)

    def failures(self) -> list[VertexVerdict]:
        return [v for v in self.vertices if not v.passed]

    def report(self) -> dict:
        return {"claim": self.claim if self.passed else "not " + self.claim,
                "pass": self.passed,
                "vertices": [v.report() for v in self.vertices],
                "skipped_boundary": list(self.skipped)}


def check_gromov(X: PolygonalComplex, include_boundary: bool = False) -> CurvatureVerdict:
    """Gromov link condition at every vertex (boundary vertices skipped by default)."""
    geoms = X.geometries()
    if len(geoms) > 1:
        raise errors.MixedGeometry(f"faces carry several geometries: {sorted(geoms)}")
    geometry = geoms.pop() if geoms else EUCLIDEAN
    claim = "locally CAT(0)" if geometry == EUCLIDEAN else "locally CAT(-1)"
    verdicts = []
    skipped = []
    for v in X.vertices:
        if v in X.boundary_vertices and not include_boundary:
            skipped.append(v)
            continue
        L = link(X, v)
        g = weighted_girth(L)
        verdicts.append(VertexVerdict(v, g.at_least(TWO_PI), g, L))
    return CurvatureVerdict(tuple(verdicts), claim, tuple(skipped))


# -- simplicial descriptions -------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex2:
    """A graph together with a set of filled triangles."""

    vertices: tuple
    edges: frozenset  # of frozenset pairs
    triangles: frozenset = frozenset()  # of frozenset triples

    @classmethod
    def create(cls, vertices: Iterable, edges: Iterable, triangles: Iterable = ()):
        E = frozenset(frozenset(e) for e in edges)
        T = frozenset(frozenset(t) for t in triangles)
        V = tuple(sorted(set(vertices) | {x for e in E for x in e}, key=_order_key))
        for e in E:
            if len(e) != 2:
                raise errors.InvalidInput(f"edge {sorted(e, key=_order_key)} is not a pair")
        for t in T:
            if len(t) != 3 or any(frozenset(p) not in E for p in combinations(t, 2)):
                raise errors.InvalidInput(
                    f"filled triangle {sorted(t, key=_order_key)} is not a triangle of the graph")
        return cls(V, E, T)

    def neighbours(self) -> dict:
        nb = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            nb[a].add(b)
            nb[b].add(a)
        return nb

    def link_graph(self, v) -> tuple[list, list]:
        """Vertices and edges of the link of ``v``."""
        nb = sorted(self.neighbours()[v], key=_order_key)
        edges = []
        for t in self.triangles:
            if v in t:
                a, b = sorted(t - {v}, key=_order_key)
                edges.append((a, b))
        return nb, sorted(edges, key=lambda e: (_order_key(e[0]), _order_key(e[1])))


def _order_key(x):
    return (0, x) if isinstance(x, (int, Fraction)) else (1, repr(x))


def _three_cliques(vertices, nb) -> list[tuple]:
    order = {v: i for i, v in enumerate(vertices)}
    out = []
    for a in vertices:
        for b in sorted(nb[a], key=order.get):
            if order[b] <= order[a]:
                continue
            for c in sorted(nb[a] & nb[b], key=order.get):
                if order[c] > order[b]:
                    out.append((a, b, c))
    return out


@dataclass(frozen=True)
class FlagReport:
    flag: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.flag


def check_flag(S: SimplicialComplex2) -> FlagReport:
    """True iff every 3-clique of the graph is a filled triangle."""
    for tri in _three_cliques(S.vertices, S.neighbours()):
        if frozenset(tri) not in S.triangles:
            return FlagReport(False, tri)
    return FlagReport(True)


# -- plain graph utilities ---------------------------------------------------


def _adjacency(nodes, edges) -> dict:
    nb = {v: set() for v in nodes}
    for a, b in edges:
        if a == b:
            raise errors.InvalidInput("graphs here must be simple (no loops)")
        nb[a].add(b)
        nb[b].add(a)
    return nb


def bfs_distances(nb: Mapping, source) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in nb[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def graph_diameter(nb: Mapping) -> int:
    nodes = list(nb)
    diam = 0
    for v in nodes:
        d = bfs_distances(nb, v)
        if len(d) != len(nodes):
            raise errors.Disconnected("graph is not connected")
        diam = max(diam, max(d.values()))
    return diam


def graph_girth(nb: Mapping) -> int | None:
    """Length of a shortest cycle of a simple graph (``None`` for a forest)."""
    best = None
    for s in nb:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nb[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def _is_isometric(cycle, nb) -> bool:
    n = len(cycle)
    for i, a in enumerate(cycle):
        d = bfs_distances(nb, a)
        for j in range(i + 1, n):
            along = min(j - i, n - (j - i))
            if d.get(cycle[j]) != along:
                return False
    return True


def _induced_cycles(nb: Mapping, lengths: Iterable[int], order) -> Iterable[tuple]:
    """Chordless cycles with length in ``lengths``, each once, smallest vertex first."""
    wanted = set(lengths)
    if not wanted:
        return
    top = max(wanted)
    rank = {v: i for i, v in enumerate(order)}
    for s in order:
        stack = [[s]]
        while stack:
            path = stack.pop()
            x = path[-1]
            closing_only = len(path) > 2 and x in nb[s]
            for y in sorted(nb[x], key=rank.get, reverse=True):
                if rank[y] < rank[s]:
                    continue
                if y == s:
                    if len(path) >= 3 and len(path) in wanted and rank[path[1]] < rank[path[-1]]:
                        yield tuple(path)
                    continue
                if closing_only or y in path or len(path) >= top:
                    continue
                # no chords back into the interior of the path
                if any(y in nb[z] for z in path[1:-1]):
                    continue
                stack.append(path + [y])


@dataclass(frozen=True)
class SystolicVerdict:
    flag: bool
    vertices: tuple  # of (vertex, passed, witness cycle or None)
    simply_connected_asserted: bool = True

    @property
    def passed(self) -> bool:
        return self.flag and all(p for _, p, _ in self.vertices)

    def report(self) -> dict:
        return {"pass": self.passed, "flag": self.flag,
                "simply_connected": "asserted by caller" if self.simply_connected_asserted
                else "not asserted",
                "vertices": [{"vertex": v, "pass": p, "witness": list(w) if w else []}
                             for v, p, w in self.vertices]}


def check_systolic(S: SimplicialComplex2, simply_connected: bool = True) -> SystolicVerdict:
    """Per-vertex test that no link contains an isometric 4- or 5-cycle.

    Simple connectivity is never computed; it is recorded as the caller's
    assertion.
    """
    flag = check_flag(S)
    if not flag:
        raise errors.NotFlag(f"empty triangle {flag.witness}")
    nb_all = S.neighbours()
    if S.vertices and len(bfs_distances(nb_all, S.vertices[0])) != len(S.vertices):
        raise errors.Disconnected("simplicial complex is not connected")
    out = []
    for v in S.vertices:
        nodes, edges = S.link_graph(v)
        nb = _adjacency(nodes, edges)
        witness = None
        for cyc in _induced_cycles(nb, (4, 5), nodes):
            if _is_isometric(cyc, nb):
                witness = cyc
                break
        out.append((v, witness is None, witness))
    return SystolicVerdict(True, tuple(out), simply_connected)


@dataclass(frozen=True)
class BridgedReport:
    bridged: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.bridged


def check_bridged(nodes: Iterable, edges: Iterable) -> BridgedReport:
    """True iff the connected graph has no isometric cycle of length >= 4.

    Only cycles up to ``2 * diameter + 1`` need inspection; an isometric cycle
    of length ``l`` has two vertices at distance ``l // 2``.
    """
    nodes = sorted(set(nodes) | {x for e in edges for x in e}, key=_order_key)
    nb = _adjacency(nodes, edges)
    if not nodes:
        return BridgedReport(True)
    diam = graph_diameter(nb)
    for cyc in _induced_cycles(nb, range(4, 2 * diam + 2), nodes):
        if _is_isometric(cyc, nb):
            return BridgedReport(False, cyc)
    return BridgedReport(True)


@dataclass(frozen=True)
class MgonReport:
    passed: bool
    diameter: int
    girth: int | None
    m: int

    def __bool__(self):
        return self.passed


def check_generalized_mgon(nodes: Iterable, edges: Iterable, m: int) -> MgonReport:
    """Diameter ``m`` and girth ``2m``."""
    if m < 2:
        raise errors.InvalidInput("m must be at least 2")
    nodes = sorted(set(nodes) | {x for e in edges for x in e}, key=_order_key)
    if len(nodes) < 2:
        raise errors.InvalidInput("need at least two nodes")
    nb = _adjacency(nodes, edges)
    diam = graph_diameter(nb)
    girth = graph_girth(nb)
    return MgonReport(diam == m and girth == 2 * m, diam, girth, m)
