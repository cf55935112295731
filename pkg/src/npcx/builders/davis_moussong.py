"""Davis complexes of the Coxeter groups ``W(k, L)``.

``W(k, L)`` has an involution for each vertex of ``L`` and ``(st)^k = 1`` for
each edge; non-adjacent generators generate an infinite dihedral group.
Vertices are group elements, edges are right multiplication by a generator
and faces are left cosets of the finite dihedral subgroups, drawn as regular
Euclidean 2k-gons.
"""
from __future__ import annotations

from fractions import Fraction

from .. import errors
from ..complex import EUCLIDEAN, Face, PolygonalComplex
from ..curvature import graph_girth
from ..groups import CoxeterSystem, coxeter_ball
from .graphs import Graph


def coxeter_system_for(k: int, L: Graph) -> CoxeterSystem:
    if k < 2:
        raise errors.InvalidInput("k must be at least 2")
    girth = graph_girth(L.neighbours())
    if girth is not None and girth < 4:
        raise errors.CircuitTooShort(f"the link graph has a circuit of length {girth}")
    return CoxeterSystem.from_graph(L.nodes, L.edges, k)


def davis_moussong_ball(k: int, L: Graph, r: int) -> PolygonalComplex:
    """Word-length ball of radius ``r`` with every dihedral coset it fully contains.

    The identity vertex is interior, with link ``L``, once ``r >= k``.
    """
    W = coxeter_system_for(k, L)
    ball = coxeter_ball(W, r)
    n = len(ball.elements)
    step: dict = {}  # (vertex, generator) -> (neighbour, edge id, forward)
    for e, (i, j, s) in enumerate(ball.edges):
        step[i, s] = (j, e, True)
        step[j, s] = (i, e, False)
    angle = Fraction(k - 1, k)
    faces = {}
    pos = {v: i for i, v in enumerate(L.nodes)}
    pairs = sorted((tuple(sorted(e, key=pos.get)) for e in L.edges),
                   key=lambda st: (pos[st[0]], pos[st[1]]))
    for w in range(n):
        for s, t in pairs:
            cur, walk = w, []
            for x in range(2 * k):
                nxt = step.get((cur, (s, t)[x % 2]))
                if nxt is None:
                    break
                walk.append(nxt)
                cur = nxt[0]
            else:
                verts = frozenset(v for v, _, _ in walk)
                if cur != w or len(verts) != 2 * k:  # pragma: no cover - group law
                    raise AssertionError("dihedral walk did not close")
                if min(verts) != w:
                    continue
                faces[len(faces)] = Face(tuple((e, not fwd) for _, e, fwd in walk),
                                         (angle,) * (2 * k), EUCLIDEAN)
    edges = {e: (i, j) for e, (i, j, _) in enumerate(ball.edges)}
    on_face: dict = {v: 0 for v in range(n)}
    for face in faces.values():
        for e, _ in face.boundary:
            for v in edges[e]:
                on_face[v] += 1
    boundary = set()
    for v in range(n):
        if any((v, s) not in step for s in W.labels):
            boundary.add(v)
    # an interior vertex has one face (two incident face edges) per dihedral pair
    for v in range(n):
        if v not in boundary and on_face[v] != 2 * len(pairs):
            boundary.add(v)
    return PolygonalComplex(tuple(range(n)), edges, faces, frozenset(boundary))
