"""Search for a labelling that makes a ball look like a Cayley complex.

Each edge gets a generator and an orientation.  Every face boundary must
spell the relator up to rotation and inversion, and at each vertex every
generator labels at most one outgoing and one incoming edge (exactly one
of each at interior vertices).  Faces are placed one at a time in gallery
order; each face has at most ``2k`` placements.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .. import errors
from ..complex import PolygonalComplex
from ..groups import Presentation, invert_word

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class CayleyLabeling:
    """``labels[e] = (generator, forward)``; ``forward`` reads the edge from its first end."""

    labels: dict

    def word(self, X: PolygonalComplex, f: int) -> str:
        out = []
        for e, rev in X.faces[f].boundary:
            g, fwd = self.labels[e]
            out.append(g if fwd != rev else g.upper())
        return "".join(out)


def _readings(relator: tuple) -> list[tuple]:
    """All rotations of the relator and of its inverse, without repeats."""
    out = []
    for w in (relator, invert_word(relator)):
        for i in range(len(w)):
            r = w[i:] + w[:i]
            if r not in out:
                out.append(r)
    return out


def label_as_cayley(X: PolygonalComplex, P: Presentation,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> CayleyLabeling | None:
    if len(P.relators) != 1:
        raise errors.InvalidInput("exactly one relator is required")
    relator = tuple(P.relators[0])
    k = len(relator)
    for f, face in X.faces.items():
        if len(face) != k:
            raise errors.InvalidInput(f"face {f} has {len(face)} sides, relator has {k}")
    if not X.faces:
        return CayleyLabeling({})
    readings = _readings(relator)
    edges = X.edges
    on_edge = X.faces_on_edge()
    # faces in breadth-first gallery order so each new face is mostly pinned down
    order, seen = [], set()
    for start in X.faces:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            f = queue.popleft()
            order.append(f)
            for e, _ in X.faces[f].boundary:
                for g, _ in on_edge[e]:
                    if g not in seen:
                        seen.add(g)
                        queue.append(g)
    interior = set(X.interior_vertices())
    labels: dict = {}
    # slot (vertex, generator, outgoing) -> edge
    slots: dict = {}
    unlabelled = {v: 0 for v in X.vertices}
    for u, v in edges.values():
        unlabelled[u] += 1
        unlabelled[v] += 1
    nodes = 0

    def assign(e, g, fwd) -> list | None:
        u, v = edges[e]
        tail, head = (u, v) if fwd else (v, u)
        keys = [(tail, g, True), (head, g, False)]
        if tail == head or any(key in slots for key in keys):
            return None
        for key in keys:
            slots[key] = e
        labels[e] = (g, fwd)
        unlabelled[u] -= 1
        unlabelled[v] -= 1
        return keys

    def undo(e, keys):
        for key in keys:
            del slots[key]
        del labels[e]
        u, v = edges[e]
        unlabelled[u] += 1
        unlabelled[v] += 1

    def vertex_ok(w) -> bool:
        if w not in interior or unlabelled[w]:
            return True
        return all((w, g, out) in slots for g in P.generators for out in (True, False))

    def place(idx) -> bool:
        nonlocal nodes
        if idx == len(order):
            return True
        f = order[idx]
        boundary = X.faces[f].boundary
        for reading in readings:
            nodes += 1
            if nodes > node_budget:
                raise errors.SizeLimitExceeded(
                    f"labelling search exceeded {node_budget} placements")
            done = []
            ok = True
            for (e, rev), letter in zip(boundary, reading):
                g = letter.lower()
                fwd = (letter == g) != rev
                if e in labels:
                    if labels[e] != (g, fwd):
                        ok = False
                        break
                    continue
                keys = assign(e, g, fwd)
                if keys is None:
                    ok = False
                    break
                done.append((e, keys))
            if ok:
                touched = {x for e, _ in done for x in edges[e]}
                ok = all(vertex_ok(w) for w in touched)
            if ok and place(idx + 1):
                return True
            for e, keys in reversed(done):
                undo(e, keys)
        return False

    if place(0):
        return CayleyLabeling(dict(sorted(labels.items())))
    return None
