"""Layered growth of polygonal complexes by completing vertex links.

A growth starts from a single k-gon and repeatedly *completes* vertices: the
partial link at a vertex is mapped into a target link, and every missing link
node becomes a new edge to a fresh vertex while every missing link arc becomes
a new k-gon.  The map may send several open directions (edges whose far end is
itself still open) to one target node; those edges are folded together, which
is how polygons grown from different sides come to share edges.  Which map is
used is decided by a chooser supplied by the caller.

Vertices are completed layer by layer: in layer d every corner of every
chamber at gallery distance d from the base chamber is completed.  After
``r`` layers all chambers within gallery distance ``r`` exist and are final.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from . import errors
from .complex import Face, PolygonalComplex

_MISSING = object()


class FoldError(Exception):
    """A requested identification would alter a completed vertex."""


@dataclass
class Plan:
    """How to complete one vertex.

    ``phi`` sends each existing direction to a target-link node and ``arc_of``
    each existing corner to a target-link arc.  ``new_nodes`` lists
    ``(node, far_vertex_type, edge_type)`` and ``new_arcs`` lists
    ``(arc, node_x, node_y, fresh_vertex_types, new_edge_types)``: the new
    chamber leaves the vertex along ``node_y`` and returns along ``node_x``.
    Types may be ``None`` when the growth is untyped.
    """

    phi: dict
    arc_of: dict
    new_nodes: list = field(default_factory=list)
    new_arcs: list = field(default_factory=list)


class GrowthState:
    """Cell store with a copy-on-write journal so tentative steps can be undone.

    All per-cell values are immutable tuples, so the journal only keeps
    references to replaced values.
    """

    _TABLES = ("vtype", "edges", "etype", "faces", "vdirs", "vcorners", "efaces", "complete")

    def __init__(self, k: int):
        self.k = k
        self.vtype: dict[int, Hashable] = {}
        self.edges: dict[int, tuple[int, int]] = {}
        self.etype: dict[int, Hashable] = {}
        self.faces: dict[int, tuple[tuple[int, bool], ...]] = {}
        self.vdirs: dict[int, tuple] = {}
        self.vcorners: dict[int, tuple] = {}
        self.efaces: dict[int, tuple] = {}
        self.complete: dict[int, Plan] = {}
        self._next = [0, 0, 0]
        self._frames: list = []

    # -- journal -------------------------------------------------------------

    def begin(self):
        self._frames.append(([], set(), list(self._next)))

    def commit(self):
        log, seen, _ = self._frames.pop()
        if self._frames:
            outer_log, outer_seen, _ = self._frames[-1]
            for entry in log:
                if entry[:2] not in outer_seen:
                    outer_seen.add(entry[:2])
                    outer_log.append(entry)

    def rollback(self):
        log, _, counters = self._frames.pop()
        for name, key, old in reversed(log):
            table = getattr(self, name)
            if old is _MISSING:
                table.pop(key, None)
            else:
                table[key] = old
        self._next = counters

    def _set(self, name: str, key, value):
        table = getattr(self, name)
        if self._frames:
            log, seen, _ = self._frames[-1]
            if (name, key) not in seen:
                seen.add((name, key))
                log.append((name, key, table.get(key, _MISSING)))
        if value is _MISSING:
            table.pop(key, None)
        else:
            table[key] = value

    def _append(self, name: str, key, item):
        self._set(name, key, getattr(self, name)[key] + (item,))

    def _remove(self, name: str, key, item):
        cur = list(getattr(self, name)[key])
        cur.remove(item)
        self._set(name, key, tuple(cur))

    # -- construction --------------------------------------------------------

    def add_vertex(self, vtype=None) -> int:
        v = self._next[0]
        self._next[0] += 1
        self._set("vtype", v, vtype)
        self._set("vdirs", v, ())
        self._set("vcorners", v, ())
        return v

    def add_edge(self, u: int, v: int, etype=None) -> int:
        e = self._next[1]
        self._next[1] += 1
        self._set("edges", e, (u, v))
        if etype is not None:
            self._set("etype", e, etype)
        self._append("vdirs", u, (e, 0))
        self._append("vdirs", v, (e, 1))
        self._set("efaces", e, ())
        return e

    def add_face(self, steps: Sequence[tuple[int, bool]]) -> int:
        f = self._next[2]
        self._next[2] += 1
        self._set("faces", f, tuple(steps))
        for i, (e, _) in enumerate(steps):
            self._append("efaces", e, (f, i))
            self._append("vcorners", self.corner_vertex(f, i), (f, i))
        return f

    def mark_complete(self, v: int, plan: Plan):
        self._set("complete", v, plan)

    # -- folding -------------------------------------------------------------

    def fold(self, d1: tuple[int, int], d2: tuple[int, int]) -> tuple[int, int]:
        """Identify two directions at one vertex; returns the surviving direction."""
        e1, end1 = d1
        e2, end2 = d2
        if e1 == e2:
            return d1
        a1, a2 = self.other_end(d1), self.other_end(d2)
        if a1 in self.complete or a2 in self.complete:
            raise FoldError("cannot fold an edge into a completed vertex")
        if a1 != a2:
            self._merge_vertices(a1, a2)
        self._merge_parallel(e1, e2)
        self._fold_parallels(a1)
        return d1

    def _merge_vertices(self, keep: int, gone: int):
        if self.vtype.get(keep) != self.vtype.get(gone):
            raise FoldError("cannot identify vertices of different types")
        corners = self.vcorners[gone]
        for e, end in self.vdirs[gone]:
            ends = list(self.edges[e])
            ends[end] = keep
            self._set("edges", e, tuple(ends))
            self._append("vdirs", keep, (e, end))
        for c in corners:
            self._append("vcorners", keep, c)
        self._set("vdirs", gone, _MISSING)
        self._set("vcorners", gone, _MISSING)
        self._set("vtype", gone, _MISSING)

    def _merge_parallel(self, keep: int, gone: int):
        """Merge edge ``gone`` into the parallel edge ``keep``."""
        if self.etype.get(keep) != self.etype.get(gone):
            raise FoldError("cannot identify edges of different types")
        ku, kv = self.edges[keep]
        gu, gv = self.edges[gone]
        if {ku, kv} != {gu, gv}:  # pragma: no cover - internal invariant
            raise FoldError("edges are not parallel")
        flip = (gu, gv) != (ku, kv)
        for f, i in self.efaces[gone]:
            steps = list(self.faces[f])
            _, rev = steps[i]
            steps[i] = (keep, rev != flip)
            self._set("faces", f, tuple(steps))
            self._append("efaces", keep, (f, i))
        self._remove("vdirs", gu, (gone, 0))
        self._remove("vdirs", gv, (gone, 1))
        self._set("edges", gone, _MISSING)
        self._set("efaces", gone, _MISSING)
        self._set("etype", gone, _MISSING)

    def _fold_parallels(self, a: int):
        changed = True
        while changed:
            changed = False
            by_far: dict = {}
            for e, end in self.vdirs[a]:
                w = self.edges[e][1 - end]
                if w == a:
                    raise FoldError("folding produced a loop edge")
                by_far.setdefault(w, []).append(e)
            for w, es in by_far.items():
                if len(es) > 1:
                    if w in self.complete:
                        raise FoldError("folding would change a completed link")
                    self._merge_parallel(es[0], es[1])
                    changed = True
                    break
        nodes = {}
        for f, i in self.vcorners[a]:
            key = frozenset(self.corner_directions(f, i))
            if key in nodes or len(key) != 2:
                raise FoldError("folding produced a repeated corner")
            nodes[key] = (f, i)

    # -- incidence -----------------------------------------------------------

    def step_ends(self, f: int, i: int) -> tuple[int, int]:
        e, rev = self.faces[f][i]
        u, v = self.edges[e]
        return (v, u) if rev else (u, v)

    def corner_vertex(self, f: int, i: int) -> int:
        return self.step_ends(f, i)[0]

    def corner_directions(self, f: int, i: int):
        b = self.faces[f]
        e_in, rev_in = b[i - 1]
        e_out, rev_out = b[i]
        return (e_in, 0 if rev_in else 1), (e_out, 1 if rev_out else 0)

    def other_end(self, d: tuple[int, int]) -> int:
        e, end = d
        return self.edges[e][1 - end]

    def saturated(self, d: tuple[int, int]) -> bool:
        return self.other_end(d) in self.complete

    def partial_link(self, v: int):
        arcs = [((f, i),) + self.corner_directions(f, i) for f, i in self.vcorners[v]]
        return list(self.vdirs[v]), arcs

    # view protocol shared with the holonomy code
    def boundary(self, f: int):
        return self.faces[f]

    def faces_at_edge(self, e: int):
        return self.efaces[e]

    def corners_at(self, v: int):
        return self.vcorners[v]

    def is_settled(self, v: int) -> bool:
        return v in self.complete

    # -- growth --------------------------------------------------------------

    def base_chamber(self, vertex_types: Sequence | None = None,
                     edge_types: Sequence | None = None) -> int:
        k = self.k
        vt = list(vertex_types) if vertex_types is not None else [None] * k
        et = list(edge_types) if edge_types is not None else [None] * k
        vs = [self.add_vertex(vt[i]) for i in range(k)]
        es = [self.add_edge(vs[i], vs[(i + 1) % k], et[i]) for i in range(k)]
        return self.add_face([(e, False) for e in es])

    def _chamber(self, v: int, dx, dy, fresh_types, edge_types=None) -> int:
        """New k-gon leaving ``v`` along direction ``dy`` and returning along ``dx``."""
        uy, ux = self.other_end(dy), self.other_end(dx)
        fresh = [self.add_vertex(t) for t in fresh_types]
        path = [uy] + fresh + [ux]
        ey = dy[0]
        steps = [(ey, self.edges[ey][0] != v)]
        et = list(edge_types) if edge_types is not None else [None] * (len(path) - 1)
        for j, (a, b) in enumerate(zip(path, path[1:])):
            steps.append((self.add_edge(a, b, et[j]), False))
        ex = dx[0]
        steps.append((ex, self.edges[ex][0] != ux))
        return self.add_face(steps)

    def apply(self, v: int, plan: Plan):
        """Fold, add the cells requested by ``plan`` and mark ``v`` complete.

        Raises :class:`FoldError` when the plan's identifications are invalid;
        callers running inside :meth:`begin` can roll back.
        """
        groups: dict = {}
        for d, node in plan.phi.items():
            groups.setdefault(node, []).append(d)
        direction = {}
        for node, ds in groups.items():
            keep = ds[0]
            for d in ds[1:]:
                keep = self.fold(keep, d)
            direction[node] = keep
        phi = {d: node for node, d in direction.items()}
        arc_of = dict(plan.arc_of)
        for node, far_type, etype in plan.new_nodes:
            w = self.add_vertex(far_type)
            e = self.add_edge(v, w, etype)
            direction[node] = (e, 0)
            phi[(e, 0)] = node
        for arc, x, y, fresh_types, inner in plan.new_arcs:
            f = self._chamber(v, direction[x], direction[y], fresh_types, inner)
            arc_of[(f, 0)] = arc
        self.mark_complete(v, Plan(phi, arc_of))

    def gallery_distances(self, base: int = 0) -> dict[int, int]:
        dist = {base: 0}
        queue = deque([base])
        while queue:
            f = queue.popleft()
            for e, _ in self.faces[f]:
                for g, _ in self.efaces[e]:
                    if g not in dist:
                        dist[g] = dist[f] + 1
                        queue.append(g)
        return dist

    def grow(self, radius: int, complete_vertex: Callable[[int], None],
             face_budget: int | None = None):
        """Complete the corners of every chamber within gallery distance ``radius - 1``."""
        for layer in range(radius):
            while True:
                # folding can merge vertices, so pick one open corner at a time
                dist = self.gallery_distances()
                todo = None
                for f in sorted(dist, key=lambda f: (dist[f], f)):
                    if dist[f] > layer:
                        break
                    for i in range(len(self.faces[f])):
                        v = self.corner_vertex(f, i)
                        if v not in self.complete:
                            todo = v
                            break
                    if todo is not None:
                        break
                if todo is None:
                    break
                complete_vertex(todo)
                if face_budget is not None and len(self.faces) > face_budget:
                    raise errors.BudgetExceeded(
                        f"growth exceeded {face_budget} faces at layer {layer + 1}")

    def crop(self, radius: int, angles: Sequence[Fraction] | Callable, geometry: str):
        """The gallery ball of radius ``radius`` around face 0 as a complex.

        Returns the complex and the maps from growth ids to output ids for
        vertices, edges and faces (output ids are consecutive in creation order).
        """
        dist = self.gallery_distances()
        kept = sorted(f for f, d in dist.items() if d <= radius)
        kept_set = set(kept)
        vs: set[int] = set()
        es: set[int] = set()
        for f in kept:
            for e, _ in self.faces[f]:
                es.add(e)
                vs.update(self.edges[e])
        vmap = {v: i for i, v in enumerate(sorted(vs))}
        emap = {e: i for i, e in enumerate(sorted(es))}
        fmap = {f: i for i, f in enumerate(kept)}
        edges = {emap[e]: (vmap[self.edges[e][0]], vmap[self.edges[e][1]]) for e in es}
        faces = {}
        for f in kept:
            k = len(self.faces[f])
            if callable(angles):
                ang = tuple(angles(f, i) for i in range(k))
            else:
                ang = tuple(angles)
            faces[fmap[f]] = Face(tuple((emap[e], rev) for e, rev in self.faces[f]), ang,
                                  geometry)
        boundary = set()
        for v in vs:
            if v not in self.complete or any(g not in kept_set for g, _ in self.vcorners[v]):
                boundary.add(vmap[v])
        X = PolygonalComplex(tuple(range(len(vmap))), edges, faces, frozenset(boundary))
        return X, vmap, emap, fmap


def link_embeddings(nodes: Sequence, arcs: Sequence, target_nodes: Sequence,
                    target_edges: Iterable, saturated: Callable,
                    foldable: Callable | None = None) -> Iterable[dict]:
    """Maps of a partial link into a simple target graph, in a deterministic order.

    ``arcs`` are ``(label, a, b)`` triples.  Every arc must land on a target
    edge, distinct arcs on distinct edges, and a saturated node on a target
    node of the same degree.  Nodes may share an image only when ``foldable``
    accepts all of them; maps with fewer identifications come first.
    """
    tnb: dict = {t: set() for t in target_nodes}
    for a, b in target_edges:
        tnb[a].add(b)
        tnb[b].add(a)
    t_order = list(target_nodes)
    nb: dict = {n: [] for n in nodes}
    for _, a, b in arcs:
        if a == b:
            return
        nb[a].append(b)
        nb[b].append(a)
    order: list = []
    placed = set()
    for start in nodes:
        if start in placed:
            continue
        queue = deque([start])
        placed.add(start)
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in nb[x]:
                if y not in placed:
                    placed.add(y)
                    queue.append(y)
    deg = {n: len(nb[n]) for n in nodes}
    sat = {n: saturated(n) for n in nodes}
    can_fold = {n: (foldable(n) if foldable else False) for n in nodes}

    def search(max_folds):
        phi: dict = {}
        preimage: dict = {}
        used_edges: set = set()

        def extend(i, folds):
            if i == len(order):
                if folds == max_folds:
                    yield dict(phi)
                return
            x = order[i]
            for t in t_order:
                shared = preimage.get(t, [])
                extra = 1 if shared else 0
                if shared and (folds + 1 > max_folds or not can_fold[x]
                               or not all(can_fold[y] for y in shared)):
                    continue
                if sat[x] and deg[x] != len(tnb[t]):
                    continue
                if deg[x] > len(tnb[t]):
                    continue
                new_edges = []
                ok = True
                for y in nb[x]:
                    if y not in phi:
                        continue
                    s = phi[y]
                    key = frozenset((t, s))
                    if s == t or s not in tnb[t] or key in used_edges or key in new_edges:
                        ok = False
                        break
                    new_edges.append(key)
                if not ok:
                    continue
                phi[x] = t
                preimage.setdefault(t, []).append(x)
                used_edges.update(new_edges)
                yield from extend(i + 1, folds + extra)
                used_edges.difference_update(new_edges)
                preimage[t].pop()
                if not preimage[t]:
                    del preimage[t]
                del phi[x]

        yield from extend(0, 0)

    limit = len(nodes) - 1 if foldable else 0
    for folds in range(0, max(limit, 0) + 1):
        yield from search(folds)
