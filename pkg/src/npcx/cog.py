"""Simple polygons of finite groups.

A polygon of groups over a k-gon assigns a face group ``F``, edge groups
``E_0 .. E_{k-1}`` and vertex groups ``V_0 .. V_{k-1}``.  Vertex ``i`` sits
between edges ``i`` and ``i + 1`` (indices mod k), so edge ``j`` joins
vertices ``j - 1`` and ``j``.  All twisting elements are trivial: the complex
of groups is *simple*, and the two composite maps ``F -> V_i`` must agree.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import errors
from .complex import EUCLIDEAN, HYPERBOLIC, LinkGraph, Arc, PolygonalComplex, as_angle
from .curvature import CurvatureVerdict, VertexVerdict, weighted_girth, TWO_PI
from .groups import (FiniteGroup, Homomorphism, CoxeterSystem, INF, compose, cyclic_group,
                     direct_product, inverse, left_cosets, make_homomorphism)
from .growth import GrowthState, Plan

DEFAULT_MAX_RADIUS = 3


@dataclass(frozen=True)
class PolygonOfGroups:
    k: int
    F: FiniteGroup
    E: tuple[FiniteGroup, ...]
    V: tuple[FiniteGroup, ...]
    face_maps: tuple[Homomorphism, ...]  # F -> E_i
    left_maps: tuple[Homomorphism, ...]  # E_i -> V_i
    right_maps: tuple[Homomorphism, ...]  # E_{i+1} -> V_i
    angles: tuple[Fraction, ...]
    geometry: str = EUCLIDEAN

    @property
    def faithful_hint(self) -> bool:
        """True when the face group is trivial (the action on the development is faithful)."""
        return self.F.order() == 1

    def edge_into_vertex(self, j: int, i: int) -> Homomorphism:
        """Embedding of edge group ``j`` into an adjacent vertex group ``i``."""
        k = self.k
        if j == i % k:
            return self.left_maps[i % k]
        if j == (i + 1) % k:
            return self.right_maps[i % k]
        raise errors.InvalidInput(f"edge {j} is not adjacent to vertex {i}")

    def covolume_datum(self) -> "CovolumeDatum":
        return CovolumeDatum(tuple((f"v{i}", self.V[i].order()) for i in range(self.k)))


def polygon_of_groups(k: int, F: FiniteGroup, E: Sequence[FiniteGroup],
                      V: Sequence[FiniteGroup], face_images: Sequence,
                      left_images: Sequence, right_images: Sequence,
                      angles: Sequence, geometry: str = EUCLIDEAN) -> PolygonOfGroups:
    """Validate the data and build the embeddings from generator images."""
    if k < 3:
        raise errors.InvalidInput("a polygon needs at least 3 sides")
    for name, seq in (("edge groups", E), ("vertex groups", V), ("face maps", face_images),
                      ("edge-to-vertex maps", left_images),
                      ("next-edge-to-vertex maps", right_images), ("angles", angles)):
        if len(seq) != k:
            raise errors.InvalidInput(f"expected {k} {name}, got {len(seq)}")
    angles = tuple(as_angle(a) for a in angles)
    for a in angles:
        if not 0 < a < 1:
            raise errors.BadAngle(f"corner angle {a}π outside (0, 1)")
    total = sum(angles, Fraction(0))
    if geometry == EUCLIDEAN and total != k - 2:
        raise errors.EuclideanAngleSum(f"angle sum {total}π, expected {k - 2}π")
    if geometry == HYPERBOLIC and not total < k - 2:
        raise errors.HyperbolicAngleSum(f"angle sum {total}π, need < {k - 2}π")
    if geometry not in (EUCLIDEAN, HYPERBOLIC):
        raise errors.InvalidInput(f"unknown geometry {geometry!r}")
    fm = tuple(make_homomorphism(F, E[i], face_images[i]) for i in range(k))
    lm = tuple(make_homomorphism(E[i], V[i], left_images[i]) for i in range(k))
    rm = tuple(make_homomorphism(E[(i + 1) % k], V[i], right_images[i]) for i in range(k))
    for i in range(k):
        j = (i + 1) % k
        for f in F.elements():
            if lm[i](fm[i](f)) != rm[i](fm[j](f)):
                raise errors.NotAHomomorphism(
                    f"face group maps into vertex group {i} disagree; the polygon is not simple")
    return PolygonOfGroups(k, F, tuple(E), tuple(V), fm, lm, rm, angles, geometry)


def product_polygon(qs: Sequence[int], angles=None, geometry: str | None = None
                    ) -> PolygonOfGroups:
    """Trivial face group, cyclic edge groups ``Z/q_i``, vertex groups ``E_i x E_{i+1}``."""
    k = len(qs)
    if k < 3:
        raise errors.InvalidInput("a polygon needs at least 3 sides")
    E = [cyclic_group(q) for q in qs]
    V = [direct_product(E[i], E[(i + 1) % k]) for i in range(k)]
    F = FiniteGroup(1, [])
    left, right = [], []
    for i in range(k):
        n_left = len(E[i].generators)
        left.append(list(V[i].generators[:n_left]))
        right.append(list(V[i].generators[n_left:]))
    if angles is None:
        angles = [Fraction(1, 2)] * k
    if geometry is None:
        total = sum((as_angle(a) for a in angles), Fraction(0))
        geometry = EUCLIDEAN if total == k - 2 else HYPERBOLIC
    return polygon_of_groups(k, F, E, V, [[] for _ in range(k)], left, right, angles,
                             geometry)


def bourdon_polygon(p: int, q: int) -> PolygonOfGroups:
    """Right-angled hyperbolic p-gon with edge groups ``Z/q``."""
    if p < 5:
        raise errors.InvalidInput("a right-angled hyperbolic polygon needs p >= 5")
    if q < 2:
        raise errors.InvalidInput("q must be at least 2")
    return product_polygon([q] * p, [Fraction(1, 2)] * p, HYPERBOLIC)


# -- local developments ------------------------------------------------------


def local_development_link(P: PolygonOfGroups, i: int) -> LinkGraph:
    """Link of a type-``i`` vertex in the development, from coset data.

    Nodes are ``(j, n)`` for the n-th left coset of edge group ``j`` in
    ``V_i``; arc labels are ``(n1, n2, m)``.
    """
    k = P.k
    i %= k
    j = (i + 1) % k
    Vi = P.V[i]
    left = left_cosets(Vi, P.left_maps[i].images)
    right = left_cosets(Vi, P.right_maps[i].images)
    f_order = P.F.order()
    nodes = tuple([(i, n) for n in range(len(left))] + [(j, n) for n in range(len(right))])
    right_sets = [set(c) for c in right]
    arcs = []
    angle = P.angles[i]
    for n1, c1 in enumerate(left):
        for n2, s2 in enumerate(right_sets):
            size = sum(1 for g in c1 if g in s2)
            if size % f_order:
                raise errors.EmptyIntersectionInconsistency(
                    f"coset intersection of size {size} at vertex {i} is not a multiple "
                    f"of the face group order {f_order}")
            for m in range(size // f_order):
                arcs.append(Arc(((i, n1), (j, n2)), angle, (n1, n2, m)))
    return LinkGraph(nodes, tuple(arcs), base=i)


@dataclass(frozen=True)
class NPCVerdict:
    curvature: CurvatureVerdict

    @property
    def passed(self) -> bool:
        return self.curvature.passed

    @property
    def conclusion(self) -> str:
        return "developable" if self.passed else "inconclusive (not NPC)"

    def report(self) -> dict:
        out = self.curvature.report()
        out["conclusion"] = self.conclusion
        return out


def check_npc(P: PolygonOfGroups) -> NPCVerdict:
    """Gromov test on every local development; passing implies developability."""
    verdicts = []
    for i in range(P.k):
        L = local_development_link(P, i)
        g = weighted_girth(L)
        verdicts.append(VertexVerdict(i, g.at_least(TWO_PI), g, L))
    claim = "nonpositively curved" if P.geometry == EUCLIDEAN else "negatively curved"
    return NPCVerdict(CurvatureVerdict(tuple(verdicts), claim))


@dataclass(frozen=True)
class CovolumeDatum:
    orbits: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.orbits:
            raise errors.InvalidInput("at least one vertex orbit is required")
        for label, order in self.orbits:
            if int(order) < 1:
                raise errors.InvalidInput(f"stabiliser order of {label} must be positive")


def covolume(D: CovolumeDatum) -> Fraction:
    """Sum of reciprocal stabiliser orders over vertex orbits."""
    return sum((Fraction(1, int(order)) for _, order in D.orbits), Fraction(0))


# -- development -------------------------------------------------------------


@dataclass(frozen=True)
class Development:
    complex: PolygonalComplex
    vertex_types: Mapping[int, int]
    edge_types: Mapping[int, int]
    stabilisers: Mapping[str, Mapping[int, int]]  # "vertices"/"edges"/"faces" -> id -> order
    placements: tuple = ()  # vertices whose partial link needed a free placement

    def annotations(self) -> dict:
        return {"vertex_types": {str(v): t for v, t in sorted(self.vertex_types.items())},
                "edge_types": {str(e): t for e, t in sorted(self.edge_types.items())},
                "stabilizer_orders": {kind: {str(c): n for c, n in sorted(m.items())}
                                      for kind, m in self.stabilisers.items()}}


class _Developer:
    def __init__(self, P: PolygonOfGroups):
        self.P = P
        k = P.k
        self.state = GrowthState(k)
        self.state.base_chamber(list(range(k)), [(i + 1) % k for i in range(k)])
        # edge -> {face: element of the edge group}, defined up to left multiplication
        self.b: dict[int, dict[int, tuple]] = {}
        self.placements: list = []
        self.elements = [V.elements() for V in P.V]
        self.cosets = {}
        for i in range(k):
            for j in (i, (i + 1) % k):
                cos = left_cosets(P.V[i], P.edge_into_vertex(j, i).images)
                self.cosets[i, j] = {g: n for n, c in enumerate(cos) for g in c}
        self.inverse_maps = {}
        for i in range(k):
            for j in (i, (i + 1) % k):
                hom = P.edge_into_vertex(j, i)
                self.inverse_maps[i, j] = {img: src for src, img in hom.table.items()}

    def _edge_type(self, d):
        return self.state.etype[d[0]]

    def complete(self, v: int):
        st = self.state
        P = self.P
        k = P.k
        i = st.vtype[v]
        corners = list(st.vcorners[v])
        dirs_of = {c: st.corner_directions(*c) for c in corners}
        at_dir: dict = {}
        for c, ds in dirs_of.items():
            for d in ds:
                at_dir.setdefault(d, []).append(c)
        label: dict = {}
        components = []
        for c0 in corners:
            if c0 in label:
                continue
            comp = {c0: P.V[i].identity}
            queue = deque([c0])
            while queue:
                c = queue.popleft()
                for d in dirs_of[c]:
                    e = d[0]
                    if e not in self.b:
                        continue
                    j = st.etype[e]
                    hom = P.edge_into_vertex(j, i)
                    bc = self.b[e][c[0]]
                    for c2 in at_dir[d]:
                        want = compose(comp[c], hom(compose(inverse(bc), self.b[e][c2[0]])))
                        if c2 in comp:
                            if comp[c2] != want:
                                raise errors.LocalObstruction(
                                    f"edge labels around vertex {v} are inconsistent")
                        else:
                            comp[c2] = want
                            queue.append(c2)
            placed = self._place(v, i, comp, dirs_of, label)
            components.append(placed)
            label.update(placed)
        if len(components) > 1:
            self.placements.append(v)
        # directions -> coset nodes
        phi = {}
        for c, g in label.items():
            for d in dirs_of[c]:
                j = st.etype[d[0]]
                node = (j, self.cosets[i, j][g])
                if phi.setdefault(d, node) != node:
                    raise errors.LocalObstruction(f"edge at vertex {v} spans two cosets")
        if len(set(phi.values())) != len(phi):
            raise errors.LocalObstruction(
                f"two edges at vertex {v} fall in one coset; this development needs folding")
        image = set(phi.values())
        jl, jr = i, (i + 1) % k
        new_nodes = []
        for j, far in ((jl, (i - 1) % k), (jr, (i + 1) % k)):
            for n in sorted(set(self.cosets[i, j].values())):
                if (j, n) not in image:
                    new_nodes.append(((j, n), far, j))
        fresh_types = [(i + t) % k for t in range(2, k - 1)]
        inner_types = [(i + t) % k for t in range(2, k)]
        used = set(label.values())
        new_arcs = []
        for g in self.elements[i]:
            if g in used:
                continue
            x = (jl, self.cosets[i, jl][g])
            y = (jr, self.cosets[i, jr][g])
            new_arcs.append((g, x, y, fresh_types, inner_types))
        if new_arcs and k == 3:
            # a new triangle would join two existing vertices directly
            raise errors.InvalidInput("triangle chambers can only be developed when trivial")
        st.apply(v, Plan(phi, dict(label), new_nodes, new_arcs))
        self._record_edge_labels(v, i)

    def _place(self, v, i, comp, dirs_of, label):
        """Left-translate a component so it avoids chambers and cosets already used."""
        st = self.state
        taken = set(label.values())
        taken_cosets = {}
        for c, g in label.items():
            for d in dirs_of[c]:
                j = st.etype[d[0]]
                taken_cosets[j, self.cosets[i, j][g]] = d
        for h in self.elements[i]:
            moved = {c: compose(h, g) for c, g in comp.items()}
            if taken & set(moved.values()):
                continue
            ok = True
            for c, g in moved.items():
                for d in dirs_of[c]:
                    j = st.etype[d[0]]
                    owner = taken_cosets.get((j, self.cosets[i, j][g]))
                    if owner is not None and owner != d:
                        ok = False
            if ok:
                return moved
        raise errors.LocalObstruction(f"no room for the partial link at vertex {v}")

    def _record_edge_labels(self, v: int, i: int):
        st = self.state
        labels = st.complete[v].arc_of  # corner -> element of V_i
        for e, end in st.vdirs[v]:
            if e in self.b:
                continue
            j = st.etype[e]
            inv_map = self.inverse_maps[i, j]
            faces = []
            for f, _ in st.efaces[e]:
                c = next(c for c in st.vcorners[v] if c[0] == f)
                faces.append((f, labels[c]))
            base = inverse(faces[0][1])
            self.b[e] = {f: inv_map[compose(base, g)] for f, g in faces}


def develop_ball(P: PolygonOfGroups, r: int, max_radius: int = DEFAULT_MAX_RADIUS
                 ) -> Development:
    """Gallery ball of radius ``r`` around a base chamber of the development.

    Chambers around a vertex of type ``i`` are labelled by elements of
    ``V_i``; chambers around an edge of type ``j`` by elements of ``E_j``.
    Labels are propagated equivariantly, so each vertex star is a copy of
    the local development.  Only trivial face groups are supported.
    """
    if r < 0:
        raise errors.InvalidInput("radius must be non-negative")
    if r > max_radius:
        raise errors.RadiusBudget(f"radius {r} exceeds the configured maximum {max_radius}")
    if P.F.order() != 1:
        raise errors.InvalidInput("development is implemented for a trivial face group only")
    verdict = check_npc(P)
    if not verdict.passed:
        raise errors.NotNonpositivelyCurved(
            "some local development fails the link condition; development is not attempted")
    dev = _Developer(P)
    st = dev.state
    st.grow(r, dev.complete)
    X, vmap, emap, fmap = st.crop(
        r, lambda f, c: P.angles[st.vtype[st.corner_vertex(f, c)]], P.geometry)
    vtypes = {vmap[v]: st.vtype[v] for v in vmap}
    etypes = {emap[e]: st.etype[e] for e in emap}
    stabs = {"vertices": {v: P.V[t].order() for v, t in vtypes.items()},
             "edges": {e: P.E[t].order() for e, t in etypes.items()},
             "faces": {f: P.F.order() for f in fmap.values()}}
    placements = tuple(vmap[v] for v in dev.placements if v in vmap)
    return Development(X, vtypes, etypes, stabs, placements)


# -- right-angled chamber complexes ------------------------------------------


@dataclass(frozen=True)
class ChamberVertex:
    spherical: tuple  # subset J of the index set; () is the cone point
    group_order: int


@dataclass(frozen=True)
class RightAngledChamber:
    """The chamber ``K`` (cone on the subdivided nerve) with its local groups."""

    W: CoxeterSystem
    q: tuple[int, ...]
    nerve_edges: tuple[tuple, ...]
    vertices: tuple[ChamberVertex, ...]
    edges: tuple[tuple[int, int], ...]  # indices into vertices

    def nerve_cycle(self) -> list | None:
        """The nerve's vertices in cyclic order if the nerve is a single cycle."""
        labels = list(self.W.labels)
        nb = {s: [] for s in labels}
        for a, b in self.nerve_edges:
            nb[a].append(b)
            nb[b].append(a)
        if len(labels) < 3 or any(len(n) != 2 for n in nb.values()):
            return None
        order = [labels[0]]
        prev = None
        while True:
            cur = order[-1]
            nxt = [x for x in sorted(nb[cur], key=labels.index) if x != prev]
            if nxt[0] == order[0]:
                break
            prev = cur
            order.append(nxt[0])
            if len(order) > len(labels):
                return None
        return order if len(order) == len(labels) else None

    def to_polygon_of_groups(self) -> PolygonOfGroups:
        """For a cycle nerve of length p: the p-gon with edge groups ``G_i``.

        The chamber is the cone on the subdivided p-cycle, i.e. a p-gon whose
        sides are the mirrors and whose corners are the nerve edges; corners
        are right angles.
        """
        cyc = self.nerve_cycle()
        if cyc is None:
            raise errors.InvalidInput("the nerve is not a cycle; no polygon of groups")
        qmap = dict(zip(self.W.labels, self.q))
        p = len(cyc)
        return product_polygon([qmap[s] for s in cyc], [Fraction(1, 2)] * p)

    def star_development(self) -> PolygonalComplex:
        """Rank one: ``q`` segment chambers glued at the single mirror."""
        if self.W.rank != 1:
            raise errors.InvalidInput("star development needs a single generator")
        q = self.q[0]
        edges = {c: (0, c + 1) for c in range(q)}
        return PolygonalComplex(tuple(range(q + 1)), edges, {})


def right_angled_chamber_complex(W: CoxeterSystem, q) -> RightAngledChamber:
    if not W.is_right_angled():
        raise errors.NotRightAngled("all off-diagonal Coxeter entries must be 2 or infinity")
    if isinstance(q, int):
        q = [q] * W.rank
    q = tuple(int(x) for x in q)
    if len(q) != W.rank:
        raise errors.InvalidInput("one group order per generator is required")
    if any(x < 2 for x in q):
        raise errors.InvalidInput("group orders must be at least 2")
    labels = W.labels
    nerve = tuple((labels[a], labels[b]) for a in range(W.rank) for b in range(a + 1, W.rank)
                  if W.m[a][b] == 2)
    qmap = dict(zip(labels, q))
    verts = [ChamberVertex((), 1)]
    verts += [ChamberVertex((s,), qmap[s]) for s in labels]
    verts += [ChamberVertex((a, b), qmap[a] * qmap[b]) for a, b in nerve]
    index = {v.spherical: n for n, v in enumerate(verts)}
    edges = [(0, index[(s,)]) for s in labels]
    edges += [(0, index[e]) for e in nerve]
    for a, b in nerve:
        edges.append((index[(a,)], index[(a, b)]))
        edges.append((index[(b,)], index[(a, b)]))
    return RightAngledChamber(W, q, nerve, tuple(verts), tuple(edges))
