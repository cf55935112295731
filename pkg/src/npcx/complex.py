"""Two-dimensional polyhedral complexes with exact corner angles.

Angles are stored as :class:`fractions.Fraction` values in units of pi, so the
corner angle ``Fraction(1, 2)`` is a right angle.  Nothing in the curvature
logic ever touches floating point.

A face boundary is a cyclic sequence of *steps* ``(edge, reversed)``.  Corner
``i`` of a face sits at the tail of step ``i`` and joins the head-direction of
step ``i-1`` to the tail-direction of step ``i``.  A *direction* at a vertex is
an edge end ``(edge, end)`` with ``end`` 0 for the first listed endpoint and 1
for the second, so loops contribute two distinct directions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from . import errors

EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"
GEOMETRIES = (EUCLIDEAN, HYPERBOLIC)


def as_angle(value) -> Fraction:
    """Coerce ``value`` to an angle in units of pi.

    Accepts a Fraction, an int, a ``"num/den"`` string, a ``(num, den)`` pair
    or a ``{"num": .., "den": ..}`` mapping.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Mapping):
        return Fraction(int(value["num"]), int(value["den"]))
    if isinstance(value, (tuple, list)):
        num, den = value
        return Fraction(int(num), int(den))
    if isinstance(value, str):
        return Fraction(value.replace("pi", "").replace("π", "").strip())
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an angle")


def format_angle(a: Fraction) -> str:
    """``2π``, ``π/2``, ``3π/4``."""
    num = "" if a.numerator == 1 else str(a.numerator)
    return f"{num}π" if a.denominator == 1 else f"{num}π/{a.denominator}"


@dataclass(frozen=True)
class Face:
    boundary: tuple[tuple[int, bool], ...]
    angles: tuple[Fraction, ...]
    geometry: str = EUCLIDEAN

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class Arc:
    """An arc of a link graph; ``label`` identifies the face corner it stands for."""

    ends: tuple[Hashable, Hashable]
    weight: Fraction
    label: Hashable = None

    def other(self, node):
        a, b = self.ends
        return b if node == a else a


@dataclass(frozen=True)
class LinkGraph:
    """Weighted multigraph of directions at a vertex.

    Also used for any weighted multigraph (local development links, named
    graphs), in which case ``base`` may be ``None``.
    """

    nodes: tuple
    arcs: tuple[Arc, ...]
    base: Hashable = None

    def degree(self, node) -> int:
        return sum((a.ends[0] == node) + (a.ends[1] == node) for a in self.arcs)

    def incidence(self) -> dict:
        """Map node -> list of arc indices (a loop arc appears twice)."""
        inc = {n: [] for n in self.nodes}
        for i, a in enumerate(self.arcs):
            inc[a.ends[0]].append(i)
            inc[a.ends[1]].append(i)
        return inc

    def neighbours(self) -> dict:
        nb = {n: set() for n in self.nodes}
        for a in self.arcs:
            u, v = a.ends
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def is_simple(self) -> bool:
        seen = set()
        for a in self.arcs:
            u, v = a.ends
            if u == v:
                return False
            key = frozenset((u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def to_dot(self, name: str = "link") -> str:
        index = {n: i for i, n in enumerate(self.nodes)}
        lines = [f"graph {name} {{"]
        for n, i in index.items():
            lines.append(f'  n{i} [label="{n}"];')
        for a in self.arcs:
            u, v = a.ends
            lines.append(f'  n{index[u]} -- n{index[v]} [label="{format_angle(a.weight)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def graph_link(nodes: Iterable, edges: Iterable, weight=Fraction(1, 2)) -> LinkGraph:
    """Build a :class:`LinkGraph` with a constant weight from a plain edge list."""
    nodes = tuple(nodes)
    w = as_angle(weight)
    arcs = tuple(Arc((u, v), w, i) for i, (u, v) in enumerate(edges))
    return LinkGraph(nodes, arcs)


@dataclass(frozen=True, eq=True)
class PolygonalComplex:
    """A validated 2-dimensional polyhedral complex.

    ``edges`` maps edge id to its ordered endpoint pair and ``faces`` maps face
    id to :class:`Face`.  Instances validate themselves on construction and are
    treated as immutable.  ``boundary_vertices`` marks vertices whose link is
    known to be incomplete (the rim of a ball cut out of a larger complex).
    """

    vertices: tuple[int, ...]
    edges: Mapping[int, tuple[int, int]]
    faces: Mapping[int, Face] = field(default_factory=dict)
    boundary_vertices: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", {e: tuple(self.edges[e]) for e in sorted(self.edges)})
        object.__setattr__(self, "faces", {f: self.faces[f] for f in sorted(self.faces)})
        object.__setattr__(self, "boundary_vertices", frozenset(self.boundary_vertices))
        self._validate()

    __hash__ = None

    def _validate(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise errors.DanglingReference("duplicate vertex id")
        for e, (u, v) in self.edges.items():
            if u not in vset or v not in vset:
                raise errors.DanglingReference(f"edge {e} references a missing vertex")
        for b in self.boundary_vertices:
            if b not in vset:
                raise errors.DanglingReference(f"boundary vertex {b} does not exist")
        for f, face in self.faces.items():
            k = len(face.boundary)
            for e, _ in face.boundary:
                if e not in self.edges:
                    raise errors.DanglingReference(f"face {f} references missing edge {e}")
            if len(face.angles) != k:
                raise errors.AngleCountMismatch(
                    f"face {f} has {k} boundary steps but {len(face.angles)} angles")
            if k == 0:
                raise errors.OpenBoundary(f"face {f} has an empty boundary")
            for i in range(k):
                if self.step_ends(f, i)[1] != self.step_ends(f, (i + 1) % k)[0]:
                    raise errors.OpenBoundary(f"face {f} boundary breaks after step {i}")
            for a in face.angles:
                if not 0 < a < 1:
                    raise errors.BadAngle(f"face {f} has corner angle {a} outside (0, 1)")
            total = sum(face.angles, Fraction(0))
            if face.geometry == EUCLIDEAN:
                if total != k - 2:
                    raise errors.EuclideanAngleSum(
                        f"Euclidean face {f} has angle sum {total}π, expected {k - 2}π")
            elif face.geometry == HYPERBOLIC:
                if not total < k - 2:
                    raise errors.HyperbolicAngleSum(
                        f"hyperbolic face {f} has angle sum {total}π, need < {k - 2}π")
            else:
                raise errors.InvalidInput(f"face {f} has unknown geometry {face.geometry!r}")

    # -- incidence helpers -------------------------------------------------

    def step_ends(self, f: int, i: int) -> tuple[int, int]:
        e, rev = self.faces[f].boundary[i]
        u, v = self.edges[e]
        return (v, u) if rev else (u, v)

    def corner_vertex(self, f: int, i: int) -> int:
        return self.step_ends(f, i)[0]

    def corner_directions(self, f: int, i: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """The (incoming, outgoing) directions joined by corner ``i`` of face ``f``."""
        b = self.faces[f].boundary
        e_in, rev_in = b[i - 1]
        e_out, rev_out = b[i]
        return (e_in, 0 if rev_in else 1), (e_out, 1 if rev_out else 0)

    def face_vertices(self, f: int) -> list[int]:
        return [self.corner_vertex(f, i) for i in range(len(self.faces[f]))]

    def edges_at(self, v: int) -> list[int]:
        return [e for e, ends in self.edges.items() if v in ends]

    def directions_at(self, v: int) -> list[tuple[int, int]]:
        return [(e, end) for e, ends in self.edges.items() for end in (0, 1) if ends[end] == v]

    def corners_at(self, v: int) -> list[tuple[int, int]]:
        return [(f, i) for f, face in self.faces.items() for i in range(len(face))
                if self.corner_vertex(f, i) == v]

    def faces_on_edge(self) -> dict[int, list[tuple[int, int]]]:
        """Map edge -> list of (face, step) occurrences."""
        out = {e: [] for e in self.edges}
        for f, face in self.faces.items():
            for i, (e, _) in enumerate(face.boundary):
                out[e].append((f, i))
        return out

    def adjacency(self) -> dict[int, set[int]]:
        nb = {v: set() for v in self.vertices}
        for u, v in self.edges.values():
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def geometries(self) -> set[str]:
        return {face.geometry for face in self.faces.values()}

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def cell_count(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.faces)

    def interior_vertices(self) -> list[int]:
        return [v for v in self.vertices if v not in self.boundary_vertices]

    def summary(self) -> dict:
        return {"vertices": len(self.vertices), "edges": len(self.edges),
                "faces": len(self.faces), "boundary_vertices": len(self.boundary_vertices)}


def build_complex(description: Mapping) -> PolygonalComplex:
    """Validate a structured cell description and return the complex.

    ``description`` uses the same layout as the ``.cplx`` file format:
    ``vertices`` is a list of ids, ``edges`` a list of ``{"id", "ends"}``
    objects (or a mapping id -> pair), and ``faces`` a list of objects with
    ``boundary``, ``angles`` and ``geometry``.  Raises the first violated
    invariant as a subclass of :class:`npcx.errors.InvalidInput`.
    """
    vertices = [int(v) for v in description.get("vertices", [])]
    raw_edges = description.get("edges", [])
    if isinstance(raw_edges, Mapping):
        edges = {int(e): tuple(int(x) for x in ends) for e, ends in raw_edges.items()}
    else:
        edges = {}
        for i, item in enumerate(raw_edges):
            if isinstance(item, Mapping):
                edges[int(item.get("id", i))] = tuple(int(x) for x in item["ends"])
            else:
                edges[i] = tuple(int(x) for x in item)
    for e, ends in edges.items():
        if len(ends) != 2:
            raise errors.InvalidInput(f"edge {e} must have exactly two endpoints")
    faces = {}
    raw_faces = description.get("faces", [])
    if isinstance(raw_faces, Mapping):
        raw_faces = [dict(v, id=k) for k, v in raw_faces.items()]
    for i, item in enumerate(raw_faces):
        steps = []
        for s in item["boundary"]:
            if isinstance(s, Mapping):
                steps.append((int(s["edge"]), bool(s.get("reversed", False))))
            else:
                e, rev = s
                steps.append((int(e), bool(rev)))
        angles = tuple(as_angle(a) for a in item.get("angles", []))
        faces[int(item.get("id", i))] = Face(tuple(steps), angles,
                                             item.get("geometry", EUCLIDEAN))
    boundary = description.get("boundary_vertices", ())
    return PolygonalComplex(tuple(vertices), edges, faces, frozenset(int(b) for b in boundary))


def link(X: PolygonalComplex, v: int) -> LinkGraph:
    """The link of ``v``: one node per direction, one arc per face corner."""
    if v not in set(X.vertices):
        raise errors.UnknownVertex(v)
    nodes = tuple(X.directions_at(v))
    arcs = []
    for f, i in X.corners_at(v):
        d_in, d_out = X.corner_directions(f, i)
        arcs.append(Arc((d_in, d_out), X.faces[f].angles[i], (f, i)))
    return LinkGraph(nodes, tuple(arcs), base=v)


def subdivide_barycentric(X: PolygonalComplex) -> PolygonalComplex:
    """First barycentric subdivision, renumbering all cells from zero.

    Vertex ids: original vertices (sorted) first, then one midpoint per edge,
    then one barycentre per face.  Each ``k``-gon becomes ``2k`` triangles.
    Corner angles at original vertices are halved; the midpoint corner gets a
    right angle and the barycentre the balance (Euclidean) or half the
    available balance (hyperbolic).  These auxiliary angles carry no curvature
    meaning.
    """
    vid = {v: i for i, v in enumerate(X.vertices)}
    nv = len(vid)
    mid = {e: nv + j for j, e in enumerate(X.edges)}
    bary = {f: nv + len(mid) + j for j, f in enumerate(X.faces)}
    edges: dict[int, tuple[int, int]] = {}
    halves = {}
    for e, (u, v) in X.edges.items():
        a, b = len(edges), len(edges) + 1
        edges[a] = (vid[u], mid[e])
        edges[b] = (mid[e], vid[v])
        halves[e] = (a, b)
    faces: dict[int, Face] = {}
    for f, face in X.faces.items():
        k = len(face)
        c = bary[f]
        to_corner = []
        to_mid = []
        for i in range(k):
            to_corner.append(len(edges))
            edges[len(edges)] = (c, vid[X.corner_vertex(f, i)])
        for i, (e, _) in enumerate(face.boundary):
            to_mid.append(len(edges))
            edges[len(edges)] = (c, mid[e])
        for i, (e, rev) in enumerate(face.boundary):
            first, second = halves[e]
            if rev:
                first_step, second_step = (second, True), (first, True)
            else:
                first_step, second_step = (first, False), (second, False)
            half_in = face.angles[i] / 2
            half_out = face.angles[(i + 1) % k] / 2
            # corner vertex -> midpoint -> barycentre
            faces[len(faces)] = Face(
                (first_step, (to_mid[i], True), (to_corner[i], False)),
                (half_in, Fraction(1, 2), _balance(half_in, face.geometry)),
                face.geometry)
            # midpoint -> next corner vertex -> barycentre
            faces[len(faces)] = Face(
                (second_step, (to_corner[(i + 1) % k], True), (to_mid[i], False)),
                (Fraction(1, 2), half_out, _balance(half_out, face.geometry)),
                face.geometry)
    vertices = tuple(range(nv + len(mid) + len(bary)))
    return PolygonalComplex(vertices, edges, faces)


def _balance(half: Fraction, geometry: str) -> Fraction:
    rest = Fraction(1, 2) - half
    return rest if geometry == EUCLIDEAN else rest / 2


def ball(X: PolygonalComplex, v: int, r: int) -> PolygonalComplex:
    """Full subcomplex on the vertices within 1-skeleton distance ``r`` of ``v``."""
    if v not in set(X.vertices):
        raise errors.UnknownVertex(v)
    if r < 0:
        raise errors.InvalidInput("radius must be non-negative")
    dist = {v: 0}
    queue = deque([v])
    adj = X.adjacency()
    while queue:
        u = queue.popleft()
        if dist[u] == r:
            continue
        for w in sorted(adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    keep = set(dist)
    edges = {e: ends for e, ends in X.edges.items() if ends[0] in keep and ends[1] in keep}
    faces = {f: face for f, face in X.faces.items()
             if all(e in edges for e, _ in face.boundary)}
    return PolygonalComplex(tuple(keep), edges, faces,
                            frozenset(b for b in X.boundary_vertices if b in keep))


def vertex_distances(X: PolygonalComplex, sources: Iterable[int]) -> dict[int, int]:
    adj = X.adjacency()
    dist = {s: 0 for s in sources}
    queue = deque(sorted(dist))
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def gallery_distances(X: PolygonalComplex, base_face: int) -> dict[int, int]:
    """Breadth-first distance between faces, adjacent when they share an edge."""
    on_edge = X.faces_on_edge()
    dist = {base_face: 0}
    queue = deque([base_face])
    while queue:
        f = queue.popleft()
        for e, _ in X.faces[f].boundary:
            for g, _ in on_edge[e]:
                if g not in dist:
                    dist[g] = dist[f] + 1
                    queue.append(g)
    return dist


def relabel(X: PolygonalComplex) -> PolygonalComplex:
    """Renumber vertices, edges and faces consecutively, preserving id order."""
    vmap = {v: i for i, v in enumerate(X.vertices)}
    emap = {e: i for i, e in enumerate(X.edges)}
    edges = {emap[e]: (vmap[u], vmap[v]) for e, (u, v) in X.edges.items()}
    faces = {}
    for j, (f, face) in enumerate(X.faces.items()):
        faces[j] = Face(tuple((emap[e], rev) for e, rev in face.boundary), face.angles,
                        face.geometry)
    return PolygonalComplex(tuple(range(len(vmap))), edges, faces,
                            frozenset(vmap[b] for b in X.boundary_vertices))
