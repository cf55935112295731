"""Cube complexes of dimension at most three: links, hyperplanes, halfspaces.

Corner maps are arrays indexed by binary corner labels.  Square corner ``c``
has coordinates ``(c & 1, c >> 1 & 1)``; cube corner ``c`` has coordinates
``(c & 1, c >> 1 & 1, c >> 2 & 1)``.  A square's four edges are stored in the
order ``x-low, x-high, y-low, y-high`` (so positions 0/1 and 2/3 are the two
opposite pairs); a cube's six faces are stored as ``x=0, x=1, y=0, y=1,
z=0, z=1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import errors
from .curvature import FlagReport, SimplicialComplex2, check_flag

# edge slot -> (low corner, high corner) inside a square
SQUARE_EDGE_CORNERS = ((0, 1), (2, 3), (0, 2), (1, 3))
# face slot -> the four cube corners, listed in square-corner order
CUBE_FACE_CORNERS = (
    (0, 2, 4, 6), (1, 3, 5, 7),  # x = 0, x = 1
    (0, 1, 4, 5), (2, 3, 6, 7),  # y = 0, y = 1
    (0, 1, 2, 3), (4, 5, 6, 7),  # z = 0, z = 1
)


@dataclass(frozen=True)
class Square:
    corners: tuple[int, int, int, int]
    edges: tuple[int, int, int, int]


@dataclass(frozen=True)
class Cube:
    corners: tuple[int, ...]
    squares: tuple[int, ...]


@dataclass(frozen=True, eq=True)
class CubeComplex:
    vertices: tuple
    edges: Mapping[int, tuple[int, int]]
    squares: Mapping[int, Square]
    cubes: Mapping[int, Cube]

    __hash__ = None

    def edge_end(self, e: int, low: int, high: int) -> int:
        """End index (0/1) of edge ``e`` at the low corner of a square slot."""
        u, v = self.edges[e]
        if (u, v) == (low, high):
            return 0
        return 1

    def summary(self) -> dict:
        return {"vertices": len(self.vertices), "edges": len(self.edges),
                "squares": len(self.squares), "cubes": len(self.cubes)}


def _find_edge(edges: Mapping, a: int, b: int) -> int:
    found = [e for e, (u, v) in edges.items() if {u, v} == {a, b} and (a != b or u == v)]
    if len(found) != 1:
        raise errors.InconsistentCornerMap(
            f"cannot infer a unique edge between {a} and {b}; give edges explicitly")
    return found[0]


def build_cube_complex(description: Mapping) -> CubeComplex:
    """Validate a cube-complex description (the ``.ccx`` layout)."""
    vertices = tuple(sorted(int(v) for v in description.get("vertices", [])))
    vset = set(vertices)
    edges = {}
    raw = description.get("edges", [])
    items = raw.items() if isinstance(raw, Mapping) else enumerate(raw)
    for i, item in items:
        if isinstance(item, Mapping):
            edges[int(item.get("id", i))] = tuple(int(x) for x in item["ends"])
        else:
            edges[int(i)] = tuple(int(x) for x in item)
    for e, (u, v) in edges.items():
        if u not in vset or v not in vset:
            raise errors.DanglingReference(f"edge {e} references a missing vertex")
    squares = {}
    for i, item in enumerate(description.get("squares", [])):
        sid = int(item.get("id", i))
        corners = tuple(int(c) for c in item["corners"])
        if len(corners) != 4:
            raise errors.InconsistentCornerMap(f"square {sid} needs 4 corners")
        for c in corners:
            if c not in vset:
                raise errors.DanglingReference(f"square {sid} references missing vertex {c}")
        if "edges" in item:
            sedges = tuple(int(e) for e in item["edges"])
        else:
            sedges = tuple(_find_edge(edges, corners[a], corners[b])
                           for a, b in SQUARE_EDGE_CORNERS)
        if len(sedges) != 4:
            raise errors.InconsistentCornerMap(f"square {sid} needs 4 edges")
        for slot, e in enumerate(sedges):
            if e not in edges:
                raise errors.DanglingReference(f"square {sid} references missing edge {e}")
            a, b = SQUARE_EDGE_CORNERS[slot]
            if sorted(edges[e]) != sorted((corners[a], corners[b])):
                raise errors.InconsistentCornerMap(
                    f"square {sid}: edge {e} has ends {edges[e]} but corners "
                    f"{a},{b} map to {corners[a]},{corners[b]}")
        squares[sid] = Square(corners, sedges)
    cubes = {}
    for i, item in enumerate(description.get("cubes", [])):
        cid = int(item.get("id", i))
        corners = tuple(int(c) for c in item["corners"])
        if len(corners) != 8:
            raise errors.InconsistentCornerMap(f"cube {cid} needs 8 corners")
        if "squares" in item:
            faces = tuple(int(s) for s in item["squares"])
        else:
            faces = []
            for slot in CUBE_FACE_CORNERS:
                want = tuple(corners[c] for c in slot)
                match = [s for s, sq in squares.items() if sq.corners == want]
                if len(match) != 1:
                    raise errors.InconsistentCornerMap(
                        f"cube {cid}: no unique square with corners {want}")
                faces.append(match[0])
            faces = tuple(faces)
        if len(faces) != 6:
            raise errors.InconsistentCornerMap(f"cube {cid} needs 6 squares")
        for slot, s in enumerate(faces):
            if s not in squares:
                raise errors.DanglingReference(f"cube {cid} references missing square {s}")
            want = sorted(corners[c] for c in CUBE_FACE_CORNERS[slot])
            if sorted(squares[s].corners) != want:
                raise errors.InconsistentCornerMap(
                    f"cube {cid}: square {s} does not match face slot {slot}")
        cubes[cid] = Cube(corners, faces)
    return CubeComplex(vertices, dict(sorted(edges.items())), dict(sorted(squares.items())),
                       dict(sorted(cubes.items())))


def grid_complex(a: int, b: int) -> CubeComplex:
    """The ``a`` by ``b`` square grid (a product of two paths)."""
    def vid(i, j):
        return j * (a + 1) + i

    vertices = [vid(i, j) for j in range(b + 1) for i in range(a + 1)]
    edges = {}
    horiz = {}
    vert = {}
    for j in range(b + 1):
        for i in range(a):
            horiz[i, j] = len(edges)
            edges[len(edges)] = (vid(i, j), vid(i + 1, j))
    for j in range(b):
        for i in range(a + 1):
            vert[i, j] = len(edges)
            edges[len(edges)] = (vid(i, j), vid(i, j + 1))
    squares = []
    for j in range(b):
        for i in range(a):
            squares.append({
                "corners": [vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)],
                "edges": [horiz[i, j], horiz[i, j + 1], vert[i, j], vert[i + 1, j]]})
    return build_cube_complex({"vertices": vertices, "edges": edges, "squares": squares})


def _corner_coords(c: int, dim: int) -> tuple[int, ...]:
    return tuple((c >> k) & 1 for k in range(dim))


def vertex_link(C: CubeComplex, v) -> tuple[SimplicialComplex2, bool]:
    """Link of ``v`` as a simplicial description.

    Nodes are edge ends ``(edge, end)``; each square corner at ``v`` gives a link
    edge and each cube corner a filled triangle.  The second value is False
    when two link edges (or triangles) coincide, in which case the link is not
    simplicial.
    """
    nodes = [(e, end) for e, ends in C.edges.items() for end in (0, 1) if ends[end] == v]
    link_edges = []
    simple = True
    square_dirs: dict = {}
    for s, sq in C.squares.items():
        for c in range(4):
            if sq.corners[c] != v:
                continue
            dirs = []
            for slot, (lo, hi) in enumerate(SQUARE_EDGE_CORNERS):
                if c in (lo, hi):
                    e = sq.edges[slot]
                    end = C.edge_end(e, sq.corners[lo], sq.corners[hi])
                    dirs.append((e, end if c == lo else 1 - end))
            square_dirs[s, c] = tuple(dirs)
            link_edges.append(tuple(dirs))
    triangles = []
    for cid, cube in C.cubes.items():
        for c in range(8):
            if cube.corners[c] != v:
                continue
            coords = _corner_coords(c, 3)
            tri = set()
            for axis in range(3):
                slot = 2 * axis + coords[axis]
                s = cube.squares[slot]
                sq = C.squares[s]
                for sc in range(4):
                    if sq.corners[sc] == v and (s, sc) in square_dirs:
                        tri.update(square_dirs[s, sc])
                        break
            triangles.append(tuple(sorted(tri)))
    if len({frozenset(e) for e in link_edges}) != len(link_edges):
        simple = False
    if any(len(set(e)) != 2 for e in link_edges):
        simple = False
    tri_sets = [frozenset(t) for t in triangles]
    if len(set(tri_sets)) != len(tri_sets) or any(len(t) != 3 for t in tri_sets):
        simple = False
    if not simple:
        return SimplicialComplex2(tuple(nodes), frozenset(frozenset(e) for e in link_edges),
                                  frozenset()), False
    return SimplicialComplex2.create(nodes, link_edges, triangles), True


@dataclass(frozen=True)
class CubicalVerdict:
    vertices: tuple  # of (vertex, FlagReport)

    @property
    def passed(self) -> bool:
        return all(r.flag for _, r in self.vertices)

    def report(self) -> dict:
        return {"pass": self.passed, "claim": "locally CAT(0)" if self.passed
                else "not locally CAT(0)",
                "vertices": [{"vertex": v, "pass": r.flag,
                              "witness": [list(x) for x in r.witness] if r.witness else []}
                             for v, r in self.vertices]}


def check_cat0_cubical(C: CubeComplex) -> CubicalVerdict:
    """Flag test on every vertex link (non-simplicial links fail)."""
    out = []
    for v in C.vertices:
        S, simple = vertex_link(C, v)
        if not simple:
            out.append((v, FlagReport(False, ("non-simplicial link",))))
        else:
            out.append((v, check_flag(S)))
    return CubicalVerdict(tuple(out))


@dataclass(frozen=True)
class Hyperplane:
    edges: tuple[int, ...]
    squares: tuple[tuple[int, int], ...]  # (square, axis crossed: 0 = x-edges, 1 = y-edges)
    cubes: tuple[tuple[int, int], ...]  # (cube, axis)

    @property
    def self_intersecting(self) -> bool:
        seen = [s for s, _ in self.squares]
        return len(seen) != len(set(seen))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def compute_hyperplanes(C: CubeComplex) -> list[Hyperplane]:
    """Edge classes under the opposite-edge relation, ordered by smallest edge."""
    uf = _UnionFind(C.edges)
    for sq in C.squares.values():
        uf.union(sq.edges[0], sq.edges[1])
        uf.union(sq.edges[2], sq.edges[3])
    classes: dict = {}
    for e in C.edges:
        classes.setdefault(uf.find(e), []).append(e)
    square_hits: dict = {}
    for s, sq in C.squares.items():
        for axis in (0, 1):
            square_hits.setdefault(uf.find(sq.edges[2 * axis]), []).append((s, axis))
    cube_hits: dict = {}
    for cid, cube in C.cubes.items():
        for axis in range(3):
            # an axis-direction edge of the cube lies in the x=0 face...
            face = C.squares[cube.squares[2 * ((axis + 1) % 3)]]
            corner_lo = cube.corners[0]
            corner_hi = cube.corners[1 << axis]
            e = _edge_in_square(C, face, corner_lo, corner_hi)
            cube_hits.setdefault(uf.find(e), []).append((cid, axis))
    out = []
    for root, members in classes.items():
        out.append(Hyperplane(tuple(sorted(members)), tuple(square_hits.get(root, [])),
                              tuple(cube_hits.get(root, []))))
    out.sort(key=lambda h: h.edges[0])
    return out


def _edge_in_square(C: CubeComplex, sq: Square, a: int, b: int) -> int:
    for slot, (lo, hi) in enumerate(SQUARE_EDGE_CORNERS):
        if {sq.corners[lo], sq.corners[hi]} == {a, b}:
            return sq.edges[slot]
    raise errors.InconsistentCornerMap("cube edge not found in its face")


@dataclass(frozen=True)
class Halfspaces:
    side_a: frozenset
    side_b: frozenset

    separating = True

    def sizes(self) -> tuple[int, int]:
        return len(self.side_a), len(self.side_b)


@dataclass(frozen=True)
class NotSeparating:
    components: int

    separating = False


def halfspace_partition(C: CubeComplex, H: Hyperplane) -> Halfspaces | NotSeparating:
    """Components of the 1-skeleton after deleting the hyperplane's edges.

    ``side_a`` contains the first endpoint of the hyperplane's smallest edge.
    """
    removed = set(H.edges)
    nb = {v: set() for v in C.vertices}
    for e, (u, v) in C.edges.items():
        if e in removed:
            continue
        nb[u].add(v)
        nb[v].add(u)
    comp = {}
    count = 0
    for v in C.vertices:
        if v in comp:
            continue
        stack = [v]
        comp[v] = count
        while stack:
            x = stack.pop()
            for y in nb[x]:
                if y not in comp:
                    comp[y] = count
                    stack.append(y)
        count += 1
    if count != 2:
        return NotSeparating(count)
    anchor = C.edges[H.edges[0]][0]
    a = frozenset(v for v in C.vertices if comp[v] == comp[anchor])
    b = frozenset(v for v in C.vertices if comp[v] != comp[anchor])
    return Halfspaces(a, b)


def hyperplanes_to_dot(C: CubeComplex, hyperplanes: list[Hyperplane]) -> str:
    palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta",
               "cyan", "gold", "gray"]
    colour = {}
    for i, h in enumerate(hyperplanes):
        for e in h.edges:
            colour[e] = (i, palette[i % len(palette)])
    lines = ["graph hyperplanes {"]
    for v in C.vertices:
        lines.append(f"  v{v};")
    for e, (u, v) in C.edges.items():
        i, c = colour[e]
        lines.append(f'  v{u} -- v{v} [color="{c}", label="H{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
