"""Canonical JSON file formats.

Every file is a JSON object with ``"format_version": 1`` and a ``"kind"``.
Output is written with sorted keys and two-space indentation, ids in
increasing order and angles as reduced ``{"num", "den"}`` pairs, so dumping a
loaded file reproduces it byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from . import errors
from .builders.graphs import Graph
from .cog import PolygonOfGroups, polygon_of_groups
from .complex import LinkGraph, PolygonalComplex, as_angle, build_complex
from .cubical import CubeComplex, build_cube_complex
from .curvature import SimplicialComplex2, _order_key
from .groups import CoxeterSystem, FiniteGroup

FORMAT_VERSION = 1

KINDS = {
    ".cplx": "polygonal_complex",
    ".ccx": "cube_complex",
    ".scx": "simplicial_complex",
    ".graph": "graph",
    ".pog": "polygon_of_groups",
    ".cox": "coxeter_matrix",
}


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def angle_json(a) -> dict:
    a = as_angle(a)
    return {"num": a.numerator, "den": a.denominator}


def _header(kind: str) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": kind}


def _check_header(doc, kind: str):
    if not isinstance(doc, Mapping):
        raise errors.InvalidInput("top level must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise errors.InvalidInput(f"unsupported format_version {version!r}")
    found = doc.get("kind", kind)
    if found != kind:
        raise errors.InvalidInput(f"expected a {kind} file, found {found!r}")


# -- polygonal complexes -----------------------------------------------------


def complex_to_json(X: PolygonalComplex, annotations: Mapping | None = None) -> dict:
    doc = _header("polygonal_complex")
    doc["vertices"] = list(X.vertices)
    doc["edges"] = [{"id": e, "ends": list(ends)} for e, ends in X.edges.items()]
    doc["faces"] = [{"id": f, "boundary": [{"edge": e, "reversed": rev}
                                            for e, rev in face.boundary],
                     "angles": [angle_json(a) for a in face.angles],
                     "geometry": face.geometry} for f, face in X.faces.items()]
    doc["boundary_vertices"] = sorted(X.boundary_vertices)
    if annotations:
        doc["annotations"] = annotations
    return doc


def complex_from_json(doc) -> PolygonalComplex:
    _check_header(doc, "polygonal_complex")
    return build_complex(doc)


# -- cube complexes ----------------------------------------------------------


def cube_complex_to_json(C: CubeComplex) -> dict:
    doc = _header("cube_complex")
    doc["vertices"] = list(C.vertices)
    doc["edges"] = [{"id": e, "ends": list(ends)} for e, ends in C.edges.items()]
    doc["squares"] = [{"id": s, "corners": list(sq.corners), "edges": list(sq.edges)}
                      for s, sq in C.squares.items()]
    doc["cubes"] = [{"id": c, "corners": list(cu.corners), "squares": list(cu.squares)}
                    for c, cu in C.cubes.items()]
    return doc


def cube_complex_from_json(doc) -> CubeComplex:
    _check_header(doc, "cube_complex")
    return build_cube_complex(doc)


# -- simplicial complexes ----------------------------------------------------


def _sorted_simplices(items) -> list[list]:
    out = [sorted(s, key=_order_key) for s in items]
    return sorted(out, key=lambda s: [_order_key(x) for x in s])


def simplicial_to_json(S: SimplicialComplex2) -> dict:
    doc = _header("simplicial_complex")
    doc["vertices"] = list(S.vertices)
    doc["edges"] = _sorted_simplices(S.edges)
    doc["triangles"] = _sorted_simplices(S.triangles)
    return doc


def simplicial_from_json(doc) -> SimplicialComplex2:
    _check_header(doc, "simplicial_complex")
    return SimplicialComplex2.create(doc.get("vertices", []), doc.get("edges", []),
                                     doc.get("triangles", []))


# -- graphs ------------------------------------------------------------------


def graph_to_json(G: Graph | LinkGraph, annotations: Mapping | None = None) -> dict:
    """Plain graphs keep their node names; link graphs get integer nodes."""
    doc = _header("graph")
    if isinstance(G, LinkGraph):
        index = {n: i for i, n in enumerate(G.nodes)}
        doc["nodes"] = list(range(len(G.nodes)))
        doc["edges"] = [[index[a.ends[0]], index[a.ends[1]]] for a in G.arcs]
        doc["weights"] = [angle_json(a.weight) for a in G.arcs]
    else:
        doc["nodes"] = list(G.nodes)
        doc["edges"] = [list(e) for e in G.edges]
    if annotations:
        doc["annotations"] = annotations
    return doc


def graph_from_json(doc) -> Graph:
    _check_header(doc, "graph")
    nodes = doc.get("nodes")
    edges = [tuple(e) for e in doc.get("edges", [])]
    if nodes is None:
        nodes = sorted({x for e in edges for x in e}, key=_order_key)
    return Graph.create(nodes, edges)


# -- polygons of groups ------------------------------------------------------


def _group_json(G: FiniteGroup) -> dict:
    return {"degree": G.degree, "generators": [list(g) for g in G.generators]}


def _group_from(doc) -> FiniteGroup:
    return FiniteGroup(int(doc["degree"]), doc.get("generators", []))


def pog_to_json(P: PolygonOfGroups) -> dict:
    doc = _header("polygon_of_groups")
    doc["k"] = P.k
    doc["geometry"] = P.geometry
    doc["angles"] = [angle_json(a) for a in P.angles]
    doc["face_group"] = _group_json(P.F)
    doc["edge_groups"] = [_group_json(E) for E in P.E]
    doc["vertex_groups"] = [_group_json(V) for V in P.V]
    doc["face_to_edge"] = [[list(g) for g in h.images] for h in P.face_maps]
    doc["edge_to_vertex"] = [[list(g) for g in h.images] for h in P.left_maps]
    doc["next_edge_to_vertex"] = [[list(g) for g in h.images] for h in P.right_maps]
    return doc


def pog_from_json(doc) -> PolygonOfGroups:
    _check_header(doc, "polygon_of_groups")
    try:
        k = int(doc["k"])
        return polygon_of_groups(
            k, _group_from(doc["face_group"]), [_group_from(g) for g in doc["edge_groups"]],
            [_group_from(g) for g in doc["vertex_groups"]], doc["face_to_edge"],
            doc["edge_to_vertex"], doc["next_edge_to_vertex"], doc["angles"],
            doc.get("geometry", "euclidean"))
    except KeyError as exc:
        raise errors.InvalidInput(f"missing key {exc.args[0]!r}") from None


# -- Coxeter matrices --------------------------------------------------------


def coxeter_to_json(W: CoxeterSystem, q=None) -> dict:
    doc = _header("coxeter_matrix")
    doc["labels"] = list(W.labels)
    doc["matrix"] = W.matrix_json()
    if q is not None:
        doc["q"] = list(q)
    return doc


def coxeter_from_json(doc) -> tuple[CoxeterSystem, list | None]:
    """The Coxeter system and the optional per-generator group orders ``q``."""
    _check_header(doc, "coxeter_matrix")
    matrix = doc["matrix"]
    labels = doc.get("labels") or [f"s{i}" for i in range(len(matrix))]
    return CoxeterSystem(labels, matrix), doc.get("q")


# -- files -------------------------------------------------------------------

LOADERS = {
    "polygonal_complex": complex_from_json,
    "cube_complex": cube_complex_from_json,
    "simplicial_complex": simplicial_from_json,
    "graph": graph_from_json,
    "polygon_of_groups": pog_from_json,
    "coxeter_matrix": coxeter_from_json,
}


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.InvalidInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load(path, kind: str | None = None):
    """Parse a file, choosing the format from ``kind`` or the file extension."""
    path = Path(path)
    if kind is None:
        kind = KINDS.get(path.suffix)
    if kind is None:
        raise errors.InvalidInput(f"unknown file extension {path.suffix!r}")
    return LOADERS[kind](read_json(path))


def save(path, doc: Mapping):
    Path(path).write_text(dumps(doc), encoding="utf-8")
