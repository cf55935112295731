"""Sheet monodromy around a 2-cell.

Each boundary edge of a face ``f`` carries the other faces ("sheets") that
contain it.  At a corner between boundary edges ``e`` and ``e'`` a sheet on
``e`` is carried to a sheet on ``e'`` using the link of the corner vertex:
the two sheets are corners ``(x, z)`` and ``(y, z')`` where ``(x, y)`` is the
corner of ``f`` itself.  They are paired when ``z == z'`` (a triangle in the
link), or, when no triangle exists, when ``z`` and ``z'`` are joined by a link
arc and that partner is unique (a 4-cycle).  Anything else is ambiguous.
Going once around ``f`` gives a permutation of the sheets at the base edge.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .. import errors
from ..complex import PolygonalComplex


class ComplexView:
    """Incidence indexes over a :class:`PolygonalComplex`."""

    def __init__(self, X: PolygonalComplex):
        self.X = X
        self._on_edge = X.faces_on_edge()
        self._corners: dict = {v: [] for v in X.vertices}
        for f, face in X.faces.items():
            for i in range(len(face)):
                self._corners[X.corner_vertex(f, i)].append((f, i))

    def boundary(self, f):
        return self.X.faces[f].boundary

    def faces_at_edge(self, e):
        return self._on_edge[e]

    def corners_at(self, v):
        return self._corners[v]

    def corner_directions(self, f, i):
        return self.X.corner_directions(f, i)

    def corner_vertex(self, f, i):
        return self.X.corner_vertex(f, i)

    def is_settled(self, v):
        return v not in self.X.boundary_vertices


@dataclass(frozen=True)
class HolonomyReport:
    face: int
    base_edge: int
    sheets: tuple  # sheet faces on the base edge, in order
    permutation: tuple  # permutation[i] = index of the sheet that sheet i returns to

    @property
    def classification(self) -> str:
        if all(i == p for i, p in enumerate(self.permutation)):
            return "trivial"
        if len(self.permutation) == 2:
            return "nontrivial"
        return "permutation"

    @property
    def trivial(self) -> bool:
        return self.classification == "trivial"

    def order(self) -> int:
        p = self.permutation
        seen, k = list(range(len(p))), 1
        cur = list(p)
        while cur != seen:
            cur = [p[x] for x in cur]
            k += 1
        return k

    def report(self) -> dict:
        return {"face": self.face, "base_edge": self.base_edge, "sheets": list(self.sheets),
                "permutation": list(self.permutation), "holonomy": self.classification}


def _step_dirs(boundary, j):
    e, rev = boundary[j]
    return (e, 1 if rev else 0), (e, 0 if rev else 1)  # tail, head


def _arc_for_sheet(view, sheet, d):
    """Corner of the sheet face at the end of its step that carries direction ``d``."""
    g, step = sheet
    b = view.boundary(g)
    k = len(b)
    tail, head = _step_dirs(b, step)
    if tail == d:
        c = step
        other = _step_dirs(b, (step - 1) % k)[1]
    elif head == d:
        c = (step + 1) % k
        other = _step_dirs(b, c)[0]
    else:  # pragma: no cover - guarded by caller
        raise errors.AmbiguousPairing("sheet does not meet the corner")
    return (g, c), other


def _sheet_for_arc(view, corner, d):
    g, c = corner
    b = view.boundary(g)
    k = len(b)
    d_in, d_out = view.corner_directions(g, c)
    if d_out == d:
        return (g, c), d_in
    if d_in == d:
        return (g, (c - 1) % k), d_out
    raise errors.AmbiguousPairing("corner does not use the direction")


def face_holonomy(view, f: int, base_step: int = 0) -> HolonomyReport:
    boundary = view.boundary(f)
    k = len(boundary)
    for i in range(k):
        if not view.is_settled(view.corner_vertex(f, i)):
            raise errors.BoundaryCell(f"face {f} touches the boundary")
    base_edge = boundary[base_step][0]
    sheets = [s for s in view.faces_at_edge(base_edge) if s != (f, base_step)]
    current = list(sheets)
    for t in range(1, k + 1):
        i = (base_step + t) % k  # corner between step i-1 and step i
        prev = (i - 1) % k
        v = view.corner_vertex(f, i)
        d_in = _step_dirs(boundary, prev)[1]
        d_out = _step_dirs(boundary, i)[0]
        corners = [c for c in view.corners_at(v) if c != (f, i)]
        adj = Counter()
        for g, c in view.corners_at(v):
            a, b = view.corner_directions(g, c)
            adj[frozenset((a, b))] += 1
        out_arcs = []
        for g, c in corners:
            a, b = view.corner_directions(g, c)
            if a == d_out or b == d_out:
                out_arcs.append(((g, c), b if a == d_out else a))
        moved = []
        for sheet in current:
            _, z = _arc_for_sheet(view, sheet, d_in)
            if z == d_out:
                raise errors.AmbiguousPairing(f"sheet parallel to face {f} at vertex {v}")
            same = [arc for arc, z2 in out_arcs if z2 == z]
            if not same:
                same = [arc for arc, z2 in out_arcs if adj[frozenset((z, z2))]]
            if len(same) != 1:
                raise errors.AmbiguousPairing(
                    f"no unique sheet pairing at vertex {v} of face {f}")
            nxt, _ = _sheet_for_arc(view, same[0], d_out)
            moved.append(nxt)
        if len(set(moved)) != len(moved):
            raise errors.AmbiguousPairing(f"sheet pairing at vertex {v} is not a bijection")
        current = moved
    index = {s: j for j, s in enumerate(sheets)}
    try:
        perm = tuple(index[s] for s in current)
    except KeyError:
        raise errors.AmbiguousPairing("sheets do not return to the base edge") from None
    return HolonomyReport(f, base_edge, tuple(g for g, _ in sheets), perm)


def holonomy(X: PolygonalComplex, f: int, base_step: int = 0) -> HolonomyReport:
    """Monodromy of the sheets around face ``f`` starting at boundary step ``base_step``."""
    if f not in X.faces:
        raise errors.InvalidInput(f"no face {f}")
    return face_holonomy(ComplexView(X), f, base_step)
