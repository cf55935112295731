"""Inductive construction of (k, L)-complexes.

Every face is a regular k-gon and every interior vertex link is the graph L.
Balls are grown from one polygon by completing vertex links one at a time;
the choice of link embedding at each vertex is where different complexes
with the same local data come from.  Strategies pick embeddings so that the
sheet holonomy of each face, once it is determined, is trivial or
nontrivial, or pick them pseudorandomly from a seed.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice

from .. import errors
from ..complex import EUCLIDEAN, HYPERBOLIC, PolygonalComplex, as_angle
from ..curvature import graph_girth
from ..growth import FoldError, GrowthState, Plan, link_embeddings
from .graphs import Graph
from .holonomy import face_holonomy

DEFAULT_FACE_BUDGET = 20000
SEEDED_CANDIDATE_CAP = 5000


@dataclass(frozen=True)
class Strategy:
    kind: str  # "trivial", "nontrivial" or "seeded"
    seed: int = 0

    @classmethod
    def parse(cls, text) -> "Strategy":
        if isinstance(text, Strategy):
            return text
        text = str(text).strip().lower()
        if text in ("trivial", "nontrivial"):
            return cls(text)
        m = re.fullmatch(r"seed(?:ed)?[:=(]?\s*(-?\d+)\)?", text)
        if m:
            return cls("seeded", int(m.group(1)))
        raise errors.InvalidInput(f"unknown holonomy strategy {text!r}")

    def __str__(self):
        return f"seed:{self.seed}" if self.kind == "seeded" else self.kind


TRIVIAL = Strategy("trivial")
NONTRIVIAL = Strategy("nontrivial")


def Seeded(n: int) -> Strategy:
    return Strategy("seeded", int(n))


@dataclass(frozen=True)
class KLBuildParams:
    k: int
    L: Graph
    radius: int
    strategy: Strategy = TRIVIAL
    geometry: str = EUCLIDEAN
    angle: Fraction | None = None  # defaults to the regular Euclidean angle (k-2)/k
    face_budget: int = DEFAULT_FACE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))

    def corner_angle(self) -> Fraction:
        if self.angle is not None:
            return as_angle(self.angle)
        return Fraction(self.k - 2, self.k)

    def validate(self):
        if self.k < 3:
            raise errors.InvalidInput("k must be at least 3")
        if self.k == 3:
            # new triangles would join two existing frontier vertices directly
            raise errors.InvalidInput("triangle faces are not supported by the growth builder")
        if self.radius < 0:
            raise errors.InvalidInput("radius must be non-negative")
        if not self.L.edges:
            raise errors.InvalidInput("the link graph needs at least one edge")
        a = self.corner_angle()
        if self.geometry == EUCLIDEAN and a * self.k != self.k - 2:
            raise errors.InvalidInput(
                f"a regular Euclidean {self.k}-gon has angle {Fraction(self.k - 2, self.k)}π")
        if self.geometry == HYPERBOLIC and not a * self.k < self.k - 2:
            raise errors.InvalidInput(f"angle {a}π is too large for a hyperbolic {self.k}-gon")
        if self.geometry not in (EUCLIDEAN, HYPERBOLIC):
            raise errors.InvalidInput(f"unknown geometry {self.geometry!r}")
        girth = graph_girth(self.L.neighbours())
        if girth is not None and girth * a < 2:
            raise errors.NotNonpositivelyCurved(
                f"girth {girth} times angle {a}π is below 2π")


class _KLGrowth:
    def __init__(self, params: KLBuildParams):
        self.p = params
        self.L = params.L
        self.state = GrowthState(params.k)
        self.state.base_chamber()
        self.rng = random.Random(params.strategy.seed)
        self.edge_index = {frozenset(e): j for j, e in enumerate(self.L.edges)}

    def _plan(self, phi: dict, arcs) -> Plan:
        arc_of = {}
        covered = set()
        for corner, a, b in arcs:
            j = self.edge_index[frozenset((phi[a], phi[b]))]
            arc_of[corner] = j
            covered.add(j)
        image = set(phi.values())
        fresh = [None] * (self.p.k - 3)
        new_nodes = [(t, None, None) for t in self.L.nodes if t not in image]
        new_arcs = [(j, a, b, fresh, None) for j, (a, b) in enumerate(self.L.edges)
                    if j not in covered]
        return Plan(phi, arc_of, new_nodes, new_arcs)

    def _holonomy_ok(self, v: int) -> bool:
        want = self.p.strategy.kind
        st = self.state
        for f in sorted({f for f, _ in st.vcorners[v]}):
            if not all(st.corner_vertex(f, i) in st.complete for i in range(len(st.faces[f]))):
                continue
            try:
                rep = face_holonomy(st, f)
            except errors.AmbiguousPairing:
                continue
            if rep.trivial != (want == "trivial"):
                return False
        return True

    def _try(self, v: int, phi: dict, arcs, check_holonomy: bool) -> bool:
        st = self.state
        st.begin()
        try:
            st.apply(v, self._plan(phi, arcs))
        except FoldError:
            st.rollback()
            return False
        if check_holonomy and not self._holonomy_ok(v):
            st.rollback()
            return False
        st.commit()
        return True

    def complete(self, v: int):
        st = self.state
        dirs, arcs = st.partial_link(v)
        cands = link_embeddings(dirs, arcs, self.L.nodes, self.L.edges, st.saturated,
                                foldable=lambda d: not st.saturated(d))
        if self.p.strategy.kind == "seeded":
            pool = list(islice(cands, SEEDED_CANDIDATE_CAP))
            while pool:
                phi = pool.pop(self.rng.randrange(len(pool)))
                if self._try(v, phi, arcs, check_holonomy=False):
                    return
            raise errors.LocalObstruction(
                f"the partial link at vertex {v} does not embed in the target link")
        found_any = False
        for phi in cands:
            found_any = True
            if self._try(v, phi, arcs, check_holonomy=True):
                return
        if not found_any:
            raise errors.LocalObstruction(
                f"the partial link at vertex {v} does not embed in the target link")
        raise errors.LocalObstruction(
            f"no completion at vertex {v} gives {self.p.strategy.kind} holonomy")


def kl_build(params: KLBuildParams) -> PolygonalComplex:
    """Gallery ball of radius ``params.radius`` in a (k, L)-complex.

    Vertices whose link is not fully present in the ball are listed in
    ``boundary_vertices``.
    """
    params.validate()
    g = _KLGrowth(params)
    g.state.grow(params.radius, g.complete, params.face_budget)
    X, *_ = g.state.crop(params.radius, [params.corner_angle()] * params.k, params.geometry)
    return X
