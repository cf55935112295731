"""Balls in the right-angled hyperbolic buildings ``I_{p,q}``."""
from __future__ import annotations

from ..cog import bourdon_polygon, develop_ball
from ..complex import PolygonalComplex

BOURDON_MAX_RADIUS = 2


def bourdon_ball(p: int, q: int, r: int) -> PolygonalComplex:
    """Gallery ball of radius ``r`` in ``I_{p,q}``; every vertex link is ``K_{q,q}``."""
    return develop_ball(bourdon_polygon(p, q), r, max_radius=BOURDON_MAX_RADIUS).complex
