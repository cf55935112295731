"""Constructions of example complexes."""
from .bourdon import bourdon_ball
from .cayley import CayleyLabeling, label_as_cayley
from .davis_moussong import coxeter_system_for, davis_moussong_ball
from .graphs import Graph, NAMED, named_graph
from .holonomy import HolonomyReport, holonomy
from .kl import NONTRIVIAL, TRIVIAL, KLBuildParams, Seeded, Strategy, kl_build
from .padic import (LatticeBall, PadicLatticeClass, canonical_class, incident, sl2_tree_ball,
                    sl3_vertex_link)

__all__ = [
    "bourdon_ball", "CayleyLabeling", "label_as_cayley", "coxeter_system_for",
    "davis_moussong_ball", "Graph", "NAMED", "named_graph", "HolonomyReport", "holonomy",
    "NONTRIVIAL", "TRIVIAL", "KLBuildParams", "Seeded", "Strategy", "kl_build", "LatticeBall",
    "PadicLatticeClass", "canonical_class", "incident", "sl2_tree_ball", "sl3_vertex_link",
]
