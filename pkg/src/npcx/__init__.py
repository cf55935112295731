"""Nonpositively curved polyhedral complexes: checks, group actions and builders."""
from . import errors
from .cog import (CovolumeDatum, PolygonOfGroups, bourdon_polygon, check_npc, covolume,
                  develop_ball, local_development_link, polygon_of_groups,
                  right_angled_chamber_complex)
from .complex import EUCLIDEAN, HYPERBOLIC, Face, LinkGraph, PolygonalComplex, build_complex, link
from .cubical import (CubeComplex, build_cube_complex, check_cat0_cubical, compute_hyperplanes,
                      halfspace_partition)
from .curvature import (SimplicialComplex2, check_bridged, check_flag, check_generalized_mgon,
                        check_gromov, check_systolic, weighted_girth)
from .groups import (CoxeterSystem, FiniteGroup, coxeter_ball, coxeter_normal_form,
                     parse_presentation, todd_coxeter)
from .isomorphism import are_isomorphic

__version__ = "0.1.0"

__all__ = [
    "errors", "CovolumeDatum", "PolygonOfGroups", "bourdon_polygon", "check_npc", "covolume",
    "develop_ball", "local_development_link", "polygon_of_groups",
    "right_angled_chamber_complex", "EUCLIDEAN", "HYPERBOLIC", "Face", "LinkGraph",
    "PolygonalComplex", "build_complex", "link", "CubeComplex", "build_cube_complex",
    "check_cat0_cubical", "compute_hyperplanes", "halfspace_partition", "SimplicialComplex2",
    "check_bridged", "check_flag", "check_generalized_mgon", "check_gromov", "check_systolic",
    "weighted_girth", "CoxeterSystem", "FiniteGroup", "coxeter_ball", "coxeter_normal_form",
    "parse_presentation", "todd_coxeter", "are_isomorphic",
]
