"""Quasiperiodic packings of two-shell decagonal clusters.

Points of Z^10 whose projection onto the internal space falls in the window
(the projected unit cube) are projected onto a plane spanned by the two rows
of a 2x10 basis. The basis columns are two C5 orbits, so every point of the
resulting pattern sees its neighbours at vertices of a two-shell decagonal
cluster.
"""
from .cluster import Basis, Cluster, Vec2, build_basis, c5_matrix, cluster_points, generate_orbit
from .errors import (DegenerateBasis, EmptyPattern, InfiniteStrip, OverflowingFormat,
                     QuasipackError, StartOutsideStrip)
from .generator import (GenConfig, Pattern, check_cluster_adjacency, generate, start_point,
                        step_displacement)
from .strip import (TRIPLES, Classification, StripTable, Triple, build_strip_table, classify,
                    face_functional, membership_oracle, project_internal, project_physical)

__all__ = [
    "Basis", "Cluster", "Vec2", "build_basis", "c5_matrix", "cluster_points", "generate_orbit",
    "DegenerateBasis", "EmptyPattern", "InfiniteStrip", "OverflowingFormat", "QuasipackError",
    "StartOutsideStrip", "GenConfig", "Pattern", "check_cluster_adjacency", "generate",
    "start_point", "step_displacement", "TRIPLES", "Classification", "StripTable", "Triple",
    "build_strip_table", "classify", "face_functional", "membership_oracle", "project_internal",
    "project_physical",
]
