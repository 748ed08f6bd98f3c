"""Exact-arithmetic toolkit for hyperbolic Coxeter polyhedra.

The package computes with Coxeter polyhedra given by simple roots over a
real quadratic field: it derives and classifies Coxeter diagrams, extracts
faces, performs doubling constructions, and builds the classical
Leech-lattice examples from first principles.
"""

from coxpoly.field import FieldScalar, FieldError, parse_scalar
from coxpoly.qspace import QSpace, QVector
from coxpoly.diagram import (
    CoxDiagram,
    DiagramType,
    PAR,
    ULTRA,
    NotCoxeterError,
    classify,
    diagram_from_gram,
    ears_tails,
    export_dot,
    is_isomorphic,
    spherical_subdiagrams,
    supported_cos2,
)
from coxpoly.polyhedron import (
    Polyhedron,
    Face,
    build,
    double,
    doubling_walls,
    disjoint_doubling_triple,
    face_combinatorial,
    face_doubling_walls_cor,
    face_projection,
    is_redoublable,
)

__all__ = [
    "FieldScalar",
    "FieldError",
    "parse_scalar",
    "QSpace",
    "QVector",
    "CoxDiagram",
    "DiagramType",
    "PAR",
    "ULTRA",
    "NotCoxeterError",
    "classify",
    "diagram_from_gram",
    "ears_tails",
    "export_dot",
    "is_isomorphic",
    "spherical_subdiagrams",
    "supported_cos2",
    "Polyhedron",
    "Face",
    "build",
    "double",
    "doubling_walls",
    "disjoint_doubling_triple",
    "face_combinatorial",
    "face_doubling_walls_cor",
    "face_projection",
    "is_redoublable",
]

__version__ = "0.1.0"
