"""Stranded Feynman graphs of multi-orientable and colored tensor models."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Edge,
    GraphError,
    GraphValidationError,
    Sign,
    StrandedGraph,
    VertexKind,
    build_graph,
    corner_sign,
    validate,
    vertex_kernel,
)
from .classify import classify, has_tadface, is_colorable, is_multi_orientable  # noqa: E402
from .enumeration import (  # noqa: E402
    automorphism_count,
    canonical_form,
    count_table,
    enumerate_classes,
    enumerate_pairings,
)
from .topology import broken_faces, genus, jacket, topology_record, trace_faces  # noqa: E402

__all__ = [
    "Edge", "GraphError", "GraphValidationError", "Sign", "StrandedGraph", "VertexKind",
    "build_graph", "corner_sign", "validate", "vertex_kernel",
    "classify", "has_tadface", "is_colorable", "is_multi_orientable",
    "automorphism_count", "canonical_form", "count_table", "enumerate_classes",
    "enumerate_pairings",
    "broken_faces", "genus", "jacket", "topology_record", "trace_faces",
]
