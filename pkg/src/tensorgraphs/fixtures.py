"""Hand-encoded graphs of the small tadpole and tadface examples."""

from __future__ import annotations

from .core import Edge, StrandedGraph, VertexKind, build_graph

MO3D = VertexKind.MO3D


def planar_tadpole() -> StrandedGraph:
    """One vertex, a loop between adjacent corners 1 (-) and 0 (+), legs on 2 and 3."""
    return build_graph(3, [MO3D], [Edge((0, 1), (0, 0))], [(0, 2), (0, 3)])


def nonplanar_tadpole() -> StrandedGraph:
    """Loop between the opposite corners 2 and 0, both PLUS; legs on 1 and 3.

    The loop separates the two legs, which therefore lie on different faces.
    """
    return build_graph(3, [MO3D], [Edge((0, 2), (0, 0))], [(0, 1), (0, 3)])


def tadface_graph() -> StrandedGraph:
    """Two copies of the non-planar tadpole joined through one leg of each.

    Both outer strands of the joining edge belong to the same closed face.
    """
    return build_graph(
        3,
        [MO3D, MO3D],
        [Edge((0, 2), (0, 0)), Edge((1, 2), (1, 0)), Edge((0, 3), (1, 1))],
        [(0, 1), (1, 3)],
    )


FIXTURES = {
    "planar_tadpole": planar_tadpole,
    "nonplanar_tadpole": nonplanar_tadpole,
    "tadface": tadface_graph,
}
