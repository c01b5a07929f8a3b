"""Stranded graphs of 3D and 4D tensor models.

A vertex of a D-dimensional model has D+1 *corners*; each corner hosts one
field, i.e. D group arguments (*slots*).  Inside a vertex every slot is joined
to exactly one slot of another corner by a strand, following the simplex
pattern of the quartic (3D) or quintic (4D) interaction::

    phi(g1, g2, g3) phi(g3, g4, g5) phi(g5, g2, g6) phi(g6, g4, g1)

Edges (propagators) carry D strands between two corners.  A graph is a
sequence of vertex kinds, a set of edges and the external corners left
uncontracted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Corner = tuple[int, int]
StrandEnd = tuple[int, int, int]


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def flipped(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class VertexKind(str, enum.Enum):
    MO3D = "MO3D"
    COLORED_PHI = "COLORED_PHI"
    COLORED_PHIBAR = "COLORED_PHIBAR"
    MO4D_A = "MO4D_A"
    MO4D_B = "MO4D_B"

    @property
    def dimension(self) -> int:
        return 4 if self in (VertexKind.MO4D_A, VertexKind.MO4D_B) else 3

    @property
    def valence(self) -> int:
        return self.dimension + 1

    @property
    def is_colored(self) -> bool:
        return self in (VertexKind.COLORED_PHI, VertexKind.COLORED_PHIBAR)


P, M = Sign.PLUS, Sign.MINUS

# phi-bar corners are PLUS, phi corners are MINUS, read left to right
# off the interaction terms.
_SIGNS: dict[VertexKind, tuple[Sign, ...]] = {
    VertexKind.MO3D: (P, M, P, M),
    VertexKind.COLORED_PHI: (M, M, M, M),
    VertexKind.COLORED_PHIBAR: (P, P, P, P),
    VertexKind.MO4D_A: (P, M, P, M, P),
    VertexKind.MO4D_B: (P, M, M, P, M),
}

# Corner rotations that map the vertex onto itself as a labelled object.
# Colored corners carry their color in the corner index, so they never rotate.
ADMISSIBLE_ROTATIONS: dict[VertexKind, tuple[int, ...]] = {
    VertexKind.MO3D: (0, 2),
    VertexKind.COLORED_PHI: (0,),
    VertexKind.COLORED_PHIBAR: (0,),
    VertexKind.MO4D_A: (0,),
    VertexKind.MO4D_B: (0,),
}


class GraphError(ValueError):
    """Raised for malformed stranded graphs."""


class GraphValidationError(GraphError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def corner_sign(kind: VertexKind, corner: int) -> Sign:
    kind = VertexKind(kind)
    if not 0 <= corner < kind.valence:
        raise IndexError(f"corner {corner} out of range for {kind.value}")
    return _SIGNS[kind][corner]


def sign_pattern(kind: VertexKind) -> tuple[Sign, ...]:
    return _SIGNS[VertexKind(kind)]


def vertex_kernel(kind: VertexKind, corner: int, slot: int) -> tuple[int, int]:
    """Partner ``(corner, slot)`` of a strand endpoint inside one vertex.

    >>> vertex_kernel(VertexKind.MO3D, 0, 0)
    (3, 2)
    >>> vertex_kernel(VertexKind.MO4D_A, 2, 3)
    (3, 0)
    """
    val = VertexKind(kind).valence
    dim = val - 1
    if not 0 <= corner < val:
        raise IndexError(f"corner {corner} out of range 0..{val - 1}")
    if not 0 <= slot < dim:
        raise IndexError(f"slot {slot} out of range 0..{dim - 1}")
    return (corner - slot - 1) % val, dim - 1 - slot


def edge_slot(dimension: int, slot: int) -> int:
    """Slot reached at the far end of an edge from ``slot`` at the near end.

    Untwisted propagators reverse the slot order, so that the outer strands
    of neighbouring corners continue on the same side of the ribbon.
    """
    return dimension - 1 - slot


@dataclass(frozen=True, order=True)
class Edge:
    minus_end: Corner
    plus_end: Corner

    def __post_init__(self):
        object.__setattr__(self, "minus_end", tuple(self.minus_end))
        object.__setattr__(self, "plus_end", tuple(self.plus_end))

    @property
    def ends(self) -> tuple[Corner, Corner]:
        return self.minus_end, self.plus_end

    @property
    def is_loop(self) -> bool:
        return self.minus_end[0] == self.plus_end[0]


@dataclass(frozen=True)
class Violation:
    kind: str
    location: tuple
    detail: str = ""

    def __str__(self):
        msg = f"{self.kind} at {self.location}"
        return f"{msg}: {self.detail}" if self.detail else msg


@dataclass(frozen=True)
class StrandedGraph:
    """Immutable stranded graph.

    Edges and external legs are stored sorted, so two graphs built from the
    same data in a different order compare equal.
    """

    dimension: int
    vertex_kinds: tuple[VertexKind, ...]
    edges: tuple[Edge, ...] = ()
    external_legs: tuple[Corner, ...] = ()
    leg_labels: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertex_kinds", tuple(VertexKind(k) for k in self.vertex_kinds))
        edges = (e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        legs = [tuple(c) for c in self.external_legs]
        if self.leg_labels is not None:
            if len(self.leg_labels) != len(legs):
                raise GraphError("leg_labels must match external_legs one to one")
            pairs = sorted(zip(legs, self.leg_labels))
            legs = [c for c, _ in pairs]
            object.__setattr__(self, "leg_labels", tuple(lab for _, lab in pairs))
        else:
            legs.sort()
        object.__setattr__(self, "external_legs", tuple(legs))

    @property
    def order(self) -> int:
        return len(self.vertex_kinds)

    @property
    def valence(self) -> int:
        return self.dimension + 1

    @cached_property
    def partner(self) -> dict[Corner, Corner | None]:
        """Corner -> opposite corner of its edge, or None for an external leg."""
        out: dict[Corner, Corner | None] = {c: None for c in self.external_legs}
        for e in self.edges:
            out[e.minus_end] = e.plus_end
            out[e.plus_end] = e.minus_end
        return out

    @cached_property
    def edge_at(self) -> dict[Corner, int]:
        out = {}
        for i, e in enumerate(self.edges):
            out[e.minus_end] = i
            out[e.plus_end] = i
        return out

    def corners(self) -> Iterable[Corner]:
        for v, kind in enumerate(self.vertex_kinds):
            for c in range(kind.valence):
                yield v, c

    def strand_ends(self) -> Iterable[StrandEnd]:
        for v, c in self.corners():
            for s in range(self.dimension):
                yield v, c, s

    def sign(self, v: int, c: int) -> Sign:
        return corner_sign(self.vertex_kinds[v], c)

    @property
    def is_vacuum(self) -> bool:
        return not self.external_legs

    def external_vertices(self) -> set[int]:
        return {v for v, _ in self.external_legs}

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, ordered by minimum."""
        parent = list(range(self.order))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.minus_end[0]), find(e.plus_end[0])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(self.order):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def subgraph(self, vertices: Sequence[int]) -> "StrandedGraph":
        """Induced graph on a union of components, vertices renumbered in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            Edge((index[e.minus_end[0]], e.minus_end[1]), (index[e.plus_end[0]], e.plus_end[1]))
            for e in self.edges
            if e.minus_end[0] in index
        ]
        legs = [(i, (index[v], c)) for i, (v, c) in enumerate(self.external_legs) if v in index]
        ext = [c for _, c in legs]
        labels = None
        if self.leg_labels is not None:
            labels = [self.leg_labels[i] for i, _ in legs]
        return StrandedGraph(self.dimension, [self.vertex_kinds[v] for v in vertices], edges, ext,
                             labels)


def validate(graph: StrandedGraph) -> list[Violation]:
    out: list[Violation] = []
    if graph.dimension not in (3, 4):
        out.append(Violation("bad dimension", (graph.dimension,), "dimension must be 3 or 4"))
        return out
    n = graph.order
    for v, kind in enumerate(graph.vertex_kinds):
        if kind.dimension != graph.dimension:
            out.append(Violation("kind/dimension mismatch", (v,),
                                 f"{kind.value} needs dimension {kind.dimension}"))
    seen: dict[Corner, str] = {}

    def cover(c: Corner, what: str):
        v, k = c
        if not 0 <= v < n:
            out.append(Violation("dangling vertex index", c, what))
            return
        if not 0 <= k < graph.vertex_kinds[v].valence:
            out.append(Violation("corner out of range", c, what))
            return
        if c in seen:
            out.append(Violation("corner covered twice", c, f"{seen[c]} and {what}"))
            return
        seen[c] = what

    for e in graph.edges:
        cover(e.minus_end, f"edge {e.minus_end}->{e.plus_end}")
        cover(e.plus_end, f"edge {e.minus_end}->{e.plus_end}")
    for c in graph.external_legs:
        cover(c, "external leg")
    for c in graph.corners():
        if c not in seen:
            out.append(Violation("corner uncovered", c))
    return out


def build_graph(dimension: int, vertex_kinds: Sequence, edges: Iterable = (),
                external_legs: Iterable = ()) -> StrandedGraph:
    """Build and validate a graph, raising GraphValidationError with every violation."""
    edge_objs = []
    for e in edges:
        if isinstance(e, Edge):
            edge_objs.append(e)
        elif isinstance(e, dict):
            edge_objs.append(Edge(tuple(e["minus"]), tuple(e["plus"])))
        else:
            edge_objs.append(Edge(tuple(e[0]), tuple(e[1])))
    try:
        kinds = [VertexKind(k) for k in vertex_kinds]
    except ValueError as exc:
        raise GraphValidationError([Violation("unknown vertex kind", (), str(exc))]) from None
    graph = StrandedGraph(dimension, kinds, edge_objs, [tuple(c) for c in external_legs])
    violations = validate(graph)
    if violations:
        raise GraphValidationError(violations)
    return graph


@dataclass(frozen=True)
class StrandStructure:
    """The two involutions on strand endpoints whose alternation traces faces."""

    vertex: dict[StrandEnd, StrandEnd]
    edge: dict[StrandEnd, StrandEnd]
    free: frozenset[StrandEnd] = field(default_factory=frozenset)


def strand_permutation(graph: StrandedGraph, slots: Sequence[int] | None = None) -> StrandStructure:
    """Vertex-internal and edge involutions, optionally restricted to some slots.

    The restriction must be closed under both involutions (it is for the
    outer slots of a 3D graph).
    """
    violations = validate(graph)
    if violations:
        raise GraphValidationError(violations)
    d = graph.dimension
    keep = set(range(d) if slots is None else slots)
    vert, edge = {}, {}
    free = []
    for v, c in graph.corners():
        kind = graph.vertex_kinds[v]
        other = graph.partner[(v, c)]
        for s in keep:
            c2, s2 = vertex_kernel(kind, c, s)
            if s2 not in keep:
                raise GraphError(f"slot set {sorted(keep)} not closed under the vertex kernel")
            vert[(v, c, s)] = (v, c2, s2)
            if other is None:
                free.append((v, c, s))
            else:
                s3 = edge_slot(d, s)
                if s3 not in keep:
                    raise GraphError(f"slot set {sorted(keep)} not closed under edge matching")
                edge[(v, c, s)] = (other[0], other[1], s3)
    return StrandStructure(vert, edge, frozenset(free))
