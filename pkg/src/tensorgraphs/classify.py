"""Per-graph predicates: tadpoles, tadfaces, multi-orientability, colorability."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .core import GraphError, Sign, StrandedGraph, VertexKind, corner_sign
from .topology import (
    TopologyRecord,
    UnsupportedDimensionError,
    broken_faces,
    topology_record,
    trace_faces,
)

PHI = "PHI"
PHIBAR = "PHIBAR"
N_COLORS = 4


class ModelMismatchError(GraphError):
    pass


class GTadpolePlanarity(str, enum.Enum):
    PLANAR = "PLANAR"
    NONPLANAR = "NONPLANAR"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    OTHER = "OTHER"


def is_tadpole(graph: StrandedGraph) -> bool:
    return any(e.is_loop for e in graph.edges)


def is_generalized_tadpole(graph: StrandedGraph) -> bool:
    """All external legs sit on one vertex. Vacuum graphs are never generalized tadpoles."""
    return len(graph.external_vertices()) == 1


def gtadpole_planarity(graph: StrandedGraph) -> GTadpolePlanarity:
    if not is_generalized_tadpole(graph):
        return GTadpolePlanarity.NOT_APPLICABLE
    B = broken_faces(graph)
    if B == 1:
        return GTadpolePlanarity.PLANAR
    if B == 2 and len(graph.external_legs) == 2:
        return GTadpolePlanarity.NONPLANAR
    return GTadpolePlanarity.OTHER


def has_tadface(graph: StrandedGraph) -> bool:
    return any(f.max_edge_multiplicity() >= 2 for f in trace_faces(graph))


@dataclass(frozen=True)
class SignAssignment:
    """Rotation parity per vertex; parity 1 shifts the MO3D pattern by one corner."""

    parities: tuple[int, ...]

    def sign(self, graph: StrandedGraph, v: int, c: int) -> Sign:
        s = corner_sign(graph.vertex_kinds[v], c) if graph.dimension == 4 else corner_sign(
            VertexKind.MO3D, c)
        return s.flipped() if self.parities[v] else s

    def check(self, graph: StrandedGraph) -> bool:
        if len(self.parities) != graph.order:
            return False
        if graph.dimension == 4 and any(self.parities):
            return False
        return all(self.sign(graph, *e.minus_end) != self.sign(graph, *e.plus_end)
                   for e in graph.edges)


def _check_mo_kinds(graph: StrandedGraph):
    kinds = set(graph.vertex_kinds)
    if graph.dimension == 3 and VertexKind.MO3D in kinds and len(kinds) > 1:
        raise ModelMismatchError("graph mixes MO3D and colored vertices")


def find_sign_assignment(graph: StrandedGraph) -> SignAssignment | None:
    """A multi-orientable sign choice, or None.

    In 3D each vertex may carry either alternating pattern (parity 0 or 1);
    colored vertices are read as bare quartic vertices.  In 4D the patterns
    of the two vertex kinds are fixed.
    """
    _check_mo_kinds(graph)
    n = graph.order
    if graph.dimension == 4:
        asg = SignAssignment((0,) * n)
        return asg if asg.check(graph) else None

    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e in graph.edges:
        (v, a), (w, b) = e.ends
        need = (a + b + 1) % 2
        if v == w:
            if need:
                return None
            continue
        adj[v].append((w, need))
        adj[w].append((v, need))
    par = [-1] * n
    for root in range(n):
        if par[root] >= 0:
            continue
        par[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, need in adj[v]:
                want = par[v] ^ need
                if par[w] < 0:
                    par[w] = want
                    queue.append(w)
                elif par[w] != want:
                    return None
    return SignAssignment(tuple(par))


def is_multi_orientable(graph: StrandedGraph) -> bool:
    return find_sign_assignment(graph) is not None


@dataclass(frozen=True)
class ColorAssignment:
    """Vertex types, rotation offsets and the resulting edge colors.

    Corner ``c`` of a PHI vertex with offset ``r`` has color ``(c + r) % 4``
    (ascending, clockwise); of a PHIBAR vertex ``(r - c) % 4`` (anticlockwise).
    """

    vertex_types: tuple[str, ...]
    rotations: tuple[int, ...]
    edge_colors: dict = field(default_factory=dict, compare=False)

    def color(self, v: int, c: int) -> int:
        r = self.rotations[v]
        return (c + r) % N_COLORS if self.vertex_types[v] == PHI else (r - c) % N_COLORS

    def check(self, graph: StrandedGraph) -> bool:
        if graph.dimension != 3 or len(self.vertex_types) != graph.order:
            return False
        for v in range(graph.order):
            if sorted(self.color(v, c) for c in range(4)) != [0, 1, 2, 3]:
                return False
        for i, e in enumerate(graph.edges):
            (v, a), (w, b) = e.ends
            if self.vertex_types[v] == self.vertex_types[w]:
                return False
            if self.color(v, a) != self.color(w, b):
                return False
            if self.edge_colors and self.edge_colors.get(i) != self.color(v, a):
                return False
        return True


def _color_of(t: str, r: int, c: int) -> int:
    return (c + r) % N_COLORS if t == PHI else (r - c) % N_COLORS


def _rotation_for(t: str, c: int, color: int) -> int:
    return (color - c) % N_COLORS if t == PHI else (color + c) % N_COLORS


def find_color_assignment(graph: StrandedGraph) -> ColorAssignment | None:
    """Search each component over the 8 choices at its root; everything else is forced."""
    if graph.dimension != 3:
        raise UnsupportedDimensionError("colorability is defined for the 3D model only")
    if is_tadpole(graph):
        return None
    n = graph.order
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for e in graph.edges:
        (v, a), (w, b) = e.ends
        adj[v].append((a, w, b))
        adj[w].append((b, v, a))
    types: list[str | None] = [None] * n
    rots = [0] * n
    for comp in graph.components():
        root = comp[0]
        for t0 in (PHI, PHIBAR):
            for r0 in range(N_COLORS):
                for v in comp:
                    types[v] = None
                types[root], rots[root] = t0, r0
                queue = deque([root])
                ok = True
                while queue and ok:
                    v = queue.popleft()
                    for a, w, b in adj[v]:
                        col = _color_of(types[v], rots[v], a)
                        tw = PHIBAR if types[v] == PHI else PHI
                        rw = _rotation_for(tw, b, col)
                        if types[w] is None:
                            types[w], rots[w] = tw, rw
                            queue.append(w)
                        elif types[w] != tw or rots[w] != rw:
                            ok = False
                            break
                if ok:
                    break
            if ok:
                break
        if not ok:
            return None
    colors = {i: _color_of(types[e.minus_end[0]], rots[e.minus_end[0]], e.minus_end[1])
              for i, e in enumerate(graph.edges)}
    return ColorAssignment(tuple(types), tuple(rots), colors)


def is_colorable(graph: StrandedGraph) -> bool:
    return find_color_assignment(graph) is not None


@dataclass(frozen=True)
class ClassificationRecord:
    is_tadpole: bool
    is_generalized_tadpole: bool
    gtadpole_planarity: GTadpolePlanarity
    has_tadface: bool
    is_multi_orientable: bool
    is_colorable: bool | None
    topology: TopologyRecord | None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "is_tadpole": self.is_tadpole,
            "is_generalized_tadpole": self.is_generalized_tadpole,
            "gtadpole_planarity": self.gtadpole_planarity.value,
            "has_tadface": self.has_tadface,
            "is_multi_orientable": self.is_multi_orientable,
            "is_colorable": self.is_colorable,
            "notes": list(self.notes),
        }


def classify(graph: StrandedGraph) -> ClassificationRecord:
    notes = []
    if graph.dimension == 3:
        topo = topology_record(graph)
        planarity = gtadpole_planarity(graph)
        colorable = is_colorable(graph)
        if planarity is GTadpolePlanarity.OTHER:
            notes.append(f"generalized tadpole with {len(graph.external_legs)} legs "
                         f"and B={topo.broken_faces}")
    else:
        topo = None
        planarity = GTadpolePlanarity.NOT_APPLICABLE
        colorable = None
        notes.append("no jacket in dimension 4; topology and colorability not computed")
    return ClassificationRecord(
        is_tadpole=is_tadpole(graph),
        is_generalized_tadpole=is_generalized_tadpole(graph),
        gtadpole_planarity=planarity,
        has_tadface=has_tadface(graph),
        is_multi_orientable=is_multi_orientable(graph),
        is_colorable=colorable,
        topology=topo,
        notes=tuple(notes),
    )
