"""Faces, jackets and broken faces of stranded graphs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import (
    Corner,
    GraphError,
    StrandEnd,
    StrandedGraph,
    strand_permutation,
)

CLOSED = "closed"
OPEN = "open"

# Slot 1 joins opposite corners of a 3D vertex; dropping it leaves a ribbon vertex.
MIDDLE_SLOT = 1
OUTER_SLOTS = (0, 2)


class UnsupportedDimensionError(GraphError):
    pass


@dataclass(frozen=True)
class Face:
    kind: str
    trail: tuple[StrandEnd, ...]
    edge_visits: tuple[int, ...]

    @property
    def is_closed(self) -> bool:
        return self.kind == CLOSED

    def max_edge_multiplicity(self) -> int:
        if not self.edge_visits:
            return 0
        return max(Counter(self.edge_visits).values())


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[Face, ...]

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    @property
    def closed(self) -> list[Face]:
        return [f for f in self.faces if f.is_closed]

    @property
    def open(self) -> list[Face]:
        return [f for f in self.faces if not f.is_closed]


def trace_faces(graph: StrandedGraph, slots: Sequence[int] | None = None) -> FaceSet:
    """Decompose the strand endpoints into open and closed faces.

    Open faces run from the smaller of their two free endpoints; closed faces
    start at their smallest endpoint and leave it through the vertex kernel.
    """
    st = strand_permutation(graph, slots)
    edge_at = graph.edge_at
    seen: set[StrandEnd] = set()
    faces = []

    for start in sorted(st.free):
        if start in seen:
            continue
        trail, visits = [start], []
        x = start
        while True:
            x = st.vertex[x]
            trail.append(x)
            if x in st.free:
                break
            visits.append(edge_at[x[:2]])
            x = st.edge[x]
            trail.append(x)
        seen.update(trail)
        faces.append(Face(OPEN, tuple(trail), tuple(visits)))

    for start in sorted(st.vertex):
        if start in seen:
            continue
        trail, visits = [start], []
        x = start
        while True:
            x = st.vertex[x]
            trail.append(x)
            visits.append(edge_at[x[:2]])
            x = st.edge[x]
            if x == start:
                break
            trail.append(x)
        seen.update(trail)
        faces.append(Face(CLOSED, tuple(trail), tuple(visits)))

    faces.sort(key=lambda f: f.trail[0])
    return FaceSet(tuple(faces))


@dataclass(frozen=True)
class RibbonGraph:
    """Ribbon graph on darts ``(vertex, corner)``.

    ``vertex_orders`` lists the cyclic order of darts around each vertex and
    ``pairing`` the edge involution; external darts are unpaired and behave
    as capped half-edges when faces are traced.
    """

    vertex_orders: tuple[tuple[Corner, ...], ...]
    pairing: dict
    external: tuple[Corner, ...]

    @property
    def V(self) -> int:
        return len(self.vertex_orders)

    @property
    def E(self) -> int:
        return len(self.pairing) // 2

    def _prev(self) -> dict[Corner, Corner]:
        prev = {}
        for order in self.vertex_orders:
            for i, d in enumerate(order):
                prev[d] = order[i - 1]
        return prev

    def face_cycles(self) -> list[tuple[Corner, ...]]:
        """Cycles of ``alpha . sigma^-1`` with external darts fixed by alpha."""
        prev = self._prev()
        seen = set()
        out = []
        for order in self.vertex_orders:
            for start in order:
                if start in seen:
                    continue
                cyc = []
                d = start
                while d not in seen:
                    seen.add(d)
                    cyc.append(d)
                    p = prev[d]
                    d = self.pairing.get(p, p)
                out.append(tuple(cyc))
        return out

    @property
    def F(self) -> int:
        return len(self.face_cycles())

    @property
    def broken_faces(self) -> int:
        ext = set(self.external)
        return sum(1 for f in self.face_cycles() if ext.intersection(f))

    @property
    def closed_faces(self) -> int:
        return self.F - self.broken_faces

    def components(self) -> list[list[int]]:
        n = self.V
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.pairing.items():
            ra, rb = find(a[0]), find(b[0])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())


def jacket(graph: StrandedGraph) -> RibbonGraph:
    """Ribbon graph left after deleting the middle strand of every edge."""
    if graph.dimension != 3:
        raise UnsupportedDimensionError(
            f"jacket is only defined for dimension 3, got {graph.dimension}")
    orders = tuple(tuple((v, c) for c in range(kind.valence))
                   for v, kind in enumerate(graph.vertex_kinds))
    pairing = {}
    for e in graph.edges:
        pairing[e.minus_end] = e.plus_end
        pairing[e.plus_end] = e.minus_end
    return RibbonGraph(orders, pairing, tuple(graph.external_legs))


def component_genera(ribbon: RibbonGraph) -> list[int]:
    """Genus of each connected component, capped external darts included."""
    faces = ribbon.face_cycles()
    out = []
    for comp in ribbon.components():
        cs = set(comp)
        V = len(comp)
        E = sum(1 for d in ribbon.pairing if d[0] in cs) // 2
        F = sum(1 for f in faces if f[0][0] in cs)
        chi = V - E + F
        if chi > 2 or chi % 2:
            raise GraphError(f"component {comp} has Euler characteristic {chi}")
        out.append((2 - chi) // 2)
    return out


def genus(ribbon: RibbonGraph) -> int:
    """Total genus, summed over connected components."""
    return sum(component_genera(ribbon))


def euler_characteristics(ribbon: RibbonGraph) -> list[int]:
    faces = ribbon.face_cycles()
    out = []
    for comp in ribbon.components():
        cs = set(comp)
        E = sum(1 for d in ribbon.pairing if d[0] in cs) // 2
        F = sum(1 for f in faces if f[0][0] in cs)
        out.append(len(comp) - E + F)
    return out


def broken_faces(graph: StrandedGraph) -> int:
    """Number B of jacket faces that pass through an external leg."""
    if graph.is_vacuum:
        return 0
    return jacket(graph).broken_faces


@dataclass(frozen=True)
class TopologyRecord:
    face_count_closed: int
    face_count_open: int
    jacket_genus: int
    broken_faces: int
    component_genera: tuple[int, ...] = ()

    @property
    def planar(self) -> bool:
        return self.jacket_genus == 0

    @property
    def irregular(self) -> bool:
        return self.broken_faces > 1

    def to_dict(self) -> dict:
        return {
            "face_count_closed": self.face_count_closed,
            "face_count_open": self.face_count_open,
            "jacket_genus": self.jacket_genus,
            "broken_faces": self.broken_faces,
            "component_genera": list(self.component_genera),
            "planar": self.planar,
            "irregular": self.irregular,
        }


def topology_record(graph: StrandedGraph) -> TopologyRecord:
    faces = trace_faces(graph)
    rib = jacket(graph)
    gens = component_genera(rib)
    return TopologyRecord(
        face_count_closed=len(faces.closed),
        face_count_open=len(faces.open),
        jacket_genus=sum(gens),
        broken_faces=rib.broken_faces if graph.external_legs else 0,
        component_genera=tuple(gens),
    )
