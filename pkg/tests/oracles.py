"""Brute-force reference implementations used to cross-check the library.

Apart from borrowing the 4D vertex kernel, nothing here calls the code under
test: faces come from a union-find over strand endpoints, multi-orientability and colorability from exhaustive
search over every per-vertex choice, and isomorphism classes from applying
every relabelling explicitly.
"""

from __future__ import annotations

import itertools
import random

from tensorgraphs.core import ADMISSIBLE_ROTATIONS, Edge, StrandedGraph, VertexKind

# the six strand pairs of the quartic simplex vertex, written out by hand
QUARTIC_PAIRS = {
    frozenset({(0, 0), (3, 2)}),
    frozenset({(0, 1), (2, 1)}),
    frozenset({(0, 2), (1, 0)}),
    frozenset({(1, 1), (3, 1)}),
    frozenset({(1, 2), (2, 0)}),
    frozenset({(2, 2), (3, 0)}),
}


def perfect_matchings(items):
    items = list(items)
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in perfect_matchings(rest):
            yield [(a, items[i])] + m


def random_matching(items, rng: random.Random):
    items = list(items)
    rng.shuffle(items)
    return [(items[i], items[i + 1]) for i in range(0, len(items), 2)]


def raw_graph(kinds, pairs, legs=()) -> StrandedGraph:
    """Graph from unordered corner pairs; the first corner is taken as the MINUS end."""
    dim = VertexKind(kinds[0]).dimension
    return StrandedGraph(dim, kinds, [Edge(a, b) for a, b in pairs], list(legs))


def all_raw_graphs(n: int, legs: int, kind=VertexKind.MO3D):
    """Every graph on n vertices of one kind with ``legs`` external corners."""
    corners = [(v, c) for v in range(n) for c in range(kind.valence)]
    for ext in itertools.combinations(corners, legs):
        rest = [c for c in corners if c not in ext]
        for m in perfect_matchings(rest):
            yield raw_graph([kind] * n, m, ext)


# --------------------------------------------------------------------------
# faces


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _kernel_pairs(kind: VertexKind):
    if kind.dimension == 3:
        return QUARTIC_PAIRS
    # no hand-written table for the quintic vertex; reuse the library kernel
    from tensorgraphs.core import vertex_kernel

    return {frozenset({(c, s), vertex_kernel(kind, c, s)}) for c in range(5) for s in range(4)}


def strand_components(graph: StrandedGraph, slots=None, cap_legs=False):
    """Connected components of strand endpoints as (endpoints, is_open) pairs.

    Edges match slot s to slot D-1-s.  With ``cap_legs`` the outer strands of
    an external leg are joined, as when the leg is closed off in the jacket.
    """
    d = graph.dimension
    slots = set(range(d) if slots is None else slots)
    uf = _UF()
    ends = [(v, c, s) for v, c in graph.corners() for s in slots]
    for x in ends:
        uf.find(x)
    for v, kind in enumerate(graph.vertex_kinds):
        for pair in _kernel_pairs(kind):
            (c1, s1), (c2, s2) = sorted(pair)
            if s1 in slots and s2 in slots:
                uf.union((v, c1, s1), (v, c2, s2))
    for e in graph.edges:
        (v, a), (w, b) = e.minus_end, e.plus_end
        for s in slots:
            uf.union((v, a, s), (w, b, d - 1 - s))
    free = {(v, c, s) for v, c in graph.external_legs for s in slots}
    if cap_legs:
        lo, hi = min(slots), max(slots)
        for v, c in graph.external_legs:
            uf.union((v, c, lo), (v, c, hi))
    groups = {}
    for x in ends:
        groups.setdefault(uf.find(x), set()).add(x)
    return [(g, bool(g & free)) for g in groups.values()]


def face_counts(graph: StrandedGraph, slots=None):
    comps = strand_components(graph, slots)
    closed = sum(1 for _, o in comps if not o)
    return closed, len(comps) - closed


def capped_jacket(graph: StrandedGraph):
    """(per-component Euler characteristics, number of faces through a leg)."""
    comps = strand_components(graph, slots=(0, 2), cap_legs=True)
    vcomp = graph.components()
    where = {v: i for i, comp in enumerate(vcomp) for v in comp}
    chi = [len(comp) for comp in vcomp]
    for e in graph.edges:
        chi[where[e.minus_end[0]]] -= 1
    for members, _ in comps:
        chi[where[next(iter(members))[0]]] += 1
    legs = set(graph.external_legs)
    broken = sum(1 for members, _ in comps if any((v, c) in legs for v, c, _ in members))
    return chi, broken


# --------------------------------------------------------------------------
# multi-orientability and colorability


def brute_mo(graph: StrandedGraph) -> bool:
    """Try both alternating sign patterns at every 3D vertex."""
    patterns = ("+-+-", "-+-+")
    for choice in itertools.product(patterns, repeat=graph.order):
        if all(choice[v][a] != choice[w][b]
               for (v, a), (w, b) in (e.ends for e in graph.edges)):
            return True
    return False


def brute_colorable(graph: StrandedGraph) -> bool:
    """Try every vertex type and color offset.

    A phi vertex with offset r colors corner c with (c + r) mod 4, a phi-bar
    vertex with (r - c) mod 4; edges join phi to phi-bar with equal colors.
    """
    opts = [(t, r) for t in ("phi", "bar") for r in range(4)]

    def color(t, r, c):
        return (c + r) % 4 if t == "phi" else (r - c) % 4

    for choice in itertools.product(opts, repeat=graph.order):
        ok = True
        for (v, a), (w, b) in (e.ends for e in graph.edges):
            (tv, rv), (tw, rw) = choice[v], choice[w]
            if tv == tw or color(tv, rv, a) != color(tw, rw, b):
                ok = False
                break
        if ok:
            return True
    return False


# --------------------------------------------------------------------------
# isomorphism by explicit relabelling


def relabel(graph: StrandedGraph, perm, rots) -> StrandedGraph:
    """Move vertex v to perm[v] and shift its corners by rots[v]."""
    def m(x):
        v, c = x
        return perm[v], (c + rots[v]) % graph.vertex_kinds[v].valence

    kinds = [None] * graph.order
    for v, k in enumerate(graph.vertex_kinds):
        kinds[perm[v]] = k
    edges = [Edge(m(e.minus_end), m(e.plus_end)) for e in graph.edges]
    legs = [m(x) for x in graph.external_legs]
    # legs keep their order, so the labels travel with them
    return StrandedGraph(graph.dimension, kinds, edges, legs, graph.leg_labels)


def relabelings(graph: StrandedGraph):
    """Every kind-preserving vertex permutation combined with admissible rotations."""
    n = graph.order
    kinds = graph.vertex_kinds
    for perm in itertools.permutations(range(n)):
        if any(kinds[perm[v]] != kinds[v] for v in range(n)):
            continue
        for rots in itertools.product(*(ADMISSIBLE_ROTATIONS[k] for k in kinds)):
            yield relabel(graph, perm, rots)


def orbit_partition(graphs):
    """Map each graph to its orbit (frozenset) and record stabilizer sizes."""
    orbit_of = {}
    stab = {}
    for g in graphs:
        if g in orbit_of:
            continue
        images = list(relabelings(g))
        orb = frozenset(images)
        for h in orb:
            orbit_of[h] = orb
        stab[orb] = sum(1 for h in images if h == g)
    return orbit_of, stab
