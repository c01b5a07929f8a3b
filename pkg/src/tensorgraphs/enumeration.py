"""Wick-contraction enumeration, canonical forms and isomorphism classes.

Labelled graphs are handled internally as flat arrays indexed by
``vertex * valence + corner``: ``partner[i]`` is the opposite corner of the
edge at ``i`` (or -1 for an external leg), ``minus[i]`` flags the emitting end
of that edge.  Canonical keys are computed on this form, and class
representatives are rebuilt from the keys, so the output never depends on
the order in which pairings were visited.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .core import (
    ADMISSIBLE_ROTATIONS,
    Edge,
    GraphError,
    Sign,
    StrandedGraph,
    VertexKind,
    sign_pattern,
)

log = logging.getLogger(__name__)

ALL = "ALL"
CONNECTED_ONLY = "CONNECTED_ONLY"
DEFAULT_CAP = 10**8

KIND_ORDER = list(VertexKind)
KIND_CODE = {k: i for i, k in enumerate(KIND_ORDER)}


class InfeasibleError(GraphError):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ModelSpec:
    name: str
    dimension: int

    def kind_sequences(self, order: int) -> list[tuple[VertexKind, ...]]:
        """Vertex kind sequences (one per mixture of vertex types) at a given order."""
        if self.name == "mo3d":
            return [(VertexKind.MO3D,) * order]
        if self.name == "colored3d":
            if order % 2:
                return []
            h = order // 2
            return [(VertexKind.COLORED_PHI,) * h + (VertexKind.COLORED_PHIBAR,) * h]
        if self.name == "mo4d":
            return [(VertexKind.MO4D_A,) * a + (VertexKind.MO4D_B,) * (order - a)
                    for a in range(order, -1, -1)]
        raise ValueError(f"unknown model {self.name!r}")


MODELS = {
    "mo3d": ModelSpec("mo3d", 3),
    "colored3d": ModelSpec("colored3d", 3),
    "mo4d": ModelSpec("mo4d", 4),
}


def get_model(model) -> ModelSpec:
    if isinstance(model, ModelSpec):
        return model
    try:
        return MODELS[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; choose from {sorted(MODELS)}") from None


# --------------------------------------------------------------------------
# labelled pairings


@dataclass(frozen=True)
class _Frame:
    """Everything about one vertex-kind sequence that does not depend on the pairing."""

    kinds: tuple[VertexKind, ...]
    valence: int
    minus: tuple[int, ...]

    @classmethod
    def of(cls, kinds):
        val = kinds[0].valence if kinds else 4
        minus = []
        for k in kinds:
            minus.extend(1 if s is Sign.MINUS else 0 for s in sign_pattern(k))
        return cls(tuple(kinds), val, tuple(minus))

    def corner_lists(self):
        plus = [i for i, m in enumerate(self.minus) if not m]
        minus = [i for i, m in enumerate(self.minus) if m]
        return minus, plus


def _infeasibility(model: ModelSpec, kinds, external: int) -> str | None:
    if external % 2:
        return "odd number of external legs"
    frame = _Frame.of(kinds)
    minus, plus = frame.corner_lists()
    half = external // 2
    if len(minus) != len(plus):
        return f"sign imbalance: {len(minus)} minus vs {len(plus)} plus corners"
    if half > len(minus):
        return f"{external} external legs exceed {len(minus) + len(plus)} corners"
    if model.name == "colored3d" and half > 4 * (len(kinds) // 2):
        return "too many external legs for the colored vertices"
    return None


def feasibility(model, order: int, external: int) -> str | None:
    """None if some labelled graph exists, else the violated constraint."""
    model = get_model(model)
    if order < 0 or external < 0:
        return "negative order or leg count"
    seqs = model.kind_sequences(order)
    if not seqs:
        return f"no admissible vertex mixture at order {order}"
    reasons = [_infeasibility(model, kinds, external) for kinds in seqs]
    if any(r is None for r in reasons):
        return None
    return reasons[0]


def _feasible_frames(model, order, external):
    for kinds in model.kind_sequences(order):
        if _infeasibility(model, kinds, external) is None:
            yield _Frame.of(kinds)


def _colored_external_profiles(external: int, h: int):
    """Per-color counts of external legs on each side, summing to external/2."""
    half = external // 2
    for e in product(range(min(h, half) + 1), repeat=4):
        if sum(e) == half:
            yield e


def _labelled_mo(frame: _Frame, external: int):
    minus, plus = frame.corner_lists()
    half = external // 2
    size = len(frame.minus)
    for ext_m in combinations(minus, half):
        for ext_p in combinations(plus, half):
            base = [-2] * size
            for i in ext_m + ext_p:
                base[i] = -1
            rest_m = [i for i in minus if base[i] == -2]
            rest_p = [i for i in plus if base[i] == -2]
            for perm in permutations(rest_p):
                partner = base[:]
                for a, b in zip(rest_m, perm):
                    partner[a] = b
                    partner[b] = a
                yield partner


def _labelled_colored(frame: _Frame, external: int):
    h = len(frame.kinds) // 2
    size = 4 * len(frame.kinds)
    phis = range(h)
    for profile in _colored_external_profiles(external, h):
        # per color: subsets of phi and phibar vertices whose color-p corner is external
        choices = []
        for p, e in enumerate(profile):
            choices.append([(a, b) for a in combinations(phis, e) for b in combinations(phis, e)])
        for ext in product(*choices):
            base = [-2] * size
            per_color = []
            for p, (a_ext, b_ext) in enumerate(ext):
                pc, qc = p, (-p) % 4
                for i in a_ext:
                    base[4 * i + pc] = -1
                for j in b_ext:
                    base[4 * (h + j) + qc] = -1
                rest_a = [4 * i + pc for i in phis if i not in a_ext]
                rest_b = [4 * (h + j) + qc for j in phis if j not in b_ext]
                per_color.append((rest_a, [list(x) for x in permutations(rest_b)]))
            for perms in product(*(pc[1] for pc in per_color)):
                partner = base[:]
                for (rest_a, _), perm in zip(per_color, perms):
                    for a, b in zip(rest_a, perm):
                        partner[a] = b
                        partner[b] = a
                yield partner


def _labelled(model: ModelSpec, frame: _Frame, external: int):
    if model.name == "colored3d":
        return _labelled_colored(frame, external)
    return _labelled_mo(frame, external)


def _leg_labelings(frame: _Frame, partner: Sequence[int]):
    """All sign-respecting assignments of leg labels; PLUS legs take the low labels."""
    ext = [i for i, p in enumerate(partner) if p == -1]
    plus = [i for i in ext if not frame.minus[i]]
    minus = [i for i in ext if frame.minus[i]]
    for pp in permutations(plus):
        for mp in permutations(minus):
            labels = {}
            for lab, i in enumerate(pp + mp):
                labels[i] = lab
            yield labels


def _to_graph(frame: _Frame, partner: Sequence[int], labels: dict | None = None) -> StrandedGraph:
    val = frame.valence
    edges, ext = [], []
    for i, p in enumerate(partner):
        if p == -1:
            ext.append((i // val, i % val))
        elif frame.minus[i]:
            edges.append(Edge((i // val, i % val), (p // val, p % val)))
    leg_labels = None
    if labels is not None:
        leg_labels = tuple(labels[v * val + c] for v, c in sorted(ext))
    return StrandedGraph(frame.kinds[0].dimension if frame.kinds else 3, frame.kinds, edges, ext,
                         leg_labels)


def pairing_count(model, order: int, external: int) -> int:
    """Closed-form number of labelled pairings (unlabelled legs)."""
    model = get_model(model)
    total = 0
    for frame in _feasible_frames(model, order, external):
        if model.name == "colored3d":
            h = len(frame.kinds) // 2
            for profile in _colored_external_profiles(external, h):
                t = 1
                for e in profile:
                    t *= math.comb(h, e) ** 2 * math.factorial(h - e)
                total += t
        else:
            m = len(frame.corner_lists()[0])
            half = external // 2
            total += math.comb(m, half) ** 2 * math.factorial(m - half)
    return total


def enumerate_pairings(model, order: int, external: int = 0, *,
                       labeled_externals: bool = False) -> Iterator[StrandedGraph]:
    """Every labelled graph of the model at the given order and leg count.

    MO models contract each MINUS corner with a PLUS corner; the colored model
    contracts phi and phi-bar corners of equal color.  External corners are
    chosen in every admissible way, keeping as many PLUS as MINUS legs.
    """
    model = get_model(model)
    if order < 1:
        raise ValueError("order must be at least 1")
    reason = feasibility(model, order, external)
    if reason:
        raise InfeasibleError(f"{model.name} order {order} with {external} legs: {reason}")
    for frame in _feasible_frames(model, order, external):
        for partner in _labelled(model, frame, external):
            if labeled_externals and external:
                for labels in _leg_labelings(frame, partner):
                    yield _to_graph(frame, partner, labels)
            else:
                yield _to_graph(frame, partner)


# --------------------------------------------------------------------------
# canonical forms


def _flat(graph: StrandedGraph):
    val = graph.valence
    size = val * graph.order
    partner = [-1] * size
    minus = [0] * size
    for e in graph.edges:
        a = e.minus_end[0] * val + e.minus_end[1]
        b = e.plus_end[0] * val + e.plus_end[1]
        partner[a], partner[b] = b, a
        minus[a] = 1
    labels = None
    if graph.leg_labels is not None:
        labels = {v * val + c: lab for (v, c), lab in zip(graph.external_legs, graph.leg_labels)}
    return graph.vertex_kinds, val, partner, minus, labels


def _components(n, val, partner):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, p in enumerate(partner):
        if p > i:
            a, b = find(i // val), find(p // val)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _rooted_code(root, rho, kinds, val, partner, minus, labels):
    order = [root]
    rot = {root: rho}
    idx = {root: 0}
    i = 0
    while i < len(order):
        u = order[i]
        ru = rot[u]
        base = u * val
        for cn in range(val):
            p = partner[base + (cn - ru) % val]
            if p >= 0:
                w = p // val
                if w not in idx:
                    b = p % val
                    best = min(ADMISSIBLE_ROTATIONS[kinds[w]], key=lambda r: (b + r) % val)
                    idx[w] = len(order)
                    order.append(w)
                    rot[w] = best
        i += 1
    code = []
    for u in order:
        ru = rot[u]
        base = u * val
        code.append(KIND_CODE[kinds[u]])
        for cn in range(val):
            c = (cn - ru) % val
            p = partner[base + c]
            if p < 0:
                code.extend((-1, labels[base + c] if labels else -1, 0))
            else:
                w = p // val
                code.extend((idx[w], (p % val + rot[w]) % val, minus[base + c]))
    return tuple(code)


def _component_key(comp, kinds, val, partner, minus, labels):
    """(minimal rooted code, number of roots attaining it)."""

    def invariant(v):
        base = v * val
        ext = loops = 0
        for c in range(val):
            p = partner[base + c]
            if p < 0:
                ext += 1
            elif p // val == v:
                loops += 1
        return KIND_CODE[kinds[v]], -ext, -loops

    invs = {v: invariant(v) for v in comp}
    best_inv = min(invs.values())
    best, count = None, 0
    for v in comp:
        if invs[v] != best_inv:
            continue
        for rho in ADMISSIBLE_ROTATIONS[kinds[v]]:
            code = _rooted_code(v, rho, kinds, val, partner, minus, labels)
            if best is None or code < best:
                best, count = code, 1
            elif code == best:
                count += 1
    return best, count


def _key_and_aut(kinds, val, partner, minus, labels=None):
    n = len(kinds)
    comp_keys = []
    aut = 1
    for comp in _components(n, val, partner):
        code, cnt = _component_key(comp, kinds, val, partner, minus, labels)
        comp_keys.append(code)
        aut *= cnt
    for mult in Counter(comp_keys).values():
        aut *= math.factorial(mult)
    return (val,) + tuple(sorted(comp_keys)), aut


CanonicalKey = tuple


def canonical_form(graph: StrandedGraph) -> CanonicalKey:
    """Isomorphism-invariant key under vertex relabelling and admissible rotations."""
    return _key_and_aut(*_flat(graph))[0]


def automorphism_count(graph: StrandedGraph) -> int:
    return _key_and_aut(*_flat(graph))[1]


def graph_from_key(key: CanonicalKey) -> StrandedGraph:
    """Rebuild the canonically labelled graph a key describes."""
    val = key[0]
    kinds, edges, ext, labels = [], [], [], []
    offset = 0
    for comp in key[1:]:
        width = 1 + 3 * val
        nv = len(comp) // width
        for j in range(nv):
            rec = comp[j * width:(j + 1) * width]
            v = offset + j
            kinds.append(KIND_ORDER[rec[0]])
            for c in range(val):
                w, b, m = rec[1 + 3 * c: 4 + 3 * c]
                if w < 0:
                    ext.append((v, c))
                    labels.append(b)
                elif m:
                    edges.append(Edge((v, c), (offset + w, b)))
        offset += nv
    labelled = ext and labels[0] >= 0
    return StrandedGraph(val - 1, kinds, edges, ext, tuple(labels) if labelled else None)


# --------------------------------------------------------------------------
# classes


@dataclass(frozen=True)
class EnumerationClass:
    key: CanonicalKey
    representative: StrandedGraph
    multiplicity: int
    automorphisms: int

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def connected(self) -> bool:
        return len(self.key) <= 2


def _count_chunk(args):
    model_name, order, external, labeled, (part, parts) = args
    model = get_model(model_name)
    counts: Counter = Counter()
    auts: dict = {}
    seq = 0
    for frame in _feasible_frames(model, order, external):
        for partner in _labelled(model, frame, external):
            seq += 1
            if seq % parts != part:
                continue
            labelings = _leg_labelings(frame, partner) if (labeled and external) else [None]
            for labels in labelings:
                key, aut = _key_and_aut(frame.kinds, frame.valence, partner, frame.minus, labels)
                counts[key] += 1
                auts.setdefault(key, aut)
    return counts, auts


def group_order(kinds: Sequence[VertexKind]) -> int:
    """Size of the relabelling group: permutations within each kind times rotations."""
    out = 1
    for kind, m in Counter(kinds).items():
        out *= math.factorial(m) * len(ADMISSIBLE_ROTATIONS[kind]) ** m
    return out


@lru_cache(maxsize=64)
def _classes_cached(model_name, order, external, labeled, workers):
    chunks = [(model_name, order, external, labeled, (i, workers)) for i in range(workers)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_count_chunk, chunks))
    else:
        results = [_count_chunk(chunks[0])]
    counts: Counter = Counter()
    auts: dict = {}
    for c, a in results:
        counts.update(c)
        auts.update(a)
    return tuple(
        EnumerationClass(key, graph_from_key(key), counts[key], auts[key])
        for key in sorted(counts)
    )


def enumerate_classes(model, order: int, external: int = 0, connectivity: str = ALL, *,
                      labeled_externals: bool = False, workers: int = 1) -> list[EnumerationClass]:
    """Isomorphism classes with their Wick multiplicities and automorphism counts.

    Returns an empty list (and logs why) when the sector is infeasible.
    """
    model = get_model(model)
    if connectivity not in (ALL, CONNECTED_ONLY):
        raise ValueError(f"connectivity must be {ALL} or {CONNECTED_ONLY}")
    if order < 1:
        raise ValueError("order must be at least 1")
    reason = feasibility(model, order, external)
    if reason:
        log.info("%s order %d, %d legs is empty: %s", model.name, order, external, reason)
        return []
    classes = _classes_cached(model.name, order, external, labeled_externals, max(1, workers))
    if connectivity == CONNECTED_ONLY:
        return [c for c in classes if c.connected]
    return list(classes)


# --------------------------------------------------------------------------
# count tables


@dataclass(frozen=True)
class CountRow:
    model: str
    order: int
    external: int
    connectivity: str
    total_pairings: int
    classes: int
    connected_classes: int
    colorable_classes: int | None
    tadpole_free_classes: int

    FIELDS = ("model", "order", "external", "connectivity", "total_pairings", "classes",
              "connected_classes", "colorable_classes", "tadpole_free_classes")

    def as_tuple(self):
        return tuple(getattr(self, f) for f in self.FIELDS)


@dataclass(frozen=True)
class CountTable:
    rows: tuple[CountRow, ...]

    def to_tsv(self) -> str:
        lines = ["\t".join(CountRow.FIELDS)]
        for r in self.rows:
            lines.append("\t".join("NA" if x is None else str(x) for x in r.as_tuple()))
        return "\n".join(lines) + "\n"


def count_row(model, order: int, external: int, *, cap: int = DEFAULT_CAP,
              workers: int = 1) -> CountRow:
    from .classify import is_colorable, is_tadpole

    model = get_model(model)
    total = pairing_count(model, order, external)
    if total > cap:
        raise ResourceCapExceeded(
            f"{model.name} order {order}, {external} legs: {total} pairings exceed cap {cap}")
    classes = enumerate_classes(model, order, external, workers=workers)
    if sum(c.multiplicity for c in classes) != total:
        raise AssertionError("class multiplicities do not add up to the pairing count")
    colorable = None
    if model.dimension == 3:
        colorable = sum(1 for c in classes if is_colorable(c.representative))
    return CountRow(
        model=model.name, order=order, external=external, connectivity=ALL,
        total_pairings=total, classes=len(classes),
        connected_classes=sum(1 for c in classes if c.connected),
        colorable_classes=colorable,
        tadpole_free_classes=sum(1 for c in classes if not is_tadpole(c.representative)),
    )


def count_table(model, max_order: int, externals: Sequence[int] = (0, 2), *,
                cap: int = DEFAULT_CAP, workers: int = 1, cache=None) -> CountTable:
    """Vacuum and 2-point counts for orders 1..max_order.

    ``cache`` is an optional CountCache consulted before enumerating.
    """
    model = get_model(model)
    rows = []
    for order in range(1, max_order + 1):
        for k in externals:
            row = cache.get(model.name, order, k, ALL) if cache is not None else None
            if row is None:
                row = count_row(model, order, k, cap=cap, workers=workers)
                if cache is not None:
                    cache.put(row)
            rows.append(row)
    return CountTable(tuple(rows))
