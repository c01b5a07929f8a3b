"""Exhaustive checks of the classification theorems over enumerated graphs.

Every predicate involved is invariant under relabelling, so scans run over
one representative per isomorphism class; the number of labelled graphs
covered is the sum of the class multiplicities.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import fixtures
from .classify import (
    GTadpolePlanarity,
    gtadpole_planarity,
    has_tadface,
    is_colorable,
    is_multi_orientable,
    is_tadpole,
)
from .core import StrandedGraph
from .enumeration import enumerate_classes

THEOREM = "theorem"
EXISTENCE = "existence"
CONJECTURE = "conjecture"

PASS = "pass"
FAIL = "fail"
UNCONFIRMED = "unconfirmed"

MAX_STORED = 10
DEFAULT_EXTERNALS = (0, 2)

Predicate = Callable[[StrandedGraph], bool]


@dataclass
class ClaimResult:
    claim: str
    statement: str
    kind: str
    max_order: int
    families: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0
    status: str = ""

    def __post_init__(self):
        if not self.status:
            self.settle()

    def settle(self):
        if self.kind == EXISTENCE:
            self.status = PASS if self.witnesses else UNCONFIRMED
        else:
            self.status = FAIL if self.counterexamples else PASS
        return self

    @property
    def graphs_scanned(self) -> int:
        return sum(f["graphs"] for f in self.families.values())

    @property
    def classes_scanned(self) -> int:
        return sum(f["classes"] for f in self.families.values())

    def to_dict(self, with_time: bool = True) -> dict:
        from .graphio import graph_to_doc

        out = {
            "claim": self.claim,
            "statement": self.statement,
            "kind": self.kind,
            "status": self.status,
            "max_order": self.max_order,
            "graphs_scanned": self.graphs_scanned,
            "classes_scanned": self.classes_scanned,
            "families": self.families,
            "counterexamples": [graph_to_doc(g) for g in self.counterexamples[:MAX_STORED]],
            "counterexample_count": len(self.counterexamples),
            "witnesses": [graph_to_doc(g) for g in self.witnesses[:MAX_STORED]],
            "notes": list(self.notes),
        }
        if with_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


@dataclass
class VerificationReport:
    claims: list[ClaimResult]
    table: list | None = None

    @property
    def passed(self) -> bool:
        """Theorems and existence claims all pass; conjectures are informational."""
        return all(c.status == PASS for c in self.claims if c.kind != CONJECTURE)

    @property
    def has_counterexample(self) -> bool:
        return any(c.status == FAIL for c in self.claims if c.kind != CONJECTURE)

    def __add__(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.claims + other.claims, self.table or other.table)

    def to_dict(self, with_time: bool = True) -> dict:
        out = {"passed": self.passed, "claims": [c.to_dict(with_time) for c in self.claims]}
        if self.table is not None:
            out["table"] = self.table
        return out

    def to_text(self) -> str:
        lines = []
        for c in self.claims:
            tag = c.status.upper()
            if c.kind == CONJECTURE:
                tag = f"{tag} (conjecture)"
            lines.append(f"[{tag}] {c.claim}: {c.statement}")
            lines.append(f"    orders 1..{c.max_order}; {c.classes_scanned} classes / "
                         f"{c.graphs_scanned} labelled graphs scanned; "
                         f"{len(c.counterexamples)} counterexamples, {len(c.witnesses)} witnesses; "
                         f"{c.wall_time:.2f}s")
            for note in c.notes:
                lines.append(f"    note: {note}")
        if self.table is not None:
            lines.append("")
            lines.append(render_table(self.table))
        return "\n".join(lines) + "\n"


def _scan(claim: ClaimResult, model: str, max_order: int, externals: Sequence[int],
          ok: Predicate, workers: int = 1, where: Predicate | None = None,
          tag: str = "") -> ClaimResult:
    """Run ``ok`` over every class (optionally only those satisfying ``where``)."""
    t0 = time.perf_counter()
    for order in range(1, max_order + 1):
        for k in externals:
            classes = enumerate_classes(model, order, k, workers=workers)
            if where is not None:
                classes = [c for c in classes if where(c.representative)]
            fam = f"{model}{tag} order={order} legs={k}"
            claim.families[fam] = {"classes": len(classes),
                                   "graphs": sum(c.multiplicity for c in classes)}
            for c in classes:
                if not ok(c.representative):
                    claim.counterexamples.append(c.representative)
    claim.wall_time += time.perf_counter() - t0
    return claim.settle()


def _search(claim: ClaimResult, model: str, max_order: int, externals: Sequence[int],
            want: Predicate, workers: int = 1) -> ClaimResult:
    """Stop at the smallest order where ``want`` holds for some class."""
    t0 = time.perf_counter()
    for order in range(1, max_order + 1):
        found = []
        for k in externals:
            classes = enumerate_classes(model, order, k, workers=workers)
            claim.families[f"{model} order={order} legs={k}"] = {
                "classes": len(classes), "graphs": sum(c.multiplicity for c in classes)}
            found.extend(c.representative for c in classes if want(c.representative))
        if found:
            claim.witnesses.extend(found[:1])
            claim.notes.append(f"{len(found)} witness classes at order {order}")
            break
    claim.wall_time += time.perf_counter() - t0
    return claim.settle()


def _nonplanar_gtadpole(g: StrandedGraph) -> bool:
    return gtadpole_planarity(g) is GTadpolePlanarity.NONPLANAR


def _planar_gtadpole(g: StrandedGraph) -> bool:
    return gtadpole_planarity(g) is GTadpolePlanarity.PLANAR


def verify_prop_4_1(max_order: int, externals=DEFAULT_EXTERNALS, *,
                    mo_predicate: Predicate = is_multi_orientable,
                    workers: int = 1) -> VerificationReport:
    """Every colored-model graph is multi-orientable."""
    claim = ClaimResult("prop4.1", "every colorable graph is generated by the MO action",
                        THEOREM, max_order)
    _scan(claim, "colored3d", max_order, externals, mo_predicate, workers)
    return VerificationReport([claim])


def verify_converse_fails(max_order: int = 3, externals=DEFAULT_EXTERNALS, *,
                          mo_predicate: Predicate = is_multi_orientable,
                          colorable_predicate: Predicate = is_colorable,
                          workers: int = 1) -> VerificationReport:
    """MO graphs that are not colorable: the planar tadpole, and a loop-free one by search."""
    tad = ClaimResult("converse.tadpole", "the planar tadpole is MO but not colorable",
                      EXISTENCE, 1)
    fig = fixtures.planar_tadpole()
    if mo_predicate(fig) and not colorable_predicate(fig) and is_tadpole(fig):
        tad.witnesses.append(fig)
    tad.settle()

    loopfree = ClaimResult("converse.loopfree",
                           "some loop-free graph is MO but not colorable", EXISTENCE, max_order)
    _search(loopfree, "mo3d", max_order, externals,
            lambda g: not is_tadpole(g) and mo_predicate(g) and not colorable_predicate(g),
            workers)
    return VerificationReport([tad, loopfree])


def verify_thm_4_1(max_order: int, externals=DEFAULT_EXTERNALS, *,
                   tadface_predicate: Predicate = has_tadface,
                   max_order_4d: int = 2, workers: int = 1) -> VerificationReport:
    """No MO graph has a tadface; plus the tadface fixture and the 4D analogue."""
    thm = ClaimResult("thm4.1", "MO graphs have no tadface", THEOREM, max_order)
    _scan(thm, "mo3d", max_order, externals, lambda g: not tadface_predicate(g), workers)

    fix = ClaimResult("thm4.1.fixture", "the tadface fixture has a tadface and is not MO",
                      THEOREM, 2)
    g = fixtures.tadface_graph()
    if not (tadface_predicate(g) and not is_multi_orientable(g)):
        fix.counterexamples.append(g)
    fix.settle()

    claims = [thm, fix]
    if max_order_4d > 0:
        four = ClaimResult("thm4.1.4d", "MO4D graphs have no tadface (4D extension)",
                           CONJECTURE, max_order_4d)
        _scan(four, "mo4d", max_order_4d, externals, lambda g: not tadface_predicate(g), workers)
        four.notes.append("vertex sign patterns transcribed from the two 4D interaction terms")
        claims.append(four)
    return VerificationReport(claims)


def _scan_colorable(claim, max_order, externals, ok, workers):
    """Colored-model graphs, then the MO graphs that admit a coloring."""
    _scan(claim, "colored3d", max_order, externals, ok, workers)
    return _scan(claim, "mo3d", max_order, externals, ok, workers, where=is_colorable,
                 tag="[colorable]")


def verify_cor_4_1_to_4_3(max_order: int, externals=DEFAULT_EXTERNALS, *,
                          tadface_predicate: Predicate = has_tadface,
                          nonplanar_predicate: Predicate = _nonplanar_gtadpole,
                          workers: int = 1) -> VerificationReport:
    c1 = ClaimResult("cor4.1", "colorable graphs have no tadface", THEOREM, max_order)
    _scan_colorable(c1, max_order, externals, lambda g: not tadface_predicate(g), workers)
    c2 = ClaimResult("cor4.2", "MO graphs contain no non-planar generalized tadpole",
                     THEOREM, max_order)
    _scan(c2, "mo3d", max_order, externals, lambda g: not nonplanar_predicate(g), workers)
    c3 = ClaimResult("cor4.3", "colorable graphs contain no non-planar generalized tadpole",
                     THEOREM, max_order)
    _scan_colorable(c3, max_order, externals, lambda g: not nonplanar_predicate(g), workers)
    return VerificationReport([c1, c2, c3])


TABLE_ROWS = (
    ("generalized planar tadpoles", _planar_gtadpole),
    ('generalized "non-planar" tadpoles', _nonplanar_gtadpole),
    ("tadfaces", has_tadface),
)
# expected verdict per (row, column)
TABLE_EXPECTED = {
    ("generalized planar tadpoles", "colorable"): "forbidden",
    ("generalized planar tadpoles", "MO"): "allowed",
    ('generalized "non-planar" tadpoles', "colorable"): "forbidden",
    ('generalized "non-planar" tadpoles', "MO"): "forbidden",
    ("tadfaces", "colorable"): "forbidden",
    ("tadfaces", "MO"): "forbidden",
}
COLUMNS = (("colorable", "colored3d"), ("MO", "mo3d"))


def comparison_table(max_order: int = 3, externals=DEFAULT_EXTERNALS, *,
                     workers: int = 1) -> VerificationReport:
    """Reproduce the allowed/forbidden table cell by cell."""
    claims, cells = [], []
    for row, pred in TABLE_ROWS:
        for col, model in COLUMNS:
            verdict = TABLE_EXPECTED[(row, col)]
            cid = f"table[{row}|{col}]"
            if verdict == "allowed":
                claim = ClaimResult(cid, f"{row} occur in the {col} model", EXISTENCE, max_order)
                fig = fixtures.planar_tadpole()
                if model == "mo3d" and is_multi_orientable(fig) and pred(fig):
                    claim.witnesses.append(fig)
                    claim.notes.append("witness: planar tadpole fixture")
                    claim.settle()
                else:
                    _search(claim, model, max_order, externals, pred, workers)
                observed = "allowed" if claim.status == PASS else "unconfirmed"
            else:
                claim = ClaimResult(cid, f"no {row} in the {col} model", THEOREM, max_order)
                ok = lambda g, p=pred: not p(g)  # noqa: E731
                if model == "colored3d":
                    _scan_colorable(claim, max_order, externals, ok, workers)
                else:
                    _scan(claim, model, max_order, externals, ok, workers)
                observed = "forbidden" if claim.status == PASS else "counterexample"
            claims.append(claim)
            cells.append({"row": row, "column": col, "expected": verdict, "observed": observed,
                          "evidence": (f"{len(claim.witnesses)} witness(es)" if verdict == "allowed"
                                       else f"{claim.graphs_scanned} graphs scanned")})
    return VerificationReport(claims, table=cells)


def render_table(cells: list) -> str:
    rows = []
    for row, _ in TABLE_ROWS:
        entries = {c["column"]: c for c in cells if c["row"] == row}
        rows.append((row, *(f'{entries[col]["observed"]} ({entries[col]["evidence"]})'
                            for col, _ in COLUMNS)))
    header = ("", *(col for col, _ in COLUMNS))
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    fmt = " | ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*header), "-+-".join("-" * w for w in widths)]
    out += [fmt.format(*r) for r in rows]
    return "\n".join(out)


CLAIMS = ("prop4.1", "converse", "thm4.1", "cor4.1", "cor4.2", "cor4.3", "table", "all")


def run_claim(claim: str, max_order: int, *, externals=DEFAULT_EXTERNALS,
              max_order_4d: int = 2, workers: int = 1) -> VerificationReport:
    kw = dict(externals=externals, workers=workers)
    if claim == "prop4.1":
        return verify_prop_4_1(max_order, **kw)
    if claim == "converse":
        return verify_converse_fails(max_order, **kw)
    if claim == "thm4.1":
        return verify_thm_4_1(max_order, max_order_4d=max_order_4d, **kw)
    if claim in ("cor4.1", "cor4.2", "cor4.3"):
        rep = verify_cor_4_1_to_4_3(max_order, **kw)
        return VerificationReport([c for c in rep.claims if c.claim == claim])
    if claim == "table":
        return comparison_table(max_order, **kw)
    if claim == "all":
        rep = verify_prop_4_1(max_order, **kw)
        rep += verify_converse_fails(max_order, **kw)
        rep += verify_thm_4_1(max_order, max_order_4d=max_order_4d, **kw)
        rep += verify_cor_4_1_to_4_3(max_order, **kw)
        rep += comparison_table(max_order, **kw)
        return rep
    raise ValueError(f"unknown claim {claim!r}; choose from {CLAIMS}")
