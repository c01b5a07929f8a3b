"""Command line interface.

Exit codes: 0 success, 1 usage or input error, 2 a verified claim did not
pass, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classify import classify
from .core import GraphError
from .enumeration import (
    ALL,
    CONNECTED_ONLY,
    DEFAULT_CAP,
    InfeasibleError,
    ResourceCapExceeded,
    count_table,
    enumerate_classes,
    enumerate_pairings,
    pairing_count,
)
from .graphio import (
    RIBBON,
    STRAND,
    CountCache,
    GraphDocumentError,
    dumps,
    graph_to_doc,
    iter_documents,
    doc_to_graph,
    to_dot,
    write_graphs,
)
from .verify import CLAIMS, run_claim

EXIT_OK, EXIT_USAGE, EXIT_CLAIM, EXIT_CAP = 0, 1, 2, 3

MODEL_ALIASES = {"mo3d": "mo3d", "colored3d": "colored3d", "colored": "colored3d", "mo4d": "mo4d"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _legs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_enumerate(args) -> int:
    model = MODEL_ALIASES[args.model]
    total = pairing_count(model, args.order, args.external)
    if total > args.cap:
        raise ResourceCapExceeded(f"{total} pairings exceed cap {args.cap}")
    fh, own = _open_out(args.out)
    try:
        if args.classes:
            conn = CONNECTED_ONLY if args.connected else ALL
            classes = enumerate_classes(model, args.order, args.external, conn,
                                        labeled_externals=args.labeled_externals,
                                        workers=args.workers)
            docs = []
            for c in classes:
                doc = graph_to_doc(c.representative)
                doc["multiplicity"] = c.multiplicity
                doc["automorphisms"] = c.automorphisms
                docs.append(doc)
            n = write_graphs(docs, fh)
        else:
            graphs = enumerate_pairings(model, args.order, args.external,
                                        labeled_externals=args.labeled_externals)
            if args.connected:
                graphs = (g for g in graphs if g.is_connected())
            n = write_graphs(graphs, fh)
    finally:
        if own:
            fh.close()
    print(f"{n} graphs written", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    docs = []
    for lineno, doc in iter_documents(args.inp):
        try:
            g = doc_to_graph(doc)
        except GraphDocumentError as exc:
            raise GraphDocumentError(exc.message, line=lineno, path=exc.path) from None
        rec = classify(g)
        doc = dict(doc)
        doc["classification"] = rec.to_dict()
        if rec.topology is not None:
            doc["topology"] = rec.topology.to_dict()
        docs.append(doc)
    fh, own = _open_out(args.out)
    try:
        for doc in docs:
            fh.write(dumps(doc) + "\n")
    finally:
        if own:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_claim(args.claim, args.max_order, externals=args.externals,
                       max_order_4d=args.max_order_4d, workers=args.workers)
    sys.stdout.write(report.to_text())
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                     encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_CLAIM


def cmd_count(args) -> int:
    model = MODEL_ALIASES[args.model]
    cache = CountCache(args.cache) if args.cache else None
    table = count_table(model, args.max_order, args.externals, cap=args.cap,
                        workers=args.workers, cache=cache)
    text = table.to_tsv()
    fh, own = _open_out(args.out)
    try:
        fh.write(text)
    finally:
        if own:
            fh.close()
    if args.figure:
        from .plotting import plot_count_table

        plot_count_table(table, args.figure, title=f"{model} counts")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    n = 0
    for lineno, doc in iter_documents(args.inp):
        try:
            g = doc_to_graph(doc)
        except GraphDocumentError as exc:
            raise GraphDocumentError(exc.message, line=lineno, path=exc.path) from None
        (out / f"graph_{n:05d}.dot").write_text(to_dot(g, args.mode), encoding="utf-8")
        n += 1
    print(f"{n} DOT files written to {out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tensorgraphs", description=__doc__.splitlines()[0])
    p.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="write the labelled graphs or classes of a model")
    e.add_argument("--model", choices=sorted(MODEL_ALIASES), required=True)
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--external", type=int, default=0)
    e.add_argument("--connected", action="store_true")
    e.add_argument("--classes", action="store_true",
                   help="one line per isomorphism class, with multiplicity and automorphisms")
    e.add_argument("--labeled-externals", action="store_true")
    e.add_argument("--cap", type=int, default=DEFAULT_CAP)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("classify", help="annotate graph documents with their classification")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="exhaustively check the classification theorems")
    v.add_argument("--claim", choices=CLAIMS, required=True)
    v.add_argument("--max-order", type=int, required=True)
    v.add_argument("--max-order-4d", type=int, default=2)
    v.add_argument("--externals", type=_legs, default=(0, 2),
                   help="leg counts to scan, e.g. 0,2 or 0,2,4")
    v.add_argument("--report", help="write the machine-readable report here")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("count", help="pairing and class counts per order")
    n.add_argument("--model", choices=sorted(MODEL_ALIASES), required=True)
    n.add_argument("--max-order", type=int, required=True)
    n.add_argument("--externals", type=_legs, default=(0, 2))
    n.add_argument("--cache")
    n.add_argument("--cap", type=int, default=DEFAULT_CAP)
    n.add_argument("--out", default="-", help="tab-separated table")
    n.add_argument("--figure", help="also render the table to this image file")
    n.set_defaults(func=cmd_count)

    d = sub.add_parser("export-dot", help="render graph documents as DOT files")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--mode", choices=(RIBBON, STRAND), default=RIBBON)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphDocumentError, InfeasibleError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
