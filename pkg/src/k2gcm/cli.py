"""Command-line front end.

    k2gcm classify  <matrix|@file> [--machine]
    k2gcm k2        <matrix|@file> [--trace] [--machine] [--strict]
    k2gcm conjecture <matrix|@file> [--machine]
    k2gcm enumerate --rank 2 --bound B | --rank 3 [--machine]
    k2gcm verify-tables [--section 7|8|all] [--machine]

Exit codes: 0 success, 1 parse/validation/usage error, 2 unresolved with
``--strict``, 3 a table entry failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .catalog import (enumerate_rank2_hyperbolic, enumerate_rank3_hyperbolic, entries_for,
                      partition_lines, rank3_partition, verify_catalog)
from .conjecture import ConjectureReport, conjecture_check
from .factors import FactorKind, K2Factor, render_factors
from .gcm import Gcm, classify
from .k2engine import K2Result, k2
from .presentation import GenPresentation, Link, SlotKind, Torsion
from .textio import ParseError, ValidationError, format_matrix, parse_matrix

EXIT_OK, EXIT_INPUT, EXIT_UNRESOLVED, EXIT_TABLE = 0, 1, 2, 3


# ------------------------------------------------------------ documents

def factor_record(f: K2Factor) -> Dict[str, Any]:
    return {"kind": f.kind.value, "r": f.r}


def factor_from_record(d: Dict[str, Any]) -> K2Factor:
    return K2Factor(FactorKind(d["kind"]), int(d["r"]))


def residual_record(p: GenPresentation) -> Dict[str, Any]:
    return {"slots": [s.value for s in p.slots],
            "labels": list(p.labels),
            "links": [[x.i, x.p, x.j, x.q] for x in p.links],
            "torsions": [[t.i, t.p, t.m] for t in p.torsions]}


def residual_from_record(d: Dict[str, Any]) -> GenPresentation:
    return GenPresentation(tuple(SlotKind(s) for s in d["slots"]),
                           tuple(Link(*x) for x in d["links"]),
                           tuple(Torsion(*t) for t in d["torsions"]),
                           tuple(d["labels"]))


@dataclass
class ResultDocument:
    input: List[List[int]]
    classes: List[Dict[str, Any]]
    factors: Optional[List[Dict[str, Any]]] = None
    residual: Optional[Dict[str, Any]] = None
    trace: List[Dict[str, Any]] = field(default_factory=list)
    verdict: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.factors is not None

    def to_json(self) -> str:
        return json.dumps({"input": self.input, "class": self.classes,
                           "factors": self.factors, "residual": self.residual,
                           "trace": self.trace, "verdict": self.verdict,
                           "notes": self.notes}, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        d = json.loads(text)
        return cls(d["input"], d["class"], d["factors"], d["residual"], d["trace"],
                   d["verdict"], d.get("notes", []))


def class_records(g: Gcm) -> List[Dict[str, Any]]:
    return [{"block": [i + 1 for i in block], "type": cls.kind.value,
             "hyperbolic": cls.hyperbolic}
            for block, cls in classify(g)]


def build_document(g: Gcm, result: Optional[K2Result] = None,
                   report: Optional[ConjectureReport] = None) -> ResultDocument:
    if result is None:
        result = report.pipeline if report is not None else k2(g)
    doc = ResultDocument(
        input=[list(r) for r in g.entries],
        classes=class_records(g),
        factors=None if result.factors is None else [factor_record(f) for f in result.factors],
        residual=None if result.residual is None or result.resolved
        else residual_record(result.residual),
        trace=[{"rule": s.rule, "citation": s.citation, "detail": s.detail, "depth": s.depth}
               for s in result.trace],
        notes=list(result.notes),
    )
    if report is not None:
        pred = report.prediction
        doc.verdict = {
            "outcome": report.verdict.value,
            "predicted": None if pred.factors is None
            else [factor_record(f) for f in pred.factors],
            "checks": dict(report.checks),
            "transform": pred.transform_disclosure(),
            "reason": report.reason,
        }
    return doc


def _class_line(c: Dict[str, Any]) -> str:
    kind = c["type"] + (" (hyperbolic)" if c["hyperbolic"] else "")
    return f"block {c['block']}: {kind}"


def render(doc: ResultDocument, mode: str = "human", trace: bool = False) -> str:
    if mode == "machine":
        return doc.to_json()
    lines = []
    if doc.factors is not None:
        lines.append(render_factors([factor_from_record(f) for f in doc.factors]))
    else:
        lines.append("unresolved")
        if doc.residual is not None:
            r = doc.residual
            lines.append(f"  residual slots {r['slots']} (columns {[i + 1 for i in r['labels']]})")
            lines.extend(f"  link {x}" for x in r["links"])
            lines.extend(f"  torsion {t}" for t in r["torsions"])
    lines.extend(f"  note: {n}" for n in doc.notes)
    if trace:
        for s in doc.trace:
            detail = f": {s['detail']}" if s["detail"] else ""
            lines.append("  " * (s["depth"] + 1) + f"{s['rule']} [{s['citation']}]{detail}")
    if doc.verdict is not None:
        v = doc.verdict
        pred = "unresolved" if v["predicted"] is None else \
            render_factors([factor_from_record(f) for f in v["predicted"]])
        lines.append(f"conjecture: {v['outcome']}")
        lines.append(f"  predicted: {pred}")
        if v["reason"]:
            lines.append(f"  reason: {v['reason']}")
        for name, ok in v["checks"].items():
            lines.append(f"  check {name}: {'ok' if ok else 'FAILED'}")
        lines.append(f"  transform: {v['transform']}")
    return "\n".join(lines)


# -------------------------------------------------------------- commands

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_matrix_arg(arg: str) -> Gcm:
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                arg = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {arg[1:]}: {exc.strerror}") from exc
    return parse_matrix(arg)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_classify(args) -> int:
    g = read_matrix_arg(args.matrix)
    doc = ResultDocument(input=[list(r) for r in g.entries], classes=class_records(g))
    if args.machine:
        _emit(doc.to_json())
    else:
        _emit(format_matrix(g))
        for c in doc.classes:
            _emit(_class_line(c))
    return EXIT_OK


def cmd_k2(args) -> int:
    g = read_matrix_arg(args.matrix)
    doc = build_document(g)
    _emit(render(doc, "machine" if args.machine else "human", trace=args.trace))
    if args.strict and not doc.resolved:
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_conjecture(args) -> int:
    g = read_matrix_arg(args.matrix)
    doc = build_document(g, report=conjecture_check(g))
    _emit(render(doc, "machine" if args.machine else "human"))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.rank == 2:
        if args.bound is None:
            raise UsageError("--rank 2 needs --bound")
        if args.bound < 1:
            raise UsageError("--bound must be positive")
        mats = enumerate_rank2_hyperbolic(args.bound)
        part = None
    else:
        mats = list(enumerate_rank3_hyperbolic())
        part = rank3_partition(mats)
    if args.machine:
        out: Dict[str, Any] = {"rank": args.rank, "count": len(mats),
                               "matrices": [[list(r) for r in g.entries] for g in mats]}
        if part is not None:
            out["partition"] = {k: part[k] for k in
                                ("counts", "claimed", "lone-minus-one-ignoring-exception")}
            out["partition"]["mismatches"] = {k: list(v) for k, v in part["mismatches"].items()}
        _emit(json.dumps(out))
    else:
        for g in mats:
            _emit(format_matrix(g))
        _emit(f"count: {len(mats)}")
        if part is not None:
            for line in partition_lines(part):
                _emit(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_catalog(entries_for(args.section))
    if args.machine:
        recs = [{"id": r.entry.id, "source": r.entry.source, "passed": r.passed,
                 "got": None if r.got is None else [factor_record(f) for f in r.got],
                 "expected": [factor_record(f) for f in r.entry.expected]}
                for r in report.records]
        _emit(json.dumps({"section": args.section, "records": recs,
                          "passed": sum(r.passed for r in report.records),
                          "total": len(report.records)}))
    else:
        for line in report.lines():
            _emit(line)
    return EXIT_OK if report.all_passed else EXIT_TABLE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k2gcm", description="symbolic K_2(A,F) from a generalized Cartan matrix")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("matrix", help="matrix text such as '2 -1; -1 2', or @path")
        sp.add_argument("--machine", action="store_true", help="JSON output")
        sp.set_defaults(func=func)
        return sp

    matrix_cmd("classify", cmd_classify, "Cartan type of each block")
    sp = matrix_cmd("k2", cmd_k2, "compute K_2(A,F)")
    sp.add_argument("--trace", action="store_true", help="show the derivation")
    sp.add_argument("--strict", action="store_true", help="exit 2 when unresolved")
    matrix_cmd("conjecture", cmd_conjecture, "compare the parity-typed prediction")

    sp = sub.add_parser("enumerate", help="list low-rank hyperbolic GCMs")
    sp.add_argument("--rank", type=int, choices=(2, 3), required=True)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--machine", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify-tables", help="check the shipped tables against the rules")
    sp.add_argument("--section", choices=("7", "8", "all"), default="all")
    sp.add_argument("--machine", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (ParseError, ValidationError, UsageError) as exc:
        sys.stderr.write(f"k2gcm: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
