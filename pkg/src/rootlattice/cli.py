"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, fields
from typing import List, Optional, Sequence

from . import center, reduction, verify
from .rootsys import InadmissibleTypeError, TypeLabel, build
from .zlinalg import IntMatrix, snf

DEFAULT_RANK_CEILING = 64


class UsageError(Exception):
    pass


@dataclass
class DescribeRecord:
    type: str
    rank: int
    cartan: List[List[int]]
    root_count: int
    delta: List[int]
    delta_dual: List[int]
    delta_generators: List[str]
    delta_dual_generators: List[str]
    rho: List[List[int]]
    rho_class: str
    induced_pairing: List[List[str]]
    pi_r: List[int]
    pi_prime: List[int]
    components: List[dict]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "DescribeRecord":
        data = json.loads(text)
        return cls(**{f.name: data[f.name] for f in fields(cls)})


def parse_label(text: str, ceiling: int = DEFAULT_RANK_CEILING) -> TypeLabel:
    try:
        label = TypeLabel.parse(text)
    except InadmissibleTypeError as exc:
        raise UsageError(str(exc)) from None
    if label.rank > ceiling:
        raise UsageError(f"rank {label.rank} exceeds the ceiling {ceiling} (see --rank-ceiling)")
    return label


def describe(label: TypeLabel) -> DescribeRecord:
    R = build(label)
    D, Dv = center.weight_quotient(R), center.coweight_quotient(R)
    P = reduction.partition(R)
    return DescribeRecord(
        type=str(label),
        rank=R.rank,
        cartan=R.cartan.tolist(),
        root_count=len(R.roots),
        delta=list(D.orders),
        delta_dual=list(Dv.orders),
        delta_generators=list(D.names),
        delta_dual_generators=list(Dv.names),
        rho=center.rho(R).table(),
        rho_class=center.rho_kernel_class(R).kind,
        induced_pairing=center.induced_pairing(R).as_strings(),
        pi_r=[i + 1 for i in P.pi_r],
        pi_prime=[i + 1 for i in P.pi_prime],
        components=[
            {"nodes": [i + 1 for i in c.nodes], "type": str(c.label), "d": c.d}
            for c in P.components
        ],
    )


def _matrix_text(rows, indent="  ") -> str:
    if not rows:
        return indent + "(empty)"
    cells = [[str(x) for x in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    return "\n".join(indent + "[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def _group_text(orders, names) -> str:
    if not orders:
        return "0"
    return " + ".join(f"Z/{d}<{nm}>" for d, nm in zip(orders, names))


def describe_text(rec: DescribeRecord) -> str:
    comps = ", ".join(f"{c['type']} on {c['nodes']} (d={c['d']})" for c in rec.components) or "none"
    lines = [
        f"type: {rec.type}",
        f"rank: {rec.rank}",
        "cartan:",
        _matrix_text(rec.cartan),
        f"roots: {rec.root_count}",
        f"Delta: {_group_text(rec.delta, rec.delta_generators)}",
        f"Delta_dual: {_group_text(rec.delta_dual, rec.delta_dual_generators)}",
        f"rho ({rec.rho_class}):",
        _matrix_text(rec.rho),
        "pairing (Delta_dual x Delta_dual -> Q/Z):",
        _matrix_text(rec.induced_pairing),
        f"pi_r: {rec.pi_r}",
        f"pi_prime: {rec.pi_prime}",
        f"components: {comps}",
    ]
    return "\n".join(lines)


def pairing_record(label: TypeLabel) -> dict:
    R = build(label)
    table = center.induced_pairing(R)
    return {
        "type": str(label),
        "generators": list(table.left.names),
        "pairing": table.as_strings(),
    }


def pairing_text(rec: dict) -> str:
    gens = rec["generators"]
    if not gens:
        return f"{rec['type']}: Delta_dual = 0, empty pairing"
    width = max(max(len(g) for g in gens), max(len(v) for r in rec["pairing"] for v in r))
    head = " " * width + " | " + " ".join(g.rjust(width) for g in gens)
    lines = [f"{rec['type']}: rho pairing on Delta_dual", head, "-" * len(head)]
    for g, row in zip(gens, rec["pairing"]):
        lines.append(g.rjust(width) + " | " + " ".join(v.rjust(width) for v in row))
    return "\n".join(lines)


def _style(text: str, color: str, stream) -> str:
    if os.environ.get("NO_COLOR") is not None or not stream.isatty():
        return text
    code = {"green": "32", "red": "31"}[color]
    return f"\033[{code}m{text}\033[0m"


def verify_text(report: verify.VerifyReport, stream) -> str:
    lines = []
    for r in report.records:
        mark = _style("PASS", "green", stream) if r.verdict == "pass" else _style("FAIL", "red", stream)
        line = f"{mark} {r.type:<4} {r.check}"
        if r.witness and r.verdict != "pass":
            line += f"  -- {r.witness}"
        lines.append(line)
    overall = _style("PASS", "green", stream) if report.passed else _style("FAIL", "red", stream)
    lines.append(f"overall: {overall} ({report.types_checked} types, {len(report.records)} checks)")
    return "\n".join(lines)


def read_matrix_file(path: str) -> IntMatrix:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for m in re.finditer(r"\S+", line):
            col = m.start() + 1
            try:
                tokens.append((int(m.group()), lineno, col))
            except ValueError:
                raise UsageError(
                    f"{path}:{lineno}:{col}: expected an integer, got {m.group()!r}") from None
    if len(tokens) < 2:
        raise UsageError(f"{path}:1:1: expected a header 'rows cols'")
    (rows, _, _), (cols, l2, c2) = tokens[0], tokens[1]
    if rows < 1 or cols < 1:
        raise UsageError(f"{path}:1:1: matrix dimensions must be positive, got {rows}x{cols}")
    body = tokens[2:]
    if len(body) != rows * cols:
        where = body[-1][1:] if body else (l2, c2)
        raise UsageError(
            f"{path}:{where[0]}:{where[1]}: expected {rows * cols} entries, found {len(body)}")
    return IntMatrix(rows, cols, [t[0] for t in body])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootlattice",
        description="Exact root-system lattices, their centers and the rho pairing.")
    parser.add_argument("--rank-ceiling", type=int, default=DEFAULT_RANK_CEILING,
                        help="reject labels of higher rank (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="summarize a root system")
    p.add_argument("label", help="type label such as A5, D4, E7")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pairing", help="print the pairing induced by rho")
    p.add_argument("label")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--scope", choices=("all",) + verify.SCOPES, default="all")
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.add_argument("--inject-fault", choices=verify.FAULTS, default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("file", help="first line 'rows cols', then the entries")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = sys.stdout
    try:
        if args.command == "describe":
            rec = describe(parse_label(args.label, args.rank_ceiling))
            print(rec.to_json() if args.json else describe_text(rec), file=out)
            return 0
        if args.command == "pairing":
            rec = pairing_record(parse_label(args.label, args.rank_ceiling))
            print(json.dumps(rec, indent=2) if args.json else pairing_text(rec), file=out)
            return 0
        if args.command == "verify":
            if args.max_rank < 1:
                raise UsageError("--max-rank must be positive")
            if args.max_rank > args.rank_ceiling:
                raise UsageError(f"--max-rank {args.max_rank} exceeds the ceiling {args.rank_ceiling}")
            report = verify.run(args.scope, args.max_rank, fault=args.inject_fault)
            if args.json:
                print(json.dumps(report.to_dict(), indent=2), file=out)
            else:
                print(verify_text(report, out), file=out)
            return 0 if report.passed else 1
        if args.command == "snf":
            M = read_matrix_file(args.file)
            dec = snf(M)
            if args.json:
                print(json.dumps({"S": dec.S.tolist(), "U": dec.U.tolist(), "V": dec.V.tolist()},
                                 indent=2), file=out)
            else:
                for name, mat in (("S", dec.S), ("U", dec.U), ("V", dec.V)):
                    print(f"{name} =\n{_matrix_text(mat.tolist())}", file=out)
            return 0
    except UsageError as exc:
        print(f"rootlattice: error: {exc}", file=sys.stderr)
        return 2
    return 2  # pragma: no cover


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
