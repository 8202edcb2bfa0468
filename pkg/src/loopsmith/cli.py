"""Command-line interface.

Exit codes: 0 success or a positive answer, 1 a negative answer (not
isomorphic, no witness, nothing found), 2 an error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import gf
from .errors import LoopError
from .iso import DEFAULT_QA_CEILING, are_isomorphic, classify_qa
from .loop import FiniteLoop, parse_table, read_table, write_table
from .qa import QAParams, qa_loop
from .report import dumps, structure_report
from .search import SearchConstraints, find_loops

EVIDENCE_FROM = 7
DEFAULT_BUDGET = 600.0


def default_budget() -> float:
    raw = os.environ.get("LOOPSMITH_BUDGET_SECONDS")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError:
        raise LoopError(f"LOOPSMITH_BUDGET_SECONDS is not a number: {raw!r}") from None


def _load(path: str) -> FiniteLoop:
    if path == "-":
        return parse_table(sys.stdin.read())
    return read_table(path)


def _emit(args, payload, text: str) -> None:
    print(dumps(payload) if args.json else text)


def _report_text(rep: dict) -> str:
    lines = [f"order {rep['order']}"]
    for key in ("commutative", "power_associative", "automorphic", "exponent"):
        lines.append(f"{key}: {rep[key]}")
    for kind, s in rep["nuclei"].items():
        lines.append(f"nucleus {kind}: size {len(s)}")
    lines.append(f"commutant: size {len(rep['commutant'])}")
    lines.append(f"center: {rep['center']}")
    lines.append(f"upper central series sizes: {rep['upper_central_series']['sizes']}")
    lines.append(f"nilpotency class: {rep['nilpotency_class']}")
    if "mlt_order" in rep:
        lines.append(f"|Mlt|: {rep['mlt_order']}")
    if "bruck" in rep:
        lines.append("bruck: " + ", ".join(f"{k}={v}" for k, v in sorted(rep["bruck"].items())))
    return "\n".join(lines)


def cmd_qa(args) -> int:
    params = QAParams(args.p, gf.Mat2.parse(args.matrix, args.p))
    Q = qa_loop(params)
    if args.out:
        write_table(Q, args.out, comment=f"Q(A) p={args.p} A={params.A.format()}")
    rep = structure_report(Q, mlt=args.mlt)
    _emit(args, rep, _report_text(rep))
    return 0


def cmd_analyze(args) -> int:
    rep = structure_report(_load(args.table), mlt=args.mlt)
    _emit(args, rep, _report_text(rep))
    return 0


def cmd_iso(args) -> int:
    Q1, Q2 = _load(args.a), _load(args.b)
    f = are_isomorphic(Q1, Q2)
    if f is None:
        _emit(args, {"isomorphic": False}, "not-isomorphic")
        return 1
    # the witness is always printed as JSON, in text mode too
    print(dumps({"isomorphic": True, "witness": list(f.images)}))
    return 0


def cmd_classify(args) -> int:
    p = gf.check_prime(args.p)
    ceiling = args.ceiling if args.ceiling is not None else DEFAULT_QA_CEILING
    classes = classify_qa(p, ceiling=ceiling)
    status = "evidence" if p >= EVIDENCE_FROM else "exhaustive"
    payload = {"p": p, "status": status, "count": len(classes),
               "types": sorted({c.plane_type for c in classes}),
               "classes": [c.as_dict() for c in classes]}
    lines = [f"p = {p}: {len(classes)} isomorphism classes ({status})"]
    lines += [f"  type {c.plane_type}: representative {c.representative.format()}, "
              f"{len(c.members)} matrices" for c in classes]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_search(args) -> int:
    budget = args.budget if args.budget is not None else default_budget()
    c = SearchConstraints(order=args.order, commutative=args.commutative,
                          automorphic=args.automorphic, power_associative=args.power_associative,
                          nonassociative=args.nonassociative, exponent=args.exponent,
                          trivial_center=args.trivial_center,
                          nontrivial_center=args.nontrivial_center,
                          time_budget=budget, seed=args.seed, check_every=args.check_every)
    limit = None if args.limit == 0 else args.limit
    result = find_loops(c, limit=limit, jobs=args.jobs)
    files = []
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, Q in enumerate(result.loops):
            path = out / f"loop-{args.order}-{i}.tbl"
            write_table(Q, path, comment=f"search order={args.order} seed={args.seed} index={i}")
            files.append(str(path))
    payload = {"status": result.status, "found": len(result.loops), "complete": result.complete,
               "budget_exhausted": result.budget_exhausted, "nodes": result.nodes,
               "elapsed_seconds": round(result.elapsed, 3), "files": files}
    text = (f"{result.status}: {len(result.loops)} loop(s), {result.nodes} nodes, "
            f"{result.elapsed:.1f}s" + ("" if not files else "\n" + "\n".join(files)))
    _emit(args, payload, text)
    return 0 if result.loops else 1


def cmd_witness(args) -> int:
    p = gf.check_prime(args.p)
    A = gf.type_witness(p, args.type)
    if A is None:
        _emit(args, {"p": p, "type": args.type, "exists": False}, "not exists")
        return 1
    _emit(args, {"p": p, "type": args.type, "exists": True, "matrix": A.format()}, A.format())
    return 0


def cmd_perron(args) -> int:
    p = gf.check_prime(args.p)
    rows = [{"a": a, "residue": gf.is_residue(a, p), "counts": list(gf.perron_counts(p, a))}
            for a in range(1, p)]
    payload = {"p": p, "rows": rows}
    ok = True
    if p != 2:
        expected = list(gf.perron_closed_form(p))
        payload["closed_form"] = expected
        ok = all(r["counts"] == expected for r in rows)
        payload["matches_closed_form"] = ok
    lines = [f"a={r['a']:>3} {'R' if r['residue'] else 'N'} {tuple(r['counts'])}" for r in rows]
    if p != 2:
        lines.append(f"closed form {tuple(payload['closed_form'])}: {'match' if ok else 'MISMATCH'}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit key-sorted JSON")

    parser = argparse.ArgumentParser(prog="loopsmith", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qa", parents=[common], help="build Q(A) and report its structure")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matrix", required=True, help="entries a1,a2,a3,a4 of [[a1,a2],[a3,a4]]")
    p.add_argument("--out", help="write the Cayley table here")
    p.add_argument("--mlt", action="store_true", help="also compute |Mlt Q|")
    p.set_defaults(func=cmd_qa)

    p = sub.add_parser("analyze", parents=[common], help="structure report for a table file")
    p.add_argument("table", help="table file, or - for stdin")
    p.add_argument("--mlt", action="store_true", help="also compute |Mlt Q|")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test of two tables")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("classify-qa", parents=[common], help="isomorphism classes of Q(A) at p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ceiling", type=int, help=f"largest p allowed (default {DEFAULT_QA_CEILING})")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", parents=[common], help="search for loops with given properties")
    p.add_argument("--order", type=int, required=True)
    for flag in ("commutative", "automorphic", "power-associative", "nonassociative",
                 "trivial-center", "nontrivial-center"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("--exponent", type=int)
    p.add_argument("--limit", type=int, default=1, help="0 means no limit")
    p.add_argument("--budget", type=float, help="seconds (default: LOOPSMITH_BUDGET_SECONDS or 600)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check-every", type=int, default=27)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", help="directory for found tables")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("witness", parents=[common], help="anisotropic matrix of a given type")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--type", type=int, required=True, choices=(1, 2, 3))
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("perron", parents=[common], help="residue shift counts for all a")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_perron)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LoopError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
