"""Command-line interface: ``sunalg {tensors,verify,simplify,eval} ...``.

Exit codes: 0 success, 1 a check or oracle comparison failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import basis, oracle, rewrite, verify
from .basis import format_float
from .expr import ParseError, parse, to_text


def _n_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"N must be at least 2, got {n}")
    return n


def _n_range(text: str) -> list[int]:
    """'3', '2..5' or '2,3,5'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = _n_arg(lo), _n_arg(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [_n_arg(x) for x in text.split(",") if x.strip()]


def _n_list(text: str) -> list[int]:
    return _n_range(text) if text.strip() else []


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sunalg", description="SU(N) generator algebra toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tensors", help="write the f and d tensors for one N")
    t.add_argument("--n", type=_n_arg, required=True)
    t.add_argument("--out", default="-", help="output path ('-' for stdout)")
    t.add_argument("--format", choices=["text", "json"], default="text")

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--n", type=_n_range, required=True, help="N, a list '2,3' or a range '2..5'")
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--budget", type=int, default=20000, help="sampled quadruples for N >= 4")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.add_argument("--only", default=None, help="comma-separated check ids")

    s = sub.add_parser("simplify", help="normal form of an expression")
    s.add_argument("expr")
    s.add_argument("--check-n", type=_n_list, default=[], help="oracle cross-check at these N, e.g. 2,3,4,5")
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trace", action="store_true", help="log rule applications to stderr")
    s.add_argument("--n3", action="store_true", help="enable rules valid only for N = 3")
    s.add_argument("--json", action="store_true")

    e = sub.add_parser("eval", help="numeric value at a concrete N")
    e.add_argument("expr")
    e.add_argument("assignments", nargs="*", metavar="index=value")
    e.add_argument("--n", type=_n_arg, required=True)
    e.add_argument("--json", action="store_true")
    return p


def cmd_tensors(args) -> int:
    _, f, d = basis.tensors_for(args.n)
    text = basis.format_tensors(f, d) if args.format == "text" else basis.tensors_to_json(f, d) + "\n"
    try:
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    counts = f"N={args.n}: {len(f.entries)} f-entries, {len(d.entries)} d-entries"
    print(counts, file=sys.stderr if args.out == "-" else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    if args.budget < 1 or not args.tol > 0:
        print("error: --budget must be >= 1 and --tol > 0", file=sys.stderr)
        return 2
    ids = None
    if args.only:
        ids = {x.strip() for x in args.only.split(",")}
        unknown = ids - set(verify.REGISTRY)
        if unknown:
            print(f"error: unknown check ids {sorted(unknown)}", file=sys.stderr)
            return 2
    reports = [verify.run_suite(n, args.tol, args.budget, args.seed, ids) for n in args.n]
    if args.json:
        docs = [json.loads(r.to_json()) for r in reports]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=1))
    else:
        sys.stdout.write("\n".join(r.to_text() for r in reports))
    return 0 if all(r.ok for r in reports) else 1


def cmd_simplify(args) -> int:
    try:
        e = parse(args.expr)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.n3:
        if not args.check_n:
            args.check_n = [3]
        if set(args.check_n) - {3}:
            print("error: --n3 rules hold only for N = 3; use --check-n 3", file=sys.stderr)
            return 2
    log = [] if args.trace else None
    out = rewrite.simplify(e, su3_rules=args.n3, log=log)
    if log is not None:
        for app in log:
            print(app, file=sys.stderr)
    text = to_text(out)
    verdict = None
    if args.check_n:
        verdict = oracle.equal_by_sampling(e, out, args.check_n, args.samples, seed=args.seed)
    if args.json:
        doc = {"input": args.expr, "normal_form": text}
        if verdict is not None:
            doc["check"] = {"n": args.check_n, "equal": verdict.equal,
                            "worst_residual": verdict.worst_residual, "witness": verdict.witness}
        print(json.dumps(doc, indent=1))
    else:
        print(text)
        if verdict is not None:
            ns = ",".join(map(str, args.check_n))
            word = "equal" if verdict.equal else "NOT equal"
            print(f"check: {word} at N={ns} (worst residual {verdict.worst_residual:.3g})")
    if verdict is not None and not verdict.equal:
        print(f"error: oracle disagreement, witness {verdict.witness}", file=sys.stderr)
        return 1
    return 0


def cmd_eval(args) -> int:
    assign = {}
    for item in args.assignments:
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            print(f"error: expected index=value, got {item!r}", file=sys.stderr)
            return 2
        assign[name.strip()] = int(value)
    try:
        value = oracle.eval(args.expr, args.n, assign)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, IndexError, ValueError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"re": value.real, "im": value.imag}))
    else:
        print(f"{format_float(value.real)} {format_float(value.imag)}")
    return 0


COMMANDS = {"tensors": cmd_tensors, "verify": cmd_verify, "simplify": cmd_simplify, "eval": cmd_eval}


def main(argv=None) -> int:
    parser = build_parser()
    # index=value pairs may follow options, which argparse will not interleave
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.command != "eval" or any(x.startswith("-") for x in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.assignments = list(args.assignments) + extra
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
