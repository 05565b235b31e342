"""Command line interface.

Subcommands:
  eval <file>      evaluate a script, print the report
  repl             interactive session
  check <suite>    run a named verification suite
  gallery <name>   print a gallery element

Exit codes: 0 success, 1 property/evaluation failure, 2 usage error.
GENNUM_DEPTH sets the default oracle depth.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import GennumError
from .evalctx import Env, Evaluator, SCHEMA
from .suites import SUITES, run_suite


def _default_depth() -> int:
    try:
        return max(8, int(os.environ.get("GENNUM_DEPTH", "64")))
    except ValueError:
        return 64


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gennum",
                                 description="exact generalized-number calculus")
    sub = ap.add_subparsers(dest="cmd")

    pe = sub.add_parser("eval", help="evaluate a script file")
    pe.add_argument("file")
    pe.add_argument("--json", action="store_true")
    pe.add_argument("--mode", choices=["R", "C"], default="R")
    pe.add_argument("--depth", type=int, default=_default_depth())
    pe.add_argument("--seed", type=int, default=0)

    pr = sub.add_parser("repl", help="interactive session")
    pr.add_argument("--mode", choices=["R", "C"], default="R")
    pr.add_argument("--depth", type=int, default=_default_depth())

    pc = sub.add_parser("check", help="run a verification suite")
    pc.add_argument("suite", help="suite name, or 'all'")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--depth", type=int, default=_default_depth())
    pc.add_argument("--size", type=int, default=None)
    pc.add_argument("--json", action="store_true")

    pg = sub.add_parser("gallery", help="print a gallery element")
    pg.add_argument("name")
    pg.add_argument("--json", action="store_true")
    return ap


def _print_report(rep: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep, sort_keys=True, default=str))
        return
    for r in rep.get("reports", []):
        if "error" in r:
            print(f"! {r.get('query', '')}: {r['error']}: {r.get('message', '')}")
        else:
            print(f"{r.get('query', '')}")
            print(f"  => {json.dumps(r.get('result'), sort_keys=True, default=str)}")
            for k in sorted(r):
                if k not in ("query", "verb", "result"):
                    print(f"  {k}: {r[k]}")


def cmd_eval(args) -> int:
    try:
        text = open(args.file).read()
    except OSError as e:
        print(f"cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    ev = Evaluator(Env(mode=args.mode, depth=args.depth, seed=args.seed))
    rep = ev.run_script(text)
    _print_report(rep, args.json)
    return 0 if rep["ok"] else 1


def cmd_repl(args) -> int:
    ev = Evaluator(Env(mode=args.mode, depth=args.depth))
    print(f"gennum repl (mode {args.mode}; :val, :in, :check ...; ctrl-d to exit)")
    while True:
        try:
            line = input("gennum> ")
        except EOFError:
            print()
            return 0
        except KeyboardInterrupt:
            print()
            return 0
        if not line.strip():
            continue
        if line.strip() in (":q", ":quit", ":exit"):
            return 0
        rep = ev.run_script(line)
        _print_report(rep, as_json=False)


def cmd_check(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    out = []
    for name in names:
        try:
            r = run_suite(name, seed=args.seed, depth=args.depth, size=args.size)
        except GennumError as e:
            print(f"{name}: {e}", file=sys.stderr)
            return 2
        out.append(r)
        failed = failed or not r["ok"]
        if not args.json:
            status = "PASS" if r["ok"] else "FAIL"
            print(f"{status} {name}: {r['checks']} checks, {r['failed']} failed")
            for f in r["failures"]:
                print(f"    {f}")
    if args.json:
        print(json.dumps({"schema": SCHEMA, "suites": out}, sort_keys=True,
                         default=str))
    return 1 if failed else 0


def cmd_gallery(args) -> int:
    ev = Evaluator(Env())
    rep = ev.run_script(f":gallery {args.name}")
    _print_report(rep, args.json)
    return 0 if rep["ok"] else 1


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if args.cmd is None:
        ap.print_help()
        return 2
    try:
        if args.cmd == "eval":
            return cmd_eval(args)
        if args.cmd == "repl":
            return cmd_repl(args)
        if args.cmd == "check":
            return cmd_check(args)
        if args.cmd == "gallery":
            return cmd_gallery(args)
    except GennumError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
