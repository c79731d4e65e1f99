"""Command-line entry point.

Exit codes: 0 success / true, 1 error, 2 a domain-negative answer (criterion
fails, not a member, suite found a counterexample).
"""
from __future__ import annotations

import argparse
import json
import sys

from .core import SetFamily, elements, fmt_set, from_elements, ground_cap
from .errors import CriterionFails, OshError
from .io import dumps_family, load_family, parse_family
from .shatter import osh_direct, sh_all, st_all
from .shift import osh_via_shift, shift_full
from .sperner import construct_sperner_witness, criterion_sum
from .suites import SUITES, replay, run_suite
from .twolevel import (
    TwoLevelParams,
    dominating_minimal,
    minimal_sets,
    osh_consecutive_levels,
    t_min,
)

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_set(text: str) -> int:
    text = text.strip().strip("{}")
    if not text:
        return 0
    try:
        return from_elements(int(tok) for tok in text.split(","))
    except ValueError:
        raise OshError(f"bad set {text!r}; expected a comma list like 2,3,5") from None


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_text(f: SetFamily, args) -> str:
    if args.format == "tsv":
        return "".join(fmt_set(m) + "\n" for m in f.members)
    return dumps_family(f, bitmask=args.bitmask)


def _read_family(path: str) -> SetFamily:
    if path == "-":
        return parse_family(sys.stdin.read())
    return load_family(path)


# -- commands -------------------------------------------------------------

def cmd_closures(args) -> int:
    f = _read_family(args.family)
    cap = args.max_ground
    which = {
        "sh": lambda: sh_all(f, cap),
        "st": lambda: st_all(f, cap),
        "osh-direct": lambda: osh_direct(f, cap),
        "osh-shift": lambda: osh_via_shift(f),
    }[args.which]
    _emit(_family_text(which(), args), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(
        args.suite, n=args.n, n_min=args.n_min, n_max=args.n_max,
        trials=args.trials, seed=args.seed, exhaustive=args.exhaustive,
        ell_max=args.ell_max,
    )
    if args.format == "json":
        text = json.dumps(report.to_dict(), separators=(",", ":")) + "\n"
    else:
        verdict = "PASS" if report.ok else "FAIL"
        lines = [f"{verdict}\t{report.suite}\tpassed={report.passed}\tfailed={report.failed}"
                 f"\ttime={report.wall_time:.2f}s"]
        if report.counterexample is not None:
            lines.append("counterexample\t" + json.dumps(report.counterexample, separators=(",", ":")))
            lines.append(f"replay reproduces failure\t{replay(report)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_sperner(args) -> int:
    a = parse_set(args.set)
    total = criterion_sum(a)
    if args.action == "criterion":
        holds = total < args.ell
        verdict = "criterion holds" if holds else "criterion fails"
        rel = "<" if holds else ">="
        _emit(f"sum = {total} {rel} {args.ell}: {verdict}\n", args.output)
        return EXIT_OK if holds else EXIT_NEGATIVE
    try:
        w = construct_sperner_witness(a, args.ell, max_ground=args.max_ground)
    except CriterionFails as exc:
        print(f"sum = {exc.total} >= {exc.ell}: criterion fails, no witness", file=sys.stderr)
        return EXIT_NEGATIVE
    ok = w.check()
    print(f"target {fmt_set(a)}  ell={w.ell}  n={w.n}  |family|={len(w.family)}  "
          f"verified={'yes' if ok else 'NO'}", file=sys.stderr)
    _emit(_family_text(w.family, args), args.output)
    return EXIT_OK if ok else EXIT_ERROR


def cmd_twolevel(args) -> int:
    if args.action == "consecutive":
        f = osh_consecutive_levels(args.n, args.k, args.ell, max_ground=args.max_ground)
        _emit(_family_text(f, args), args.output)
        return EXIT_OK
    p = TwoLevelParams(args.n, args.a, args.d)
    if args.action == "minimal":
        rows = []
        for ms in minimal_sets(p):
            s = ms.realize()
            rows.append({"set": elements(s), "kind": ms.kind, "label": ms.label(), "t_min": t_min(s)})
        if args.format == "json":
            text = json.dumps(rows, separators=(",", ":"), ensure_ascii=False) + "\n"
        else:
            text = "".join(
                f"{fmt_set(from_elements(r['set']))}\t{r['kind']}\t{r['label']}\tt_min={r['t_min']}\n"
                for r in rows
            )
        _emit(text, args.output)
        return EXIT_OK
    s = parse_set(args.set)
    hit = dominating_minimal(s, p)
    if args.format == "json":
        obj = {"member": hit is not None}
        if hit is not None:
            obj.update(via=elements(hit.realize()), kind=hit.kind, label=hit.label())
        text = json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"
    else:
        text = "false\n" if hit is None else f"true via {fmt_set(hit.realize())}\n"
    _emit(text, args.output)
    return EXIT_NEGATIVE if hit is None else EXIT_OK


def cmd_shift(args) -> int:
    f = _read_family(args.family)
    trace = shift_full(f)
    if args.format == "tsv":
        text = "".join(
            f"{h}\t" + " ".join(fmt_set(m) for m in st.members) + "\n"
            for h, st in enumerate(trace.stages)
        )
    else:
        text = "".join(dumps_family(st, bitmask=args.bitmask) for st in trace.stages)
    _emit(text, args.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-ground", type=int, default=None,
                        help="enumeration cap on n (default: $OSHLAB_MAX_GROUND or 24)")
    common.add_argument("--format", choices=("json", "tsv"), default=None)
    common.add_argument("--bitmask", action="store_true", help="emit integer masks")
    common.add_argument("-o", "--output", default=None, help="write to this path")

    parser = _Parser(prog="oshlab", description="order shattering toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("closures", parents=[common], help="sh / st / osh of a family")
    p.add_argument("family", help="family JSON path, or - for stdin")
    p.add_argument("--which", choices=("sh", "st", "osh-direct", "osh-shift"), default="osh-direct")
    p.set_defaults(func=cmd_closures, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=int)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--ell-max", type=int)
    p.set_defaults(func=cmd_verify, default_format="tsv")

    p = sub.add_parser("sperner", parents=[common], help="l-Sperner criterion and witnesses")
    p.add_argument("action", choices=("criterion", "construct"))
    p.add_argument("--set", required=True, help="comma list, e.g. 2,3")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_sperner, default_format="json")

    p = sub.add_parser("twolevel", parents=[common], help="complete-level closed forms")
    p.add_argument("action", choices=("minimal", "member", "consecutive"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--set")
    p.set_defaults(func=cmd_twolevel, default_format="tsv")

    p = sub.add_parser("shift", parents=[common], help="down-shift stages")
    p.add_argument("action", choices=("trace",))
    p.add_argument("family", help="family JSON path, or - for stdin")
    p.set_defaults(func=cmd_shift, default_format="json")
    return parser


def _check_required(parser, args) -> None:
    if args.command == "twolevel":
        need = {"minimal": ("a", "d"), "member": ("a", "d", "set"), "consecutive": ("k", "ell")}
        missing = [k for k in need[args.action] if getattr(args, k) is None]
        if missing:
            parser.error(f"twolevel {args.action} needs " + ", ".join("--" + m for m in missing))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_required(parser, args)
    if args.format is None:
        args.format = args.default_format
    if args.max_ground is not None:
        args.max_ground = ground_cap(args.max_ground)
    try:
        return args.func(args)
    except OshError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
