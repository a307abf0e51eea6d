"""``fowlkit`` command line: check, gen, bench, scaling."""

from __future__ import annotations

import argparse
import json
import sys
import time

from ._deep import run_deep
from .bench import bench_run, scaling_check
from .errors import DegenerateTiming, FowlError
from .gen import resolve
from .langs import LANGUAGES, language
from .session import Session
from .terms import show

EXIT_OK, EXIT_REJECTED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _span(err: FowlError):
    return None if err.span is None else str(err.span)


def cmd_check(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE

    def run():
        t0 = time.perf_counter()
        with Session(language(args.lang)) as s:
            items = s.run(text)
            rendered = [(it.name, show(it.type.reify(0))) for it in items]
        return rendered, (time.perf_counter() - t0) * 1e3

    try:
        rendered, ms = run_deep(run)
    except FowlError as err:
        if args.json:
            print(json.dumps({"ok": False, "error": type(err).__name__,
                              "message": err.message, "span": _span(err)}))
        else:
            print(f"{args.file}:{err}", file=sys.stderr)
        return EXIT_REJECTED
    if args.json:
        out = {"ok": True, "language": args.lang,
               "items": [{"name": n, "type": t} for n, t in rendered]}
        if args.time:
            out["elapsed_ms"] = ms
        print(json.dumps(out))
    else:
        for name, ty in rendered:
            print(f"{name if name else '_'} : {ty}")
        if args.time:
            print(f"; elapsed {ms:.3f} ms")
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = resolve(args.bench, args.size)
    text = spec.generate(spec.size)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _report_text(r) -> str:
    ph = r.phases
    return (f"{r.name} (size {r.size}, {r.language}): mean {r.mean_ms:.2f} ms "
            f"± {r.stddev_ms:.2f} over {len(r.samples)} runs ({r.warmups} warm-up) | "
            f"read {ph['read_ms']:.2f} expand {ph['expand_ms']:.2f} "
            f"elaborate {ph['elaborate_ms']:.2f} | {r.node_count} nodes")


def cmd_bench(args) -> int:
    if args.reps < 3:
        print("error: --reps must be at least 3", file=sys.stderr)
        return EXIT_USAGE
    spec = resolve(args.bench, args.size)
    try:
        report = bench_run(spec, args.reps, args.warmups)
    except FowlError as err:
        print(f"{spec.name}: {err}", file=sys.stderr)
        return EXIT_REJECTED
    print(json.dumps(report.to_json()) if args.json else _report_text(report))
    return EXIT_OK


def cmd_scaling(args) -> int:
    small, large = resolve(args.small), resolve(args.large)
    if args.desk_scale and args.desk_scale != 1:
        small = small._replace(size=max(1, round(small.size / args.desk_scale)))
        large = large._replace(size=max(1, round(large.size / args.desk_scale)))
    if small.size <= 0 or large.size <= small.size:
        print("error: the large benchmark must be bigger than the small one", file=sys.stderr)
        return EXIT_USAGE
    a = bench_run(small, args.reps, args.warmups)
    b = bench_run(large, args.reps, args.warmups)
    try:
        res = scaling_check(a, b, large.size / small.size, args.max_exponent)
    except DegenerateTiming as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    out = {"small": a.to_json(), "large": b.to_json(), "size_ratio": res.size_ratio,
           "time_ratio": res.time_ratio, "exponent": res.exponent,
           "max_exponent": res.max_exponent, "passed": res.passed}
    if args.json:
        print(json.dumps(out))
    else:
        print(_report_text(a))
        print(_report_text(b))
        verdict = "PASS" if res.passed else "FAIL"
        print(f"{verdict}: exponent {res.exponent:.3f} (max {res.max_exponent}) "
              f"for size ratio {res.size_ratio:.2f}, time ratio {res.time_ratio:.3f}")
    return EXIT_OK if res.passed else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fowlkit", description="Elaborate fowl programs and run benchmarks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="elaborate a .fowl file")
    c.add_argument("file")
    c.add_argument("--lang", default="fowl", choices=list(LANGUAGES))
    c.add_argument("--json", action="store_true")
    c.add_argument("--time", action="store_true", help="report elapsed time")
    c.set_defaults(fn=cmd_check)

    g = sub.add_parser("gen", help="print a benchmark program")
    g.add_argument("bench", help="benchmark name, optionally name:SIZE")
    g.add_argument("--size", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(fn=cmd_gen)

    b = sub.add_parser("bench", help="time a benchmark")
    b.add_argument("bench")
    b.add_argument("--size", type=int)
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--warmups", type=int, default=3)
    b.add_argument("--json", action="store_true")
    b.set_defaults(fn=cmd_bench)

    s = sub.add_parser("scaling", help="fit the growth exponent between two benchmarks")
    s.add_argument("small")
    s.add_argument("large")
    s.add_argument("--max-exponent", type=float, default=1.35)
    s.add_argument("--reps", type=int, default=10)
    s.add_argument("--warmups", type=int, default=3)
    s.add_argument("--desk-scale", type=float, default=1.0,
                   help="divide both sizes by this factor")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_scaling)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
