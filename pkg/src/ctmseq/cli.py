"""Command-line interface: ``ctmseq {match,gen,bench,oracle}``.

Inputs are bare whitespace-separated decimal integers. Exit status is 0 on
success (including "no matches"), 2 for usage or parse errors and 3 when the
brute-force oracle refuses an instance as too large.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import bench
from .cartesian import build_ct
from .exceptions import CTMSeqError, TooLarge
from .matcher import MatchConfig, solve
from .model import rank_encode
from .oracle import DEFAULT_BUDGET, oracle_solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOO_LARGE = 3

_INT64 = np.iinfo(np.int64)
_TOKEN = re.compile(r"\S+")
_INTEGER = re.compile(r"[+-]?\d+\Z")


class InputError(Exception):
    pass


def parse_integers(text: str, source: str = "<input>") -> list[int]:
    """Whitespace-separated decimal integers; errors name line and column."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        for tok in _TOKEN.finditer(line):
            word = tok.group()
            if not _INTEGER.match(word):
                raise InputError(f"{source}:{lineno}:{tok.start() + 1}: not an integer: {word!r}")
            value = int(word)
            if not _INT64.min <= value <= _INT64.max:
                raise InputError(f"{source}:{lineno}:{tok.start() + 1}: outside 64-bit range: {word}")
            out.append(value)
    if not out:
        raise InputError(f"{source}: no integers found")
    return out


def format_integers(values) -> str:
    return " ".join(str(int(v)) for v in values) + "\n"


def _read(path, inline, what):
    if inline is not None:
        return parse_integers(inline, f"--{what}-inline")
    if path is None:
        raise InputError(f"one of --{what} or --{what}-inline is required")
    if path == "-":
        return parse_integers(sys.stdin.read(), "<stdin>")
    try:
        data = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_integers(data, path)


def _add_inputs(p):
    p.add_argument("--text", metavar="FILE", help="text file ('-' for stdin)")
    p.add_argument("--text-inline", metavar="INTS", help="text given on the command line")
    p.add_argument("--pattern", metavar="FILE", help="pattern file")
    p.add_argument("--pattern-inline", metavar="INTS", help="pattern given on the command line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctmseq",
        description="Minimal occurrence intervals under Cartesian-tree subsequence matching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="report minimal occurrence intervals")
    _add_inputs(p)
    p.add_argument("--algo", choices=["basic", "veb", "bst"], default="veb")
    p.add_argument(
        "--hl",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="heavy-light traversal (default: on, off when --traces is given)",
    )
    p.add_argument("--traces", action="store_true", help="append one trace per interval")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.add_argument("--show-tree", action="store_true", help="print CT(pattern) to stderr")

    p = sub.add_parser("gen", help="write a random text and a pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--worst-case", type=int, metavar="K")
    p.add_argument("--even", action="store_true", help="length-2k worst-case form")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PREFIX")

    p = sub.add_parser("bench", help="time configurations, CSV on stdout")
    p.add_argument("--spec", metavar="FILE", help="key=value lines or a JSON object")
    p.add_argument("--n", help="comma-separated text lengths")
    p.add_argument("--m", help="comma-separated pattern lengths")
    p.add_argument("--algos", help="e.g. basic,veb,veb-HL")
    p.add_argument("--pattern-kind", choices=[k.value for k in bench.PatternKind])
    p.add_argument("--seed", type=int)
    p.add_argument("--repetitions", type=int)
    p.add_argument("--time-limit", type=float, metavar="SECONDS")
    p.add_argument("--parallel", type=int, metavar="WORKERS")

    p = sub.add_parser("oracle", help="brute-force answer for small instances")
    _add_inputs(p)
    p.add_argument("--traces", action="store_true", help="also list every trace")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def cmd_match(args, out) -> int:
    if args.traces and args.hl:
        raise InputError("--traces cannot be combined with --hl: heavy-light discards the tables")
    hl = (not args.traces) if args.hl is None else args.hl
    text = rank_encode(_read(args.text, args.text_inline, "text"))
    pattern = rank_encode(_read(args.pattern, args.pattern_inline, "pattern"))
    if args.show_tree:
        print(build_ct(pattern).to_parens(), file=sys.stderr)
    cfg = MatchConfig(args.algo, "heavy_light" if hl else "plain", args.traces)
    res = solve(text, pattern, cfg)
    if args.format == "json":
        items = []
        for k, iv in enumerate(res.intervals):
            item = {"hi": iv.hi, "lo": iv.lo}
            if res.traces is not None:
                item["trace"] = list(res.traces[k])
            items.append(item)
        stats = {k: v for k, v in res.stats.items() if k != "wall_ms"}
        stats["wall_ms"] = round(res.stats["wall_ms"], 3)
        json.dump({"intervals": items, "stats": stats}, out, sort_keys=True)
        out.write("\n")
    else:
        for k, iv in enumerate(res.intervals):
            line = f"{iv.lo}\t{iv.hi}"
            if res.traces is not None:
                line += "\t" + " ".join(map(str, res.traces[k]))
            out.write(line + "\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.m is not None and args.worst_case is not None:
        raise InputError("--m and --worst-case are mutually exclusive")
    if args.n < 1:
        raise InputError("--n must be >= 1")
    if args.even and args.worst_case is None:
        raise InputError("--even only applies to --worst-case")
    text = bench.gen_random_text(args.n, args.seed)
    if args.worst_case is not None:
        if args.worst_case < 1:
            raise InputError("--worst-case must be >= 1")
        pattern = bench.gen_worst_case_pattern(args.worst_case, even=args.even)
    else:
        m = args.m if args.m is not None else max(1, args.n // 10)
        if not 1 <= m <= args.n:
            raise InputError(f"--m must be in [1, {args.n}], got {m}")
        pattern = bench.gen_random_pattern(text, m, args.seed + 1)
    Path(f"{args.out}.text").write_text(format_integers(text.values))
    Path(f"{args.out}.pattern").write_text(format_integers(pattern.values))
    return EXIT_OK


def _read_spec(path) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    if raw.lstrip().startswith("{"):
        try:
            spec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(spec, dict):
            raise InputError(f"{path}: expected a JSON object")
        return spec
    spec = {}
    for lineno, line in enumerate(raw.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        spec[key] = value
    return spec


def _int_list(value, key):
    if isinstance(value, (list, tuple)):
        items = value
    elif isinstance(value, int):
        items = [value]
    else:
        items = [s for s in str(value).split(",") if s.strip()]
    try:
        return tuple(int(x) for x in items)
    except (TypeError, ValueError):
        raise InputError(f"{key}: expected comma-separated integers, got {value!r}") from None


_SPEC_KEYS = {"n", "m", "algos", "algorithms", "pattern_kind", "seed", "repetitions", "time_limit", "parallel"}


def _bench_spec(args) -> bench.BenchSpec:
    spec = _read_spec(args.spec) if args.spec else {}
    unknown = set(spec) - _SPEC_KEYS
    if unknown:
        raise InputError(f"unknown spec keys: {', '.join(sorted(unknown))}")
    for key in ("n", "m", "algos", "pattern_kind", "seed", "repetitions", "time_limit", "parallel"):
        value = getattr(args, key)
        if value is not None:
            spec[key] = value
    if "n" not in spec or "m" not in spec:
        raise InputError("bench needs n and m (via --spec or --n/--m)")
    algos = spec.get("algos", spec.get("algorithms", "basic,veb"))
    if isinstance(algos, str):
        algos = [a for a in algos.split(",") if a.strip()]
    try:
        limit = spec.get("time_limit")
        return bench.BenchSpec(
            n=_int_list(spec["n"], "n"),
            m=_int_list(spec["m"], "m"),
            pattern_kind=spec.get("pattern_kind", "random"),
            seed=int(spec.get("seed", 0)),
            algorithms=tuple(algos),
            repetitions=int(spec.get("repetitions", 3)),
            time_limit=None if limit in (None, "", "none") else float(limit),
            workers=int(spec.get("parallel", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid bench spec: {exc}") from None


def cmd_bench(args, out) -> int:
    spec = _bench_spec(args)
    bench.write_csv(bench.run_bench(spec), out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    text = _read(args.text, args.text_inline, "text")
    pattern = _read(args.pattern, args.pattern_inline, "pattern")
    res = oracle_solve(text, pattern, budget=args.budget)
    for iv in res.minimal_intervals:
        out.write(f"{iv.lo}\t{iv.hi}\n")
    if args.traces:
        for t in res.all_traces:
            out.write("trace\t" + " ".join(map(str, t)) + "\n")
    return EXIT_OK


_COMMANDS = {"match": cmd_match, "gen": cmd_gen, "bench": cmd_bench, "oracle": cmd_oracle}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"ctmseq {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"ctmseq {args.command}: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except CTMSeqError as exc:
        print(f"ctmseq {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
