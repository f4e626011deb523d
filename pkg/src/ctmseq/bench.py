"""Instance generators and the timing harness.

Random instances use numpy's PCG64 generator seeded with the given integer,
so a seed pins the instance on every platform numpy supports.
"""

from __future__ import annotations

import csv
import enum
import io
import multiprocessing as mp
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .matcher import Algorithm, MatchConfig, Traversal, TextIndex, solve
from .model import Sequence, as_sequence, rank_encode

__all__ = [
    "PatternKind",
    "BenchSpec",
    "CSV_FIELDS",
    "gen_random_text",
    "gen_random_pattern",
    "gen_worst_case_pattern",
    "make_instance",
    "parse_algorithm",
    "run_bench",
    "write_csv",
]

CSV_FIELDS = [
    "n",
    "m",
    "pattern_kind",
    "algorithm",
    "traversal",
    "median_ms",
    "peak_live_rows",
    "dict_ops",
    "intervals_found",
    "status",
]


class PatternKind(str, enum.Enum):
    RANDOM_SUBSEQUENCE = "random"
    WORST_CASE = "worst_case"


def gen_random_text(n: int, seed: int) -> Sequence:
    """Uniform random permutation of ``1..n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    return rank_encode(rng.permutation(n) + 1)


def gen_random_pattern(T, m: int, seed: int) -> Sequence:
    """Values of ``T`` at a uniformly chosen ``m``-subset of positions, in order."""
    text = as_sequence(T)
    n = len(text)
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pos = np.sort(rng.choice(n, size=m, replace=False))
    return rank_encode(text.values[pos])


def gen_worst_case_pattern(k: int, even: bool = False) -> Sequence:
    """``(k+1, 1, k+2, 2, ..., 2k, k, 2k+1)``, or without the trailing ``2k+1`` if ``even``.

    Every internal node of its Cartesian tree has a leaf as left child, which
    forces left-first traversals to hold ``k + 1`` tables at once.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = np.empty(2 * k, dtype=np.int64)
    vals[0::2] = np.arange(k + 1, 2 * k + 1)
    vals[1::2] = np.arange(1, k + 1)
    if not even:
        vals = np.append(vals, 2 * k + 1)
    return rank_encode(vals)


def worst_case_of_length(m: int) -> Sequence:
    if m == 1:
        return rank_encode([1])
    return gen_worst_case_pattern(m // 2, even=(m % 2 == 0))


def make_instance(n: int, m: int, kind, seed: int) -> tuple[Sequence, Sequence]:
    kind = PatternKind(kind)
    text = gen_random_text(n, seed)
    if kind is PatternKind.WORST_CASE:
        return text, worst_case_of_length(m)
    # derived seed keeps the pattern independent of the text's stream
    return text, gen_random_pattern(text, m, seed + 1)


_NAMES = {a.value: a for a in Algorithm}


def parse_algorithm(name: str) -> MatchConfig:
    """``basic``, ``veb``, ``bst`` with optional ``-HL`` suffix for heavy-light."""
    base = name.strip()
    traversal = Traversal.PLAIN
    if base.lower().endswith("-hl"):
        base, traversal = base[:-3], Traversal.HEAVY_LIGHT
    try:
        return MatchConfig(_NAMES[base.lower()], traversal)
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from basic, veb, bst (+ -HL)") from None


@dataclass
class BenchSpec:
    """Grid of ``(n, m)`` cells, each timed for every configuration.

    ``time_limit`` is a wall-clock budget in seconds per (cell, configuration),
    covering the warm-up and all repetitions; ``None`` disables it.
    """

    n: tuple[int, ...]
    m: tuple[int, ...]
    pattern_kind: PatternKind = PatternKind.RANDOM_SUBSEQUENCE
    seed: int = 0
    algorithms: tuple[MatchConfig, ...] = field(
        default_factory=lambda: (MatchConfig("basic", "plain"), MatchConfig("veb", "plain"))
    )
    repetitions: int = 3
    time_limit: Optional[float] = None
    workers: int = 1

    def __post_init__(self):
        self.n = tuple(int(x) for x in np.atleast_1d(self.n))
        self.m = tuple(int(x) for x in np.atleast_1d(self.m))
        self.pattern_kind = PatternKind(self.pattern_kind)
        self.algorithms = tuple(
            parse_algorithm(a) if isinstance(a, str) else a for a in self.algorithms
        )
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if any(x < 1 for x in self.n + self.m):
            raise ValueError("n and m must be >= 1")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")

    def cells(self):
        return [(n, m) for n in self.n for m in self.m if m <= n]


def _time_config(text, pattern, cfg, repetitions):
    solve(text, pattern, cfg)  # warm-up, discarded
    times = []
    result = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = solve(text, pattern, cfg)
        times.append((time.perf_counter() - t0) * 1e3)
    return {
        "median_ms": statistics.median(times),
        "peak_live_rows": result.stats["peak_live_rows"],
        "dict_ops": result.stats["dict_ops"],
        "intervals": [tuple(iv) for iv in result.intervals],
    }


def _child(conn, text, pattern, cfg, repetitions):
    try:
        conn.send(_time_config(text, pattern, cfg, repetitions))
    except BaseException as exc:  # reported as an error row by the parent
        conn.send({"error": repr(exc)})
    finally:
        conn.close()


def _time_limited(text, pattern, cfg, repetitions, limit):
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    recv, send = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(send, text, pattern, cfg, repetitions), daemon=True)
    proc.start()
    send.close()
    ready = recv.poll(limit)
    out = recv.recv() if ready else None
    if proc.is_alive():
        proc.kill()
    proc.join()
    return out


def _run_cell(spec: BenchSpec, n: int, m: int):
    text, pattern = make_instance(n, m, spec.pattern_kind, spec.seed)
    text = TextIndex(text)
    rows = []
    reference = None
    for cfg in spec.algorithms:
        row = {
            "n": n,
            "m": m,
            "pattern_kind": spec.pattern_kind.value,
            "algorithm": cfg.algorithm.value,
            "traversal": cfg.traversal.value,
        }
        if spec.time_limit is None:
            out = _time_config(text, pattern, cfg, spec.repetitions)
        else:
            out = _time_limited(text, pattern, cfg, spec.repetitions, spec.time_limit)
        if out is None:
            row.update(median_ms="NA", peak_live_rows="NA", dict_ops="NA",
                       intervals_found="NA", status="NA")
        elif "error" in out:
            row.update(median_ms="NA", peak_live_rows="NA", dict_ops="NA",
                       intervals_found="NA", status="ERROR")
        else:
            status = "OK"
            if reference is None:
                reference = out["intervals"]
            elif out["intervals"] != reference:
                status = "MISMATCH"
            row.update(
                median_ms=round(out["median_ms"], 3),
                peak_live_rows=out["peak_live_rows"],
                dict_ops=out["dict_ops"],
                intervals_found=len(out["intervals"]),
                status=status,
            )
        rows.append(row)
    return rows


def run_bench(spec: BenchSpec) -> list[dict]:
    """Time every configuration on every cell; one row per (cell, configuration).

    All configurations of a cell run on the same instance and their interval
    lists are compared; a disagreement is reported as status ``MISMATCH``.
    """
    cells = spec.cells()
    if spec.workers > 1 and spec.time_limit is None:
        with ThreadPoolExecutor(spec.workers) as pool:
            chunks = list(pool.map(lambda c: _run_cell(spec, *c), cells))
    else:
        chunks = [_run_cell(spec, n, m) for n, m in cells]
    return [row for chunk in chunks for row in chunk]


def write_csv(rows, fh=None) -> str:
    buf = fh or io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue() if fh is None else ""
