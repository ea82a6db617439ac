"""Benchmark and verification runners behind the command line."""
from __future__ import annotations

import csv
import io
import time
import tracemalloc
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import baselines
from .seqstore import SequenceStore
from .structure import IncrementalMLCS
from .workloads import APPEND, POP, GenConfig, Op, apply, gen_random, gen_sliding

CSV_VERSION = 1
CSV_HEADER = "generator,S,k,m,ops,algorithm,avg_ns_per_op,peak_bytes,final_mlcs_len,seed,skipped"
TIMING_COLUMNS = ("avg_ns_per_op", "peak_bytes")

ALGORITHMS = ("imlcs", "naive-dp", "quick-dp")
_ALIASES = {
    "imlcs": "imlcs",
    "naive-dp": "naive-dp",
    "naivedp": "naive-dp",
    "naive": "naive-dp",
    "dp": "naive-dp",
    "quick-dp": "quick-dp",
    "quickdp": "quick-dp",
    "qdp": "quick-dp",
}


def parse_algorithms(spec: str) -> list[str]:
    out = []
    for name in spec.split(","):
        name = name.strip().lower()
        if not name:
            continue
        if name not in _ALIASES:
            raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
        if _ALIASES[name] not in out:
            out.append(_ALIASES[name])
    if not out:
        raise ValueError("no algorithm selected")
    return out


@dataclass
class BenchRecord:
    generator: str
    S: int
    k: int
    m: int
    ops: int
    algorithm: str
    avg_ns_per_op: float
    peak_bytes: int
    final_mlcs_len: int
    seed: int
    skipped: str = ""

    def row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


def write_csv(records: Iterable[BenchRecord], out: io.TextIOBase) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER.split(","))
    for r in records:
        w.writerow([f"{x:.1f}" if isinstance(x, float) else x for x in r.row()])


def read_csv(text: str) -> list[BenchRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    if rows and list(rows[0].keys()) != CSV_HEADER.split(","):
        raise ValueError("unexpected CSV header")
    out = []
    for row in rows:
        out.append(
            BenchRecord(
                generator=row["generator"],
                S=int(row["S"]),
                k=int(row["k"]),
                m=int(row["m"]),
                ops=int(row["ops"]),
                algorithm=row["algorithm"],
                avg_ns_per_op=float(row["avg_ns_per_op"]),
                peak_bytes=int(row["peak_bytes"]),
                final_mlcs_len=int(row["final_mlcs_len"]),
                seed=int(row["seed"]),
                skipped=row["skipped"] or "",
            )
        )
    return out


# -- timing -----------------------------------------------------------------


def warm_kernels() -> None:
    """Load every compiled kernel once so that no timed run pays for it."""
    from . import ort, structure

    pts = np.zeros((ort.SCAN_MIN, 3), dtype=np.int64)
    lo = np.zeros(3)
    ort._scan_first(pts, 0, len(pts), lo, lo, 2)
    ort._scan_all(pts, 0, len(pts), lo, lo, 2)
    ort._scan_cover(pts, len(pts), pts[0])
    baselines._minima_sorted(pts)
    offsets = np.arange(4, dtype=np.int64)
    structure._next_minimal(pts, pts[0], offsets, offsets)
    store = SequenceStore.from_sequences([[0, 1], [1, 0]], 2)
    baselines.naive_dp(store)
    baselines.dp_level_sets(store)


def expected_matches(S: int, k: int, m: int) -> int:
    """Expected number of matches among ``k`` uniform random strings of length ``m``."""
    return max(2, round(m**k / S ** (k - 1)))


def time_imlcs(
    ops: Sequence[Op], k: int, S: int, m: Optional[int] = None, skip: int = 0, **kwargs
) -> tuple[int, int]:
    """Total nanoseconds spent in updates, and the final MLCS length.

    With ``m`` given and no explicit ``graft``/``expected_n``, the level trees
    are sized for :func:`expected_matches`.  The first ``skip`` operations
    are applied but not timed.
    """
    if m is not None and "graft" not in kwargs and "expected_n" not in kwargs:
        kwargs["expected_n"] = expected_matches(S, k, m)
    structure = IncrementalMLCS(k, S, **kwargs)
    for op in ops[:skip]:
        apply(structure, op)
    clock = time.perf_counter_ns
    total = 0
    for op in ops[skip:]:
        t = clock()
        if op.kind == APPEND:
            structure.append(op.string, op.symbol)
        else:
            structure.pop(op.string)
        total += clock() - t
    return total, structure.mlcs_len()


class BudgetExceeded(Exception):
    """A timed run passed its time budget; ``elapsed_ns`` is a lower bound on its total."""

    def __init__(self, elapsed_ns: int) -> None:
        super().__init__(elapsed_ns)
        self.elapsed_ns = elapsed_ns


def time_baseline(
    fn: Callable[[SequenceStore], int],
    ops: Sequence[Op],
    k: int,
    S: int,
    budget_ns: Optional[int] = None,
    skip: int = 0,
) -> tuple[int, int]:
    """Static algorithm timed with the rerun-on-pop policy.

    Appends only update the store; every pop recomputes from scratch; one
    final run happens after the last operation.  Past ``budget_ns`` the run
    stops with :class:`BudgetExceeded`.  The first ``skip`` operations only
    update the store, untimed.
    """
    store = SequenceStore(k, S)
    for op in ops[:skip]:
        apply(store, op)
    clock = time.perf_counter_ns
    total = 0
    value = 0
    for op in ops[skip:]:
        t = clock()
        if op.kind == APPEND:
            store.append(op.string, op.symbol)
        else:
            store.pop(op.string)
            value = fn(store)
        total += clock() - t
        if budget_ns is not None and total > budget_ns:
            raise BudgetExceeded(total)
    t = clock()
    value = fn(store)
    total += clock() - t
    return total, value


def _runner(algorithm: str, m: int, dp_cap: int, qdp_cap: int) -> Callable[[Sequence[Op], int, int], tuple[int, int]]:
    if algorithm == "imlcs":
        return lambda ops, k, S: time_imlcs(ops, k, S, m)
    if algorithm == "naive-dp":
        return lambda ops, k, S: time_baseline(lambda st: baselines.naive_dp(st, dp_cap), ops, k, S)
    if algorithm == "quick-dp":
        return lambda ops, k, S: time_baseline(lambda st: baselines.quick_dp(st, qdp_cap), ops, k, S)
    raise ValueError(algorithm)


def make_ops(generator: str, S: int, k: int, m: int, ops: int, seed: int, sequences=None) -> list[Op]:
    if generator in ("gen1", "gen2"):
        return list(gen_random(GenConfig(S, k, m, ops, seed, variant=int(generator[-1]))))
    if generator == "sliding":
        if sequences is None:
            raise ValueError("sliding generator needs sequences")
        return list(gen_sliding(sequences, k, m, ops))
    raise ValueError(f"unknown generator {generator!r}")


def bench_point(
    generator: str,
    S: int,
    k: int,
    m: int,
    ops: int,
    seed: int,
    algorithms: Sequence[str],
    sequences=None,
    dp_cap: int = baselines.DP_CELL_CAP,
    qdp_cap: int = baselines.QUICKDP_MATCH_CAP,
    memory: bool = False,
) -> list[BenchRecord]:
    """Run every algorithm on one operation stream; one record per algorithm."""
    stream = make_ops(generator, S, k, m, ops, seed, sequences)
    warm_kernels()
    records = []
    for alg in algorithms:
        run = _runner(alg, m, dp_cap, qdp_cap)
        peak = 0
        skipped = ""
        if memory:
            tracemalloc.start()
        try:
            total, final = run(stream, k, S)
        except baselines.ResourceLimitError:
            total, final, skipped = 0, 0, "resource"
        finally:
            if memory:
                peak = tracemalloc.get_traced_memory()[1]
                tracemalloc.stop()
        avg = total / len(stream) if stream and not skipped else 0.0
        records.append(BenchRecord(generator, S, k, m, len(stream), alg, avg, peak, final, seed, skipped))
    return records


def agreement(records: Iterable[BenchRecord]) -> bool:
    """True when all non-skipped records of each configuration share one final length."""
    seen: dict[tuple, int] = {}
    for r in records:
        if r.skipped:
            continue
        key = (r.generator, r.S, r.k, r.m, r.ops, r.seed)
        if seen.setdefault(key, r.final_mlcs_len) != r.final_mlcs_len:
            return False
    return True


# -- verification -------------------------------------------------------------


@dataclass
class Counterexample:
    generator: str
    S: int
    k: int
    m: int
    seed: int
    op_index: int
    op: str
    expected: object
    got: object
    trace: str

    def report(self) -> str:
        return (
            f"FAIL generator={self.generator} S={self.S} k={self.k} m={self.m} seed={self.seed} "
            f"op#{self.op_index} ({self.op}): expected {self.expected}, got {self.got}\n{self.trace}"
        )


def verify_stream(
    ops: Iterable[Op],
    k: int,
    S: int,
    deep: bool = False,
    every: int = 1,
    label: Optional[dict] = None,
    dp_cap: int = baselines.DP_CELL_CAP,
    **kwargs,
) -> Optional[Counterexample]:
    """Replay ``ops`` and compare against the DP oracle after every ``every``-th op.

    Returns the first disagreement, or None.
    """
    label = label or {}
    structure = IncrementalMLCS(k, S, **kwargs)
    for i, op in enumerate(ops):
        apply(structure, op)
        if (i + 1) % every:
            continue
        expected = baselines.naive_dp(structure.store, dp_cap)
        got = structure.mlcs_len()
        if expected == got and deep:
            expected = baselines.dp_level_sets(structure.store, dp_cap)
            got = structure.levels()
        if expected != got:
            return Counterexample(
                label.get("generator", "?"), S, k, label.get("m", 0), label.get("seed", 0),
                i, str(op), expected, got, structure.trace(),
            )
    return None


def verify_random(S: int, k: int, m: int, ops: int, seed: int, variant: int = 1, deep: bool = False) -> Optional[Counterexample]:
    stream = gen_random(GenConfig(S, k, m, ops, seed, variant))
    return verify_stream(stream, k, S, deep=deep, label=dict(generator=f"gen{variant}", m=m, seed=seed))


def record_dict(r: BenchRecord) -> dict:
    return asdict(r)
