"""Command line: ``imlcs bench | verify | trace | plot``.

Exit codes: 0 ok, 1 usage or I/O error, 2 verification failure, 3 resource cap.
"""
from __future__ import annotations

import argparse
import os
import statistics
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import baselines, fixtures, harness
from .seqstore import Alphabet
from .structure import IncrementalMLCS
from .workloads import BUNDLED_PROTEINS, load_sequences

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3

SEED_ENV = "IMLCS_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; usage is 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if part:
            out.append(_positive(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


# -- bench ----------------------------------------------------------------------


def _bench_task(args: tuple) -> list[harness.BenchRecord]:
    generator, S, k, m, ops, seed, algorithms, sequences, dp_cap, qdp_cap, memory = args
    return harness.bench_point(generator, S, k, m, ops, seed, algorithms, sequences, dp_cap, qdp_cap, memory)


def cmd_bench(ns: argparse.Namespace) -> int:
    try:
        algorithms = harness.parse_algorithms(ns.algs)
    except ValueError as e:
        raise UsageError(str(e)) from None
    seed = _resolve_seed(ns.seed)
    generator = {"1": "gen1", "2": "gen2", "sliding": "sliding"}[ns.gen]
    sequences = None
    S = ns.S
    if generator == "sliding":
        path = ns.fasta or BUNDLED_PROTEINS
        try:
            data = load_sequences(path, max_alphabet=ns.max_alphabet)
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror or e}") from None
        except ValueError as e:
            raise UsageError(str(e)) from None
        if ns.k > len(data.sequences):
            raise UsageError(f"-k {ns.k} exceeds the {len(data.sequences)} sequences in {path}")
        sequences = data.sequences
        S = len(data.alphabet)
    elif S is None:
        S = 4
    tasks = [
        (generator, S, ns.k, m, ns.ops, seed, algorithms, sequences, ns.dp_cap, ns.qdp_cap, ns.memory)
        for m in sorted(ns.m)
    ]
    if ns.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_bench_task, tasks))
    else:
        results = [_bench_task(t) for t in tasks]
    records = [r for batch in results for r in batch]
    harness.write_csv(records, sys.stdout)
    sys.stdout.flush()
    if generator == "gen2":
        print("note: a synchronized append counts as k operations in ops and avg_ns_per_op", file=sys.stderr)
    for r in records:
        if r.skipped:
            print(f"warning: {r.algorithm} at m={r.m} skipped ({r.skipped})", file=sys.stderr)
    if not harness.agreement(records):
        print("error: algorithms disagree on the final MLCS length", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_RESOURCE if any(r.skipped for r in records) else EXIT_OK


# -- verify ---------------------------------------------------------------------


def _check_fixtures(deep: bool) -> list[str]:
    """Replay the worked example; return failure messages."""
    failures = []
    data = Path(__file__).with_name("data")
    cases = ((fixtures.FIGURE_SCRIPT, "table1.txt"), ((data / "figure.script").read_text(), "table2.txt"))
    for text, golden in cases:
        structure, _ = run_script(text)
        expected = (data / golden).read_text().rstrip("\n")
        got = structure.trace()
        if got != expected:
            failures.append(f"FAIL fixture {golden}:\n--- expected\n{expected}\n--- got\n{got}")
        elif deep:
            oracle = fixtures.format_table(baselines.dp_level_sets(structure.store))
            if oracle != expected:
                failures.append(f"FAIL fixture {golden} disagrees with the DP oracle:\n{oracle}")
    return failures


def cmd_verify(ns: argparse.Namespace) -> int:
    seed = _resolve_seed(ns.seed)
    try:
        if ns.fixtures:
            failures = _check_fixtures(ns.deep)
            for f in failures:
                print(f)
            if failures:
                return EXIT_VERIFY
            print("PASS fixtures")
            if not ns.random:
                return EXIT_OK
        for s in range(seed, seed + ns.seeds):
            cex = harness.verify_random(ns.S, ns.k, ns.m, ns.ops, s, variant=int(ns.gen), deep=ns.deep)
            if cex is not None:
                print(cex.report())
                return EXIT_VERIFY
        mode = "deep" if ns.deep else "length"
        print(f"PASS gen{ns.gen} S={ns.S} k={ns.k} m={ns.m} ops={ns.ops} seeds={seed}..{seed + ns.seeds - 1} ({mode})")
        return EXIT_OK
    except baselines.ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE


# -- trace ----------------------------------------------------------------------


def parse_script(text: str) -> list[tuple]:
    """Script lines to ``(kind, string_index_0based, payload)`` tuples.

    Lines are ``string <i> <letters>``, ``append <i> <letter>`` or ``pop <i>``
    with 1-based ``i``; keywords are case-insensitive, ``#`` starts a comment
    and ``;`` separates commands on one line.
    """
    commands = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            words = part.split()
            if not words:
                continue
            kind = words[0].lower()
            want = {"string": 3, "append": 3, "pop": 2}.get(kind)
            if want is None:
                raise ValueError(f"line {lineno}: unknown command {words[0]!r}")
            if len(words) != want:
                raise ValueError(f"line {lineno}: {kind} takes {want - 1} argument(s)")
            try:
                index = int(words[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad string index {words[1]!r}") from None
            if index < 1:
                raise ValueError(f"line {lineno}: string indices start at 1")
            if kind == "append" and len(words[2]) != 1:
                raise ValueError(f"line {lineno}: append takes a single letter")
            commands.append((kind, index - 1, words[2] if want == 3 else None))
    return commands


def run_script(text: str) -> tuple[Optional[IncrementalMLCS], Alphabet]:
    commands = parse_script(text)
    alphabet = Alphabet()
    for kind, _, payload in commands:
        if payload:
            alphabet.encode(payload)
    if not commands:
        return None, alphabet
    k = max(2, 1 + max(i for _, i, _ in commands))
    structure = IncrementalMLCS(k, max(1, len(alphabet)))
    for kind, i, payload in commands:
        if kind == "pop":
            structure.pop(i)
        else:
            for c in alphabet.encode(payload, grow=False):
                structure.append(i, c)
    return structure, alphabet


def cmd_trace(ns: argparse.Namespace) -> int:
    try:
        text = sys.stdin.read() if ns.script == "-" else Path(ns.script).read_text()
    except OSError as e:
        print(f"error: cannot read {ns.script}: {e.strerror or e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        structure, alphabet = run_script(text)
    except (ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if structure is None:
        return EXIT_OK
    if len(alphabet):
        print(f"alphabet: {alphabet.mapping()}", file=sys.stderr)
    out = structure.trace()
    if out:
        print(out)
    return EXIT_OK


# -- plot -----------------------------------------------------------------------


def write_plot(records: Sequence[harness.BenchRecord], out_dir: Path, stem: str) -> list[Path]:
    """Double-log gnuplot script plus one ``m  avg_ns`` data file per algorithm.

    Several rows for the same algorithm and ``m`` (seeds, generators) are
    reduced to their median.
    """
    series: dict[str, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in records:
        if not r.skipped:
            series[r.algorithm][r.m].append(r.avg_ns_per_op)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    plots = []
    for alg in sorted(series):
        dat = out_dir / f"{stem}_{alg}.dat"
        lines = ["# m avg_ns_per_op"]
        for m in sorted(series[alg]):
            lines.append(f"{m} {statistics.median(series[alg][m]):.1f}")
        dat.write_text("\n".join(lines) + "\n")
        written.append(dat)
        plots.append(f"'{dat.name}' using 1:2 with linespoints title '{alg}'")
    gp = out_dir / f"{stem}.gp"
    script = [
        "set logscale xy",
        "set xlabel 'm'",
        "set ylabel 'average time per operation (ns)'",
        "set key left top",
        "set terminal pngcairo size 800,600",
        f"set output '{stem}.png'",
        "plot " + ", \\\n     ".join(plots) if plots else "# no data rows",
    ]
    gp.write_text("\n".join(script) + "\n")
    written.insert(0, gp)
    return written


def cmd_plot(ns: argparse.Namespace) -> int:
    path = Path(ns.csv)
    try:
        text = path.read_text()
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror or e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        records = harness.read_csv(text)
    except (ValueError, KeyError) as e:
        print(f"error: {path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(ns.out_dir) if ns.out_dir else path.parent
    for p in write_plot(records, out_dir, path.stem):
        print(p)
    return EXIT_OK


# -- entry ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="imlcs", description="Incremental MLCS length: benchmarks, verification, traces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bench", help="time algorithms on a generated operation stream, CSV to stdout")
    b.add_argument("--gen", choices=("1", "2", "sliding"), default="1", help="workload generator")
    b.add_argument("-S", type=_positive, default=None, help="alphabet size (random generators, default 4)")
    b.add_argument("-k", type=_positive, default=3, help="number of strings")
    b.add_argument("-m", type=_int_list, default=[64], help="target string size, or a comma list to sweep")
    b.add_argument("--ops", type=_positive, default=10000, help="operations per run")
    b.add_argument("--algs", default="imlcs,quick-dp", help="comma list of imlcs, naive-dp, quick-dp")
    b.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV}, else 0)")
    b.add_argument("--fasta", default=None, help="sequence file for --gen sliding (default: bundled)")
    b.add_argument("--max-alphabet", type=_positive, default=21, help="alphabet limit for --fasta")
    b.add_argument("--jobs", type=_positive, default=1, help="parallel sweep points")
    b.add_argument("--dp-cap", type=_positive, default=baselines.DP_CELL_CAP, help="naive DP cell cap")
    b.add_argument("--qdp-cap", type=_positive, default=baselines.QUICKDP_MATCH_CAP, help="Quick-DP match cap")
    b.add_argument("--memory", action="store_true", help="record peak traced allocation (slow)")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="fuzz the structure against the DP oracle")
    v.add_argument("--gen", choices=("1", "2"), default="1")
    v.add_argument("-S", type=_positive, default=2)
    v.add_argument("-k", type=_positive, default=3)
    v.add_argument("-m", type=_positive, default=8)
    v.add_argument("--ops", type=_positive, default=1000)
    v.add_argument("--seed", type=int, default=None, help=f"first seed (default ${SEED_ENV}, else 0)")
    v.add_argument("--seeds", type=_positive, default=1, help="number of consecutive seeds")
    v.add_argument("--deep", action="store_true", help="also compare every level set")
    v.add_argument("--fixtures", action="store_true", help="replay the bundled worked example")
    v.add_argument("--random", action="store_true", help="with --fixtures, also run the random fuzz")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trace", help="print the level table after running a script")
    t.add_argument("--script", required=True, help="script file, or - for stdin")
    t.set_defaults(func=cmd_trace)

    p = sub.add_parser("plot", help="gnuplot script and data files from a bench CSV")
    p.add_argument("csv")
    p.add_argument("-o", "--out-dir", default=None, help="output directory (default: next to the CSV)")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if getattr(ns, "k", 2) < 2:
        parser.error("-k must be at least 2")
    try:
        return ns.func(ns)
    except UsageError as e:
        print(f"imlcs: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
