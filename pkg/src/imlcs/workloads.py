"""Replayable Append/Pop operation streams and sequence-file ingestion.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``; one stream is
reproducible from ``(generator, config, seed)`` on the same numpy version.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .seqstore import Alphabet

APPEND = "append"
POP = "pop"

PROTEIN_ALPHABET_MAX = 21
BUNDLED_PROTEINS = Path(__file__).with_name("data") / "protein_like.fasta"


class Op(NamedTuple):
    """One workload event; ``symbol`` is None for a pop."""

    kind: str
    string: int
    symbol: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == POP:
            return f"pop {self.string}"
        return f"append {self.string} {self.symbol}"


@dataclass(frozen=True)
class GenConfig:
    alphabet_size: int
    k: int
    m: int
    ops: int
    seed: int = 0
    variant: int = 1

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet size must be >= 1")
        if self.k < 2:
            raise ValueError("need k >= 2 strings")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.ops < 1:
            raise ValueError("ops must be >= 1")
        if self.variant not in (1, 2):
            raise ValueError(f"unknown generator variant {self.variant!r}")


def gen_random(cfg: GenConfig) -> Iterator[Op]:
    """Random Append/Pop stream over ``k`` strings of target size ``m``.

    Each step picks a string uniformly.  Shorter than ``m``: append.  Longer
    than ``2m``: pop.  Otherwise append or pop with equal probability.
    Appended letters are uniform over the alphabet.  With ``variant=2`` an
    append is, with probability ``1/k``, the same letter appended to all
    ``k`` strings, emitted as ``k`` consecutive operations.  Exactly
    ``cfg.ops`` operations are produced.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    lengths = [0] * cfg.k
    emitted = 0
    while emitted < cfg.ops:
        s = int(rng.integers(cfg.k))
        n = lengths[s]
        if n < cfg.m:
            append = True
        elif n > 2 * cfg.m:
            append = False
        else:
            append = bool(rng.random() < 0.5)
        if not append:
            lengths[s] -= 1
            emitted += 1
            yield Op(POP, s)
            continue
        c = int(rng.integers(cfg.alphabet_size))
        if cfg.variant == 2 and rng.random() < 1.0 / cfg.k:
            for t in range(cfg.k):
                if emitted == cfg.ops:
                    return
                lengths[t] += 1
                emitted += 1
                yield Op(APPEND, t, c)
        else:
            lengths[s] += 1
            emitted += 1
            yield Op(APPEND, s, c)


# -- sequence files ---------------------------------------------------------


@dataclass
class SequenceSet:
    labels: list[str]
    sequences: list[list[int]]
    alphabet: Alphabet


def _read_fasta(text: str) -> tuple[list[str], list[str]]:
    labels: list[str] = []
    seqs: list[list[str]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            labels.append(line[1:].strip())
            seqs.append([])
        else:
            if not seqs:
                raise ValueError("FASTA sequence data before the first '>' header")
            seqs[-1].append("".join(line.split()))
    return labels, ["".join(s) for s in seqs]


def load_sequences(
    path: str | os.PathLike,
    fmt: str = "auto",
    max_alphabet: Optional[int] = None,
    alphabet: Optional[Alphabet] = None,
) -> SequenceSet:
    """Read sequences as symbol streams.

    ``fmt`` is ``"plain"`` (one sequence per line), ``"fasta"`` or ``"auto"``
    (FASTA when the first non-blank line starts with ``>``).  Symbol ids are
    assigned in first-appearance order; ``max_alphabet`` bounds the number of
    distinct letters.
    """
    text = Path(path).read_text()
    if fmt == "auto":
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        fmt = "fasta" if first.lstrip().startswith(">") else "plain"
    if fmt == "fasta":
        labels, raw = _read_fasta(text)
    elif fmt == "plain":
        raw = [ln.strip() for ln in text.splitlines() if ln.strip()]
        labels = [f"seq{i + 1}" for i in range(len(raw))]
    else:
        raise ValueError(f"unknown sequence format {fmt!r}")
    alphabet = alphabet if alphabet is not None else Alphabet()
    sequences = [alphabet.encode(s) for s in raw]
    if max_alphabet is not None and len(alphabet) > max_alphabet:
        raise ValueError(f"alphabet of {len(alphabet)} letters exceeds limit {max_alphabet}")
    return SequenceSet(labels, sequences, alphabet)


def load_proteins(path: str | os.PathLike = BUNDLED_PROTEINS) -> SequenceSet:
    return load_sequences(path, "fasta", max_alphabet=PROTEIN_ALPHABET_MAX)


def gen_sliding(sequences: Sequence[Sequence[int]], k: int, m: int, ops: Optional[int] = None) -> Iterator[Op]:
    """Synchronized sliding windows of size ``m`` over the first ``k`` sequences.

    Warm-up fills each window with ``m`` appends, round-robin across strings.
    Each later step advances every window by one letter, in string order, as
    an append of the next letter (wrapping to the sequence start) followed
    by a pop.  ``ops`` bounds the total number of operations, warm-up
    included; ``None`` streams forever.
    """
    if k < 2 or k > len(sequences):
        raise ValueError(f"need 2 <= k <= {len(sequences)} sequences, got k={k}")
    if m < 1:
        raise ValueError("window size must be >= 1")
    seqs = [list(sequences[i]) for i in range(k)]
    if any(not s for s in seqs):
        raise ValueError("empty sequence")

    def stream() -> Iterator[Op]:
        cursor = [0] * k
        for _ in range(m):
            for s in range(k):
                yield Op(APPEND, s, seqs[s][cursor[s]])
                cursor[s] = (cursor[s] + 1) % len(seqs[s])
        while True:
            for s in range(k):
                yield Op(APPEND, s, seqs[s][cursor[s]])
                cursor[s] = (cursor[s] + 1) % len(seqs[s])
                yield Op(POP, s)

    it = stream()
    if ops is None:
        yield from it
        return
    for _ in range(ops):
        yield next(it)


def apply(target, op: Op) -> None:
    """Apply ``op`` to anything with ``append(s, c)`` / ``pop(s)``."""
    if op.kind == APPEND:
        target.append(op.string, op.symbol)
    else:
        target.pop(op.string)
