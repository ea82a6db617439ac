"""Static MLCS algorithms: full dynamic programming and Quick-DP.

Both recompute from scratch on the live windows of a
:class:`~imlcs.seqstore.SequenceStore`.  They double as oracles for the
incremental structure.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable, Optional, Sequence

import numba
import numpy as np

from .seqstore import SequenceStore

DP_CELL_CAP = 10**8
QUICKDP_MATCH_CAP = 10**7


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds a configured size cap."""


# -- dynamic programming ----------------------------------------------------


@numba.njit(cache=True)
def _dp_table(letters, lens, strides, D):  # pragma: no cover - jitted
    k = lens.shape[0]
    last = lens[k - 1]
    diag = 0
    for i in range(k):
        diag += strides[i]
    # odometer over the first k-1 coordinates, last coordinate fastest
    a = np.ones(k - 1, dtype=np.int64)
    while True:
        base = 0
        c = letters[0, a[0] - 1]
        for i in range(k - 1):
            base += a[i] * strides[i]
            if letters[i, a[i] - 1] != c:
                c = -1
        for x in range(1, last + 1):
            idx = base + x
            if c >= 0 and letters[k - 1, x - 1] == c:
                D[idx] = D[idx - diag] + 1
            else:
                best = D[idx - 1]
                for i in range(k - 1):
                    v = D[idx - strides[i]]
                    if v > best:
                        best = v
                D[idx] = best
        i = k - 2
        a[i] += 1
        while a[i] > lens[i]:
            if i == 0:
                return
            a[i] = 1
            i -= 1
            a[i] += 1


@numba.njit(cache=True)
def _dp_minimal(letters, lens, strides, D):  # pragma: no cover - jitted
    k = lens.shape[0]
    out = []
    a = np.zeros(k, dtype=np.int64)
    for idx in range(D.shape[0]):
        if idx > 0:
            i = k - 1
            a[i] += 1
            while a[i] > lens[i]:
                a[i] = 0
                i -= 1
                a[i] += 1
        if D[idx] == 0:
            continue
        zero = False
        for i in range(k):
            if a[i] == 0:
                zero = True
                break
        if zero:
            continue
        c = letters[0, a[0] - 1]
        match = True
        for i in range(1, k):
            if letters[i, a[i] - 1] != c:
                match = False
                break
        if not match:
            continue
        minimal = True
        for i in range(k):
            if D[idx - strides[i]] >= D[idx]:
                minimal = False
                break
        if minimal:
            row = np.empty(k + 1, dtype=np.int64)
            row[0] = D[idx]
            row[1:] = a
            out.append(row)
    return out


def _windows(store: SequenceStore) -> tuple[np.ndarray, np.ndarray, list[int]]:
    seqs = [store.letters(s) for s in range(store.k)]
    lens = np.array([len(x) for x in seqs], dtype=np.int64)
    letters = np.full((store.k, max(1, int(lens.max()))), -1, dtype=np.int64)
    for i, x in enumerate(seqs):
        letters[i, : len(x)] = x
    heads = [store.head(s) for s in range(store.k)]
    return letters, lens, heads


def _strides(lens: np.ndarray) -> tuple[np.ndarray, int]:
    k = len(lens)
    strides = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * (lens[i + 1] + 1)
    return strides, int(strides[0] * (lens[0] + 1))


def dp_table(store: SequenceStore, cap: int = DP_CELL_CAP) -> np.ndarray:
    """Full maximum-level table over the live windows, shape ``(m_1+1, ..., m_k+1)``.

    Window coordinates are local: index ``a`` of string ``i`` is absolute
    position ``head_i + a - 1``.
    """
    letters, lens, _ = _windows(store)
    ncells = math.prod(int(x) + 1 for x in lens)
    if ncells > cap:
        raise ResourceLimitError(f"DP table of {ncells} cells exceeds cap {cap}")
    strides, ncells = _strides(lens)
    # values never exceed the shortest window
    D = np.zeros(ncells, dtype=np.int16 if int(lens.min()) < 2**15 else np.int32)
    if int(lens.min()) > 0:
        _dp_table(letters, lens, strides, D)
    return D.reshape(tuple(int(x) + 1 for x in lens))


def naive_dp(store: SequenceStore, cap: int = DP_CELL_CAP) -> int:
    """MLCS length of the live windows by the full DP recurrence."""
    if min(store.lengths()) == 0:
        return 0
    return int(dp_table(store, cap).flat[-1])


def dp_level_of(store: SequenceStore, match: Sequence[int], cap: int = DP_CELL_CAP) -> int:
    """Maximum level of ``match`` (absolute positions)."""
    D = dp_table(store, cap)
    local = tuple(p - store.head(i) + 1 for i, p in enumerate(match))
    return int(D[local])


def dp_level_sets(store: SequenceStore, cap: int = DP_CELL_CAP) -> list[list[tuple]]:
    """Non-covered matches of every level (index 0 is level 1), absolute positions.

    A match ``x`` of level ``D[x]`` is non-covered exactly when
    ``D[x - e_i] < D[x]`` along every axis ``i``: otherwise some match of the
    same level sits weakly below it.
    """
    if min(store.lengths()) == 0:
        return []
    letters, lens, heads = _windows(store)
    ncells = math.prod(int(x) + 1 for x in lens)
    if ncells > cap:
        raise ResourceLimitError(f"DP table of {ncells} cells exceeds cap {cap}")
    strides, ncells = _strides(lens)
    # values never exceed the shortest window
    D = np.zeros(ncells, dtype=np.int16 if int(lens.min()) < 2**15 else np.int32)
    if int(lens.min()) > 0:
        _dp_table(letters, lens, strides, D)
    rows = _dp_minimal(letters, lens, strides, D)
    top = int(D[-1])
    out: list[list[tuple]] = [[] for _ in range(top)]
    offset = [h - 1 for h in heads]
    for row in rows:
        out[int(row[0]) - 1].append(tuple(int(x) + o for x, o in zip(row[1:], offset)))
    for level in out:
        level.sort(key=lambda p: p[::-1])
    return out


def all_matches_by_level(store: SequenceStore, cap: int = DP_CELL_CAP) -> list[list[tuple]]:
    """Every match grouped by maximum level; the literal input of the minima filter."""
    if min(store.lengths()) == 0:
        return []
    D = dp_table(store, cap)
    seqs = [store.letters(s) for s in range(store.k)]
    heads = [store.head(s) for s in range(store.k)]
    out: list[list[tuple]] = [[] for _ in range(int(D.flat[-1]))]
    for c in set(seqs[0]):
        spots = [[a for a, x in enumerate(seq, 1) if x == c] for seq in seqs]
        for local in itertools.product(*spots):
            out[int(D[local]) - 1].append(tuple(a + h - 1 for a, h in zip(local, heads)))
    return out


# -- minima -----------------------------------------------------------------


def minima_pairwise(points: Iterable[Sequence[int]]) -> list[tuple]:
    """Reference O(n^2) filter: points not weakly dominated by a different point."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    return [
        p for p in pts
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)
    ]


# Inputs at least this large are filtered by the compiled kernel.
MINIMA_JIT_MIN = 64


@numba.njit(cache=True)
def _minima_sorted(arr):  # pragma: no cover - jitted
    n, k = arr.shape
    keep = np.empty(n, dtype=np.int64)
    h = 0
    for j in range(n):
        dominated = False
        for t in range(h):
            q = keep[t]
            ok = True
            for i in range(k):
                if arr[q, i] > arr[j, i]:
                    ok = False
                    break
            if ok:
                dominated = True
                break
        if not dominated:
            keep[h] = j
            h += 1
    return keep[:h]


def minima(points: Iterable[Sequence[int]]) -> list[tuple]:
    """Componentwise-minimal subset of ``points`` (duplicates collapse to one).

    Points are visited in lexicographic order, so any point weakly dominating
    ``p`` is visited before ``p``.  Two dimensions use a staircase sweep.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        return []
    k = len(pts[0])
    if k == 1:
        return pts[:1]
    if k == 2:
        out = []
        best = math.inf
        for p in pts:
            if p[1] < best:
                out.append(p)
                best = p[1]
        return out
    if len(pts) >= MINIMA_JIT_MIN:
        return [pts[j] for j in _minima_sorted(np.array(pts, dtype=np.int64))]
    out: list[tuple] = []
    for p in pts:
        for q in out:
            for a, b in zip(q, p):
                if a > b:
                    break
            else:
                break
        else:
            out.append(p)
    return out


# -- Quick-DP ---------------------------------------------------------------


def _successor(store: SequenceStore, p: Sequence[int], c: int) -> Optional[tuple]:
    out = []
    for i, w in enumerate(store.windows):
        x = w.occ[c].successor(p[i] + 1)
        if x is None:
            return None
        out.append(x)
    return tuple(out)


def quick_dp_levels(store: SequenceStore, cap: int = QUICKDP_MATCH_CAP) -> list[list[tuple]]:
    """Non-covered matches per level, generated level by level over the whole alphabet."""
    letters = [c for c in range(store.alphabet_size) if store.occurs_everywhere(c)]
    start = (-1,) * store.k
    level = minima(g for g in (_successor(store, start, c) for c in letters) if g is not None)
    out: list[list[tuple]] = []
    seen = 0
    while level:
        out.append(sorted(level, key=lambda p: p[::-1]))
        nxt = set()
        for p in level:
            for c in letters:
                g = _successor(store, p, c)
                if g is not None:
                    nxt.add(g)
        seen += len(nxt)
        if seen > cap:
            raise ResourceLimitError(f"Quick-DP generated more than {cap} matches")
        level = minima(nxt)
    return out


def quick_dp(store: SequenceStore, cap: int = QUICKDP_MATCH_CAP) -> int:
    """MLCS length of the live windows by Quick-DP."""
    return len(quick_dp_levels(store, cap))
