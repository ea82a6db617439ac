"""Incremental MLCS length under Append (end of a string) and Pop (front).

The structure keeps, for every level ``l >= 1``, the non-covered matches whose
maximum level is ``l``: the componentwise-minimal matches among all matches of
that level.  Each level lives in a :class:`~imlcs.ort.RangeTree`.  Level 0 is a
virtual sentinel ``(-1, ..., -1)`` and is never stored.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Optional, Sequence

import numba
import numpy as np

from .ort import INF, RangeTree
from .seqstore import Alphabet, EmptyPopError, SequenceStore

__all__ = ["IncrementalMLCS", "EmptyPopError", "format_point"]


def format_point(p: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


@numba.njit(cache=True)
def _next_minimal(P, q, occ, offsets):  # pragma: no cover - jitted
    """Minimal successor matches of the rows of ``P`` not weakly above ``q``.

    The occurrences of the letter in string ``i`` are the sorted slice
    ``occ[offsets[i]:offsets[i + 1]]``.  Duplicates collapse to one row.
    """
    n, k = P.shape
    G = np.empty((n, k), dtype=np.int64)
    m = 0
    for r in range(n):
        below = False
        for i in range(k):
            if P[r, i] < q[i]:
                below = True
                break
        if not below:
            continue
        ok = True
        for i in range(k):
            lo, hi = offsets[i], offsets[i + 1]
            x = P[r, i]
            while lo < hi:
                mid = (lo + hi) // 2
                if occ[mid] <= x:
                    lo = mid + 1
                else:
                    hi = mid
            if lo == offsets[i + 1]:
                ok = False
                break
            G[m, i] = occ[lo]
        if ok:
            m += 1
    # a row weakly below another has the smaller coordinate sum
    order = np.argsort(G[:m].sum(axis=1), kind="mergesort")
    keep = np.empty(m, dtype=np.int64)
    h = 0
    for j in order:
        dominated = False
        for t in range(h):
            u = keep[t]
            ok = True
            for i in range(k):
                if G[u, i] > G[j, i]:
                    ok = False
                    break
            if ok:
                dominated = True
                break
        if not dominated:
            keep[h] = j
            h += 1
    return G[keep[:h]]


class IncrementalMLCS:
    """Length of a longest common subsequence of ``k`` strings, kept up to date.

    Parameters
    ----------
    k : int
        Number of strings.
    alphabet_size : int
        Symbols are ``0 .. alphabet_size - 1``.
    alpha : float, default 0.75
        Weight-balance factor of the level trees.
    graft : int, optional
        Graft constant of the level trees; see :class:`~imlcs.ort.RangeTree`.
    expected_n : int, optional
        Expected level size, used to pick ``graft`` when it is not given.

    Examples
    --------
    >>> m = IncrementalMLCS.from_strings(["ABC", "ACB"])
    >>> m.mlcs_len()
    2
    >>> m.pop(0)
    >>> m.mlcs_len()
    1
    """

    def __init__(
        self,
        k: int,
        alphabet_size: int,
        alpha: float = 0.75,
        graft: Optional[int] = None,
        expected_n: Optional[int] = None,
    ) -> None:
        self.store = SequenceStore(k, alphabet_size)
        self.k = k
        self.alpha = alpha
        self._tree_args = dict(alpha=alpha, graft=graft, expected_n=expected_n)
        self._levels: list[RangeTree] = []
        self._sentinel = (-1,) * k
        self._bottom = (-INF,) * k
        self._top = (INF,) * k
        # upper bound that no match reaches
        self._no_bound = np.full(k, np.iinfo(np.int64).max, dtype=np.int64)

    @classmethod
    def from_strings(
        cls, strings: Sequence, alphabet_size: Optional[int] = None, **kwargs
    ) -> "IncrementalMLCS":
        """Build by appending ``strings`` letter by letter, string after string.

        Text strings are mapped to symbol ids in first-appearance order.
        """
        if any(isinstance(x, str) for x in strings):
            alphabet = Alphabet()
            strings = [alphabet.encode(x) for x in strings]
            size = len(alphabet)
        else:
            strings = [list(x) for x in strings]
            size = 1 + max((c for x in strings for c in x), default=0)
        obj = cls(len(strings), alphabet_size or size, **kwargs)
        for s, seq in enumerate(strings):
            for c in seq:
                obj.append(s, c)
        return obj

    # -- level bookkeeping ------------------------------------------------

    def _level(self, level: int) -> RangeTree:
        while len(self._levels) < level:
            self._levels.append(RangeTree(self.k, **self._tree_args))
        return self._levels[level - 1]

    def _trim(self) -> None:
        while self._levels and not self._levels[-1]:
            self._levels.pop()

    def levels(self) -> list[list[tuple]]:
        """Stored matches per level (index 0 is level 1), in total order."""
        return [t.enumerate() for t in self._levels]

    def mlcs_len(self) -> int:
        return len(self._levels)

    # -- primitives -------------------------------------------------------

    def generate(self, p: Sequence[int], c: int) -> Optional[tuple]:
        """Componentwise next occurrence of ``c`` strictly after ``p``, or None."""
        out = []
        for i, w in enumerate(self.store.windows):
            x = w.occ[c].successor(p[i] + 1)
            if x is None:
                return None
            out.append(x)
        return tuple(out)

    def _occurrences(self, c: int) -> tuple[np.ndarray, np.ndarray]:
        """Live positions of ``c`` in every string, concatenated, with slice offsets."""
        lists = [list(w.occ[c]) for w in self.store.windows]
        offsets = np.zeros(self.k + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(x) for x in lists])
        return np.fromiter((x for xs in lists for x in xs), dtype=np.int64, count=int(offsets[-1])), offsets

    def cover_insert(self, level: int, q: tuple) -> Optional[list]:
        """Insert match ``q`` at ``level`` unless a stored match weakly dominates it.

        Returns None when ``q`` is rejected, otherwise the list of stored
        matches that ``q`` covered and that were deleted.
        """
        return self._level(level).insert_minimal(q)

    # -- updates ----------------------------------------------------------

    def append(self, s: int, c: int) -> None:
        """Add letter ``c`` at the end of string ``s``."""
        store = self.store
        prev_last = store.last_occ(s, c) if 0 <= c < store.alphabet_size and 0 <= s < self.k else None
        store.append(s, c)
        if not store.occurs_everywhere(c):
            return
        hi = tuple(w.occ[c].back() - 1 for w in store.windows)
        lo = list(self._bottom)
        candidates: list[tuple[int, tuple]] = []
        if prev_last is None:
            candidates.append((0, self.generate(self._sentinel, c)))
        else:
            lo[s] = prev_last
        lo = tuple(lo)
        occ, offsets = self._occurrences(c)
        for level, tree in enumerate(self._levels, 1):
            G = _next_minimal(tree.query_array(lo, hi), self._no_bound, occ, offsets)
            candidates.extend((level, g) for g in map(tuple, G.tolist()))
        for level, g in candidates:
            self.cover_insert(level + 1, g)

    def pop(self, s: int) -> None:
        """Remove the first letter of string ``s``."""
        store = self.store
        if not 0 <= s < self.k:
            raise ValueError(f"string index {s!r} out of range for k={self.k}")
        window = store.windows[s]
        if len(window) == 0:
            raise EmptyPopError("pop from an empty window")
        c = window.letter_at(window.head)
        everywhere = store.occurs_everywhere(c)
        first = tuple(w.occ[c].front() for w in store.windows) if everywhere else None
        store.pop(s)
        if first is None or not self._levels or first not in self._levels[0]:
            return
        self._levels[0].delete(first)
        self._cascade(first, c)
        self._trim()

    def _cascade(self, first: tuple, c: int) -> None:
        store = self.store
        k = self.k
        levels = self._levels
        bottom = self._bottom
        top = self._top
        work = [(1, 0, first, c)]
        seq = 1
        # Levels are finished in increasing order and, while level l is being
        # worked on, it only gains coverage.  A (level, match) pair that was
        # offered once is therefore rejected on every later offer.
        tried: set[tuple[int, tuple]] = set()
        # same argument: support found for an upper match stays valid
        supported: set[tuple[int, tuple]] = set()
        # the windows are fixed for the whole cascade
        occurrences: dict[int, tuple] = {}

        while work:
            level, _, q, d = heapq.heappop(work)

            # uncover: matches of letter d that q used to cover.  Such a match
            # x has x >= q and x_j = q_j for some j, so a source p generating
            # it has no d between p_i and q_i: p_i >= prev_occ(i, d, q_i).
            if store.occurs_everywhere(d):
                if level == 1:
                    batch = [self.generate(self._sentinel, d)]
                else:
                    lower = levels[level - 2]
                    lo = []
                    hi = []
                    for w, x in zip(store.windows, q):
                        occ = w.occ[d]
                        before = occ.predecessor(x)
                        lo.append(-INF if before is None else before)
                        hi.append(occ.back() - 1)
                    # union over j of the boxes with p_j <= q_j - 1: the box
                    # below the last occurrences, minus the points weakly above q
                    sources = lower.query_array(tuple(lo), tuple(hi))
                    if d not in occurrences:
                        occurrences[d] = self._occurrences(d)
                    # a candidate above another candidate would be rejected anyway
                    G = _next_minimal(sources, np.array(q, dtype=np.int64), *occurrences[d])
                    batch = list(map(tuple, G.tolist()))
                for g in batch:
                    if (level, g) not in tried:
                        tried.add((level, g))
                        self.cover_insert(level, g)

            # demote: matches one level up that relied on q
            if level < len(levels):
                upper = levels[level]
                current = levels[level - 1]
                for t in upper.query(tuple(x + 1 for x in q), top):
                    if (level, t) in supported:
                        continue
                    if current.any(bottom, tuple(x - 1 for x in t)):
                        supported.add((level, t))
                        continue
                    upper.delete(t)
                    if (level, t) not in tried:
                        tried.add((level, t))
                        self.cover_insert(level, t)
                    heapq.heappush(work, (level + 1, seq, t, store.letter_at(0, t[0])))
                    seq += 1

    # -- output / checks --------------------------------------------------

    def trace(self) -> str:
        """One line per level, ``<level>: (p1,...,pk); ...``, matches in total order."""
        lines = []
        for level, tree in enumerate(self._levels, 1):
            lines.append(f"{level}: " + "; ".join(format_point(p) for p in tree.enumerate()))
        return "\n".join(lines)

    def check_invariants(self) -> None:
        """Assert minimality per level, match validity and absence of empty levels."""
        store = self.store
        for level, tree in enumerate(self._levels, 1):
            pts = tree.enumerate()
            assert pts, f"empty level {level}"
            for p in pts:
                letters = {store.letter_at(i, x) for i, x in enumerate(p)}
                assert len(letters) == 1, f"{p} is not a match"
                below = tree.query(self._bottom, p)
                assert below == [p], f"{p} is covered at level {level}"
