"""Windowed symbol streams with per-letter occurrence queues.

Positions are absolute and 1-based: ``append`` hands out ``tail + 1`` and
``pop`` advances ``head``.  A position is never renumbered, so match
coordinates stay valid across pops.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Optional


class EmptyPopError(IndexError):
    """Raised when popping from an empty window."""


class _Queue:
    """Sorted int queue: push at the back, pop at the front, successor search."""

    __slots__ = ("items", "start")

    def __init__(self) -> None:
        self.items: list[int] = []
        self.start = 0

    def __len__(self) -> int:
        return len(self.items) - self.start

    def push(self, x: int) -> None:
        self.items.append(x)

    def popleft(self) -> int:
        x = self.items[self.start]
        self.start += 1
        if self.start > 64 and self.start * 2 > len(self.items):
            del self.items[: self.start]
            self.start = 0
        return x

    def front(self) -> Optional[int]:
        return self.items[self.start] if len(self.items) > self.start else None

    def back(self) -> Optional[int]:
        return self.items[-1] if len(self.items) > self.start else None

    def successor(self, x: int) -> Optional[int]:
        i = bisect_left(self.items, x, self.start)
        return self.items[i] if i < len(self.items) else None

    def predecessor(self, x: int) -> Optional[int]:
        """Largest item strictly below ``x``."""
        i = bisect_left(self.items, x, self.start)
        return self.items[i - 1] if i > self.start else None

    def __iter__(self):
        return iter(self.items[self.start:])


class StringWindow:
    """One live window ``[head, tail]`` of a symbol stream."""

    __slots__ = ("head", "tail", "_content", "_base", "occ")

    def __init__(self, alphabet_size: int) -> None:
        self.head = 1
        self.tail = 0
        self._content: list[int] = []
        # position of _content[0]
        self._base = 1
        self.occ = [_Queue() for _ in range(alphabet_size)]

    def __len__(self) -> int:
        return self.tail - self.head + 1

    def append(self, c: int) -> int:
        self.tail += 1
        self._content.append(c)
        self.occ[c].push(self.tail)
        return self.tail

    def pop(self) -> tuple[int, int]:
        if self.tail < self.head:
            raise EmptyPopError("pop from an empty window")
        p = self.head
        c = self._content[p - self._base]
        popped = self.occ[c].popleft()
        assert popped == p
        self.head += 1
        dead = self.head - self._base
        if dead > 64 and dead * 2 > len(self._content):
            del self._content[:dead]
            self._base = self.head
        return c, p

    def letter_at(self, p: int) -> int:
        if not self.head <= p <= self.tail:
            raise IndexError(f"position {p} outside window [{self.head}, {self.tail}]")
        return self._content[p - self._base]

    def letters(self) -> list[int]:
        return self._content[self.head - self._base:]


class SequenceStore:
    """``k`` sliding windows over an alphabet of ``alphabet_size`` symbols.

    Parameters
    ----------
    k : int
        Number of strings, at least 2.
    alphabet_size : int
        Symbols are the integers ``0 .. alphabet_size - 1``.
    """

    def __init__(self, k: int, alphabet_size: int) -> None:
        if k < 2:
            raise ValueError(f"need at least 2 strings, got k={k}")
        if alphabet_size < 1:
            raise ValueError(f"alphabet size must be positive, got {alphabet_size}")
        self.k = k
        self.alphabet_size = alphabet_size
        self.windows = [StringWindow(alphabet_size) for _ in range(k)]

    @classmethod
    def from_sequences(cls, sequences: Iterable[Iterable[int]], alphabet_size: int) -> "SequenceStore":
        sequences = [list(s) for s in sequences]
        store = cls(len(sequences), alphabet_size)
        for s, seq in enumerate(sequences):
            for c in seq:
                store.append(s, c)
        return store

    def _check_string(self, s: int) -> None:
        if not (isinstance(s, int) and 0 <= s < self.k):
            raise ValueError(f"string index {s!r} out of range for k={self.k}")

    def _check_symbol(self, c: int) -> None:
        if not (isinstance(c, int) and 0 <= c < self.alphabet_size):
            raise ValueError(f"symbol {c!r} out of range for alphabet size {self.alphabet_size}")

    def append(self, s: int, c: int) -> int:
        self._check_string(s)
        self._check_symbol(c)
        return self.windows[s].append(c)

    def pop(self, s: int) -> tuple[int, int]:
        """Remove the first letter of string ``s``; return ``(symbol, position)``."""
        self._check_string(s)
        return self.windows[s].pop()

    def first_occ(self, s: int, c: int) -> Optional[int]:
        return self.windows[s].occ[c].front()

    def last_occ(self, s: int, c: int) -> Optional[int]:
        return self.windows[s].occ[c].back()

    def next_occ(self, s: int, c: int, start: int) -> Optional[int]:
        """Smallest live position ``>= start`` holding ``c`` in string ``s``."""
        return self.windows[s].occ[c].successor(start)

    def prev_occ(self, s: int, c: int, before: int) -> Optional[int]:
        """Largest live position ``< before`` holding ``c`` in string ``s``."""
        return self.windows[s].occ[c].predecessor(before)

    def letter_at(self, s: int, p: int) -> int:
        return self.windows[s].letter_at(p)

    def head(self, s: int) -> int:
        return self.windows[s].head

    def tail(self, s: int) -> int:
        return self.windows[s].tail

    def lengths(self) -> list[int]:
        return [len(w) for w in self.windows]

    def letters(self, s: int) -> list[int]:
        """Live content of string ``s``, first letter at ``head(s)``."""
        return self.windows[s].letters()

    def occurs_everywhere(self, c: int) -> bool:
        return all(len(w.occ[c]) for w in self.windows)

    def check_invariants(self) -> None:
        for w in self.windows:
            content = w.letters()
            assert len(content) == len(w) >= 0
            total = 0
            for c, q in enumerate(w.occ):
                pos = list(q)
                assert pos == [w.head + i for i, x in enumerate(content) if x == c]
                total += len(pos)
            assert total == len(w)


class Alphabet:
    """Character to symbol-id map, ids assigned in first-appearance order."""

    def __init__(self, chars: Iterable[str] = ()) -> None:
        self.ids: dict[str, int] = {}
        self.chars: list[str] = []
        for ch in chars:
            self.add(ch)

    def __len__(self) -> int:
        return len(self.chars)

    def __contains__(self, ch: str) -> bool:
        return ch in self.ids

    def add(self, ch: str) -> int:
        if ch not in self.ids:
            self.ids[ch] = len(self.chars)
            self.chars.append(ch)
        return self.ids[ch]

    def encode(self, text: str, grow: bool = True) -> list[int]:
        if grow:
            return [self.add(ch) for ch in text]
        try:
            return [self.ids[ch] for ch in text]
        except KeyError as e:
            raise ValueError(f"letter {e.args[0]!r} not in alphabet") from None

    def decode(self, ids: Iterable[int]) -> str:
        return "".join(self.chars[i] for i in ids)

    def mapping(self) -> str:
        return " ".join(f"{ch}={i}" for i, ch in enumerate(self.chars))
