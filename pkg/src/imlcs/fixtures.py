"""Worked example: four strings over {A, B, C} and their level tables.

``FIGURE_STRINGS`` are the strings before the update; the example update
pops the first letter of the fourth string and appends ``C`` to the third.
"""
from __future__ import annotations

from .structure import format_point

FIGURE_STRINGS = [
    "BBBABAAAAABBBACAABCBB",
    "CAACACACBABBACBCAC",
    "ACCBACABBACCCBABACCA",
    "ACAAAACBBACAABCCCCCB",
]

# (string index, letter) / string index, 0-based
FIGURE_APPEND = (2, "C")
FIGURE_POP = 3

TABLE_BEFORE = [
    [(1, 9, 4, 8), (4, 2, 1, 1), (15, 1, 2, 2)],
    [(2, 11, 8, 9), (4, 10, 5, 10), (5, 9, 4, 8), (6, 3, 5, 3), (15, 4, 2, 2), (16, 2, 5, 3)],
    [(3, 12, 9, 14), (4, 13, 10, 10), (5, 11, 8, 14), (6, 10, 5, 10), (7, 5, 7, 4),
     (15, 4, 6, 7), (16, 5, 5, 3), (17, 3, 7, 4), (18, 9, 4, 8), (19, 6, 3, 7)],
    [(5, 15, 14, 14), (6, 17, 15, 12), (7, 13, 7, 12), (8, 7, 10, 5), (11, 9, 8, 8),
     (15, 6, 11, 7), (15, 14, 6, 11), (16, 5, 7, 10), (17, 7, 7, 4), (19, 4, 11, 7),
     (19, 6, 6, 7), (20, 9, 4, 8)],
    [(8, 17, 10, 13), (9, 10, 15, 6), (11, 9, 14, 8), (11, 15, 8, 14), (12, 11, 9, 9),
     (14, 10, 10, 10), (15, 8, 11, 7), (16, 7, 15, 10), (16, 17, 7, 12), (17, 7, 10, 12),
     (18, 9, 8, 8), (19, 6, 11, 11)],
    [(10, 13, 17, 10), (11, 11, 16, 8), (13, 12, 14, 14), (14, 10, 15, 10), (14, 13, 10, 10),
     (15, 14, 18, 7), (18, 9, 14, 8), (19, 8, 11, 15), (19, 8, 18, 11), (20, 11, 9, 9)],
    [(14, 13, 17, 10), (15, 14, 11, 11), (18, 11, 16, 14), (20, 9, 14, 20), (20, 11, 16, 9),
     (21, 12, 14, 14)],
    [(15, 14, 18, 11), (16, 17, 15, 12), (18, 15, 14, 14), (19, 16, 12, 15)],
    [(16, 17, 20, 12), (19, 16, 18, 15)],
]

TABLE_AFTER = [
    [(1, 9, 4, 8), (4, 2, 1, 3), (15, 1, 2, 2)],
    [(2, 11, 8, 9), (4, 10, 5, 10), (5, 9, 4, 8), (6, 3, 5, 4), (15, 4, 2, 7), (16, 2, 5, 3)],
    [(3, 12, 9, 14), (4, 13, 10, 10), (5, 11, 8, 14), (6, 10, 5, 10), (7, 5, 7, 5),
     (15, 4, 6, 7), (16, 5, 5, 10), (17, 3, 7, 4), (18, 9, 4, 8), (19, 6, 3, 11)],
    [(5, 15, 14, 14), (6, 17, 15, 12), (7, 13, 7, 12), (8, 7, 10, 6), (11, 9, 8, 8),
     (15, 6, 11, 7), (15, 14, 6, 11), (16, 5, 7, 10), (19, 4, 11, 7), (19, 6, 6, 11),
     (20, 9, 4, 14)],
    [(8, 17, 10, 13), (9, 10, 15, 10), (11, 9, 14, 8), (11, 15, 8, 14), (12, 11, 9, 9),
     (14, 10, 10, 10), (15, 8, 11, 7), (16, 7, 15, 10), (16, 17, 7, 12), (17, 7, 10, 12),
     (18, 9, 8, 14), (19, 6, 11, 11)],
    [(10, 13, 17, 12), (11, 11, 16, 14), (12, 11, 16, 9), (13, 12, 14, 14), (14, 10, 15, 10),
     (14, 13, 10, 10), (18, 9, 14, 8), (19, 8, 11, 15), (19, 8, 18, 11), (20, 11, 9, 20)],
    [(14, 13, 17, 10), (15, 14, 11, 11), (18, 11, 16, 14), (20, 9, 14, 20), (20, 11, 16, 9)],
    [(15, 14, 18, 11), (16, 17, 15, 12), (18, 15, 14, 14), (19, 16, 12, 15)],
    [(16, 17, 20, 12), (19, 16, 18, 15)],
    [(19, 18, 21, 15)],
]


def format_table(levels) -> str:
    """Render per-level point lists in trace layout (total order: last coordinate first)."""
    return "\n".join(
        f"{i}: " + "; ".join(format_point(p) for p in sorted(level, key=lambda p: p[::-1]))
        for i, level in enumerate(levels, 1)
    )


FIGURE_SCRIPT = "\n".join(
    [f"string {i + 1} {s}" for i, s in enumerate(FIGURE_STRINGS)]
)
FIGURE_UPDATE_SCRIPT = FIGURE_SCRIPT + f"\npop {FIGURE_POP + 1}\nappend {FIGURE_APPEND[0] + 1} {FIGURE_APPEND[1]}"
