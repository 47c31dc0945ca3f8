"""Shared fixtures: hand-transcribed worked examples frozen as ground truth.

Every dream below was verified two ways before freezing — once by tracing
the tiles by hand, once by an independent computation in the library — so
the tests may compare against them byte for byte.  Coordinates are 1-based
``(row, column)`` throughout.
"""

from __future__ import annotations

import itertools

import pytest

from pipelattice import (
    Permutation,
    PipeDream,
    build_oracle,
    from_crosses,
)

# ---------------------------------------------------------------------------
# construction helpers


def dream(crosses, n: int) -> PipeDream:
    return from_crosses(crosses, n)


def grid15(rows: list[str]) -> PipeDream:
    """A 15-strand grid whose first tiles are given row strings ('+' = cross).

    Tiles beyond the listed window are all bumps.  The result is generally
    *not* reduced — these fixtures exercise the purely local tile geometry
    of paths and moves, which does not need a reduced dream.
    """
    crosses = {
        (r, c)
        for r, line in enumerate(rows, start=1)
        for c, ch in enumerate(line, start=1)
        if ch == "+"
    }
    return from_crosses(crosses, 15)


def window(D: PipeDream, nrows: int, ncols: int) -> str:
    """Render the top-left ``nrows x ncols`` tiles as '+'/'.' rows."""
    return "\n".join(
        "".join("+" if D.is_cross(r, c) else "." for c in range(1, ncols + 1))
        for r in range(1, nrows + 1)
    )


def all_windows(n: int) -> list[Permutation]:
    """Every permutation whose trimmed window is exactly ``n`` long...

    ... except ``n = 1``, which stands for the identity of every size.
    Ranging over ``all_windows(k) for k <= n`` therefore covers the whole
    symmetric group on ``n`` letters without duplicates.
    """
    if n == 1:
        return [Permutation([1])]
    return [
        Permutation(word)
        for word in itertools.permutations(range(1, n + 1))
        if word[-1] != n
    ]


def symmetric_group(n: int) -> list[Permutation]:
    return [w for k in range(1, n + 1) for w in all_windows(k)]


# ---------------------------------------------------------------------------
# the six-strand running example: w = 126543, pivot (3, 2)

W_RUN = Permutation.from_text("126543")
RUN_DREAM = dream([(2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)], 6)
RUN_PIVOT = (3, 2)
# frozen geometry at the pivot: nearest bump above in the column, nearest
# bump east in the row, deepest bump row strictly inside, first bump column
RUN_H, RUN_K = 1, 4
RUN_MAX_BUMP_ROW, RUN_MIN_BUMP_COL = 2, 3

# two dreams above RUN_DREAM with a bump at the pivot; the first is
# reachable using only pivots northeast of (3, 2), the second is not.
RUN_V_MEMBER = dream([(1, 3), (2, 3), (2, 4), (3, 1), (4, 1), (4, 2)], 6)
RUN_V_MEMBER_CHAIN = [(3, 3), (2, 2), (3, 2)]  # ladder pivots, applied in order
RUN_V_NONMEMBER = dream([(1, 3), (1, 4), (2, 3), (2, 4), (3, 1), (4, 2)], 6)
RUN_V_NONMEMBER_CHAIN = [(4, 1), (2, 3), (2, 2), (3, 3), (3, 2)]

# ---------------------------------------------------------------------------
# the worked join: w = 126453

W_JOIN = Permutation.from_text("126453")
JOIN_D1 = dream([(1, 3), (3, 1), (3, 2), (3, 3), (5, 1)], 6)
JOIN_D2 = dream([(1, 4), (1, 5), (2, 2), (3, 2), (5, 1)], 6)
# the algorithm's disagreement tiles in order, with the side holding the cross
JOIN_STEPS = [((3, 1), 1), ((3, 2), 2), ((2, 2), 1)]
JOIN_M31_D1 = dream([(1, 3), (2, 2), (2, 3), (2, 4), (5, 1)], 6)
JOIN_M32_D2 = dream([(1, 3), (1, 4), (1, 5), (2, 3), (5, 1)], 6)
JOIN_RESULT = dream([(1, 3), (1, 4), (1, 5), (2, 3), (5, 1)], 6)

# ---------------------------------------------------------------------------
# move-operator worked grids (15 strands, 6 x 8 window shown)

GRID_PATH = grid15(
    ["...+.+++", "++++++.+", "++.+..++", "+++++...", "++++++++", "+++++++."]
)
GRID_PATH_61 = [
    (6, 8), (5, 8), (4, 8), (4, 7), (4, 6), (3, 6), (3, 5), (3, 4), (3, 3),
    (2, 3), (1, 3), (1, 2), (1, 1),
]

GRID_MOVE = grid15(
    [".+.+.+++", "++++++.+", "++.+..++", "+++++.+.", "++++++++", "+++++++."]
)
GRID_MOVE_PATH_41 = [
    (4, 6), (3, 6), (3, 5), (3, 4), (3, 3), (2, 3), (1, 3), (1, 2), (1, 1),
]
GRID_MOVE_M41 = [
    ".+++.+++", "++++++.+", ".+++++++", ".+.+..+.", "++++++++", "+++++++.",
]
GRID_MOVE_PATH_61_AFTER = [
    (6, 8), (5, 8), (4, 8), (4, 7), (4, 6), (4, 5), (4, 4), (4, 3), (4, 2),
    (4, 1),
]
GRID_MOVE_FINAL = [
    ".+++.+++", "++++++.+", ".+++++++", ".+++++++", "++++++++", ".+.+..+.",
]

# ---------------------------------------------------------------------------
# smaller frozen move examples

# a single generalized ladder move spanning a 3 x 5 rectangle
LADDER_WIDE = dream(
    [(1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5),
     (3, 1), (3, 2), (3, 3), (3, 4)],
    7,
)
LADDER_WIDE_PIVOT = (3, 1)
LADDER_WIDE_DEST = (1, 5)

# two overlapping-rectangle routes that land on the same dream
DIAMOND = dream(
    [(1, 2), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3),
     (4, 1), (4, 2)],
    6,
)
DIAMOND_TOP_ROUTE = [(3, 3), (3, 1), (4, 1)]  # ladder pivots, applied in order
DIAMOND_BOT_ROUTE = [(4, 1), (3, 1)]
DIAMOND_FINAL = dream(
    [(1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3),
     (4, 2)],
    6,
)

# ladder whose tableau update window is a single row: entry (2, 4) gains,
# entry (2, 3) — whose crossing sits above the destination row — does not
NARROW = dream([(1, 2), (3, 1)], 4)
NARROW_PIVOT = (3, 1)
NARROW_BEFORE = {(2, 3): 2, (2, 4): 1}
NARROW_AFTER = {(2, 3): 2, (2, 4): 2}

# ---------------------------------------------------------------------------
# the tableau figure: w = 314652, an inner dream and the maximum

W_FIG = Permutation.from_text("314652")
FIG_DREAM = dream([(1, 1), (1, 2), (2, 2), (2, 4), (3, 2), (5, 1)], 6)
FIG_TABLEAU = {(1, 3): 1, (2, 3): 2, (2, 4): 2, (2, 5): 1, (2, 6): 2, (5, 6): 3}
FIG_TOP_TABLEAU = {(1, 3): 1, (2, 3): 2, (2, 4): 2, (2, 5): 2, (2, 6): 2, (5, 6): 4}
FIG_BUMP_COUNTS = {1: 1, 2: 2, 3: 1, 4: 3, 5: 4, 6: 4}

# ---------------------------------------------------------------------------
# assorted frozen sizes

FIBER_SIZES = {"1432": 5, "126543": 84, "126453": 46, "314652": 15, "321": 1}

D_BOT_1432 = dream([(2, 1), (2, 2), (3, 1)], 4)
D_TOP_1432 = dream([(1, 2), (1, 3), (2, 2)], 4)


# ---------------------------------------------------------------------------
# oracle cache: exhaustive posets are immutable, so share them per session


@pytest.fixture(scope="session")
def oracle_for():
    cache: dict[tuple, object] = {}

    def build(w: Permutation, budget=None):
        key = (w.oneline, budget)
        if key not in cache:
            cache[key] = build_oracle(w, budget)
        return cache[key]

    return build
