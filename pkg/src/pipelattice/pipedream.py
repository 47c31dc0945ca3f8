"""Pipe dreams on the staircase grid.

A pipe dream of size ``n`` lives on the staircase of tiles ``(i, j)`` with
``i + j <= n + 1`` (1-based matrix coordinates).  Each tile is either a
*cross* ``+`` or a *bump* ``.``; crosses are only allowed strictly above the
anti-diagonal (``i + j <= n``), so every tile on ``i + j = n + 1`` is a bump.

Pipes enter from the top of the grid, one per column, and exit along the
left edge.  A cross lets both strands pass straight through (north to south,
east to west); a bump joins north to west and east to south.  Reading the
pipe labels down the left edge gives the permutation of the dream.  A dream
is *reduced* when its cross count equals the inversion count of that
permutation, equivalently when no two pipes cross twice.

Left bumps — bump tiles where a pipe enters from the north and exits to the
west — drive the tableau theory in :mod:`pipelattice.tableau`: a pipe meets
at most one left bump per row, so its left bumps are naturally ordered from
south to north.

>>> D = from_crosses([(1, 3), (3, 1), (3, 2), (3, 3), (5, 1)], 6)
>>> permutation_of(D).oneline
(1, 2, 6, 4, 5, 3)
>>> is_reduced(D)
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DomainError
from .perm import Permutation, inverse, rothe_diagram

__all__ = [
    "Tile",
    "PipeDream",
    "PipeTrace",
    "from_crosses",
    "permutation_of",
    "is_reduced",
    "d_bot",
    "d_top",
    "transpose",
    "trace_pipe",
    "cross_strands",
    "parse",
    "format_dream",
    "to_json",
    "from_json",
    "render_unicode",
]

# A tile is a plain (row, col) pair, 1-based.
Tile = tuple[int, int]


@dataclass(frozen=True)
class PipeDream:
    """Immutable cross set on the size-``n`` staircase."""

    n: int
    crosses: frozenset[Tile]

    def is_cross(self, i: int, j: int) -> bool:
        return (i, j) in self.crosses

    def in_staircase(self, i: int, j: int) -> bool:
        """Whether tile ``(i, j)`` exists in the grid."""
        return i >= 1 and j >= 1 and i + j <= self.n + 1

    @cached_property
    def sorted_crosses(self) -> tuple[Tile, ...]:
        """Crosses in row-major (reading) order."""
        return tuple(sorted(self.crosses))

    @cached_property
    def permutation(self) -> Permutation:
        return permutation_of(self)

    @cached_property
    def potential(self) -> int:
        """Sum of ``col - row`` over crosses; strictly raised by every ladder
        move, which makes it a convenient rank-like statistic."""
        return sum(j - i for (i, j) in self.crosses)

    def with_crosses(self, add: Iterable[Tile] = (), remove: Iterable[Tile] = ()) -> "PipeDream":
        """A copy with some tiles toggled (validated like the constructor)."""
        return from_crosses(self.crosses.difference(remove).union(add), self.n)

    def __repr__(self) -> str:
        return f"PipeDream(n={self.n}, crosses={sorted(self.crosses)})"


@dataclass(frozen=True)
class PipeTrace:
    """The full journey of one pipe through a dream.

    ``left_bumps`` is ordered from south to north, so its first element is
    the southmost left bump; the t-th element has exactly ``t - 1`` left
    bumps of the same pipe strictly south of it.
    """

    pipe_label: int
    tiles_visited: tuple[Tile, ...]
    left_bumps: tuple[Tile, ...]
    exit_row: int


def from_crosses(crosses: Iterable[Tile], n: int) -> PipeDream:
    """Build and validate a pipe dream from an iterable of (row, col) pairs.

    >>> from_crosses([(2, 1)], 3).sorted_crosses
    ((2, 1),)
    >>> from_crosses([(2, 2)], 3)
    Traceback (most recent call last):
        ...
    pipelattice.errors.DomainError: cross (2, 2) crosses the anti-diagonal of the n=3 staircase
    """
    if n < 1:
        raise DomainError(f"grid size must be >= 1, got {n}")
    tiles = frozenset((int(i), int(j)) for (i, j) in crosses)
    for (i, j) in sorted(tiles):
        if i < 1 or j < 1:
            raise DomainError(f"cross {(i, j)} has non-positive coordinates")
        if i + j > n:
            raise DomainError(
                f"cross {(i, j)} crosses the anti-diagonal of the n={n} staircase"
            )
    return PipeDream(n=n, crosses=tiles)


def trace_pipe(D: PipeDream, x: int) -> PipeTrace:
    """Follow pipe ``x`` from the top of column ``x`` to the left edge.

    The walk is monotone (every step goes south or west), so it terminates
    in at most ``2n`` tiles.

    >>> t = trace_pipe(from_crosses([(2, 1), (2, 2), (3, 1)], 4), 3)
    >>> t.exit_row, t.left_bumps
    (3, ((3, 2), (1, 3)))
    """
    if not 1 <= x <= D.n:
        raise DomainError(f"pipe label must be in 1..{D.n}, got {x}")
    i, j = 1, x
    from_north = True
    tiles: list[Tile] = []
    bumps_north_to_south: list[Tile] = []
    while True:
        tiles.append((i, j))
        if D.is_cross(i, j):
            exit_west = not from_north
        else:
            exit_west = from_north
            if from_north:
                bumps_north_to_south.append((i, j))
        if exit_west:
            if j == 1:
                exit_row = i
                break
            j -= 1
            from_north = False
        else:
            i += 1
            from_north = True
            if not D.in_staircase(i, j):  # cannot happen on legal dreams
                raise DomainError(
                    f"pipe {x} ran off the staircase at {(i, j)}; "
                    "the cross set is not a legal pipe dream"
                )
    return PipeTrace(
        pipe_label=x,
        tiles_visited=tuple(tiles),
        left_bumps=tuple(reversed(bumps_north_to_south)),
        exit_row=exit_row,
    )


def permutation_of(D: PipeDream) -> Permutation:
    """The permutation read down the left edge (pipe label at each exit row).

    >>> permutation_of(from_crosses([(1, 2), (1, 3), (2, 2)], 4)).oneline
    (1, 4, 3, 2)
    >>> permutation_of(from_crosses([], 3)) == Permutation([1, 2, 3])
    True
    """
    out = [0] * D.n
    for x in range(1, D.n + 1):
        row = trace_pipe(D, x).exit_row
        if out[row - 1]:
            raise DomainError(
                f"pipes {out[row - 1]} and {x} both exit at row {row}; "
                "the cross set is not a legal pipe dream"
            )
        out[row - 1] = x
    return Permutation(out)


def is_reduced(D: PipeDream) -> bool:
    """True iff the cross count equals the inversion count of the permutation.

    >>> is_reduced(from_crosses([(1, 2), (2, 1)], 3))   # pipes 2,3 cross twice
    False
    >>> is_reduced(from_crosses([(1, 1), (2, 1)], 3))
    True
    """
    return len(D.crosses) == permutation_of(D).length


def d_bot(w: Permutation) -> PipeDream:
    """The bottom dream: each Rothe-diagram row pushed flush left.

    >>> d_bot(Permutation([1, 4, 3, 2])).sorted_crosses
    ((2, 1), (2, 2), (3, 1))
    """
    diagram = rothe_diagram(w)
    row_counts: dict[int, int] = {}
    for (i, _) in diagram.cells:
        row_counts[i] = row_counts.get(i, 0) + 1
    crosses = [(i, j) for i, c in row_counts.items() for j in range(1, c + 1)]
    return from_crosses(crosses, w.n)


def d_top(w: Permutation) -> PipeDream:
    """The top dream: each Rothe-diagram column pushed flush to the top.

    >>> d_top(Permutation([1, 4, 3, 2])).sorted_crosses
    ((1, 2), (1, 3), (2, 2))
    """
    diagram = rothe_diagram(w)
    col_counts: dict[int, int] = {}
    for (_, j) in diagram.cells:
        col_counts[j] = col_counts.get(j, 0) + 1
    crosses = [(i, j) for j, c in col_counts.items() for i in range(1, c + 1)]
    return from_crosses(crosses, w.n)


def transpose(D: PipeDream) -> PipeDream:
    """Reflect across the main diagonal; a dream of the inverse permutation.

    >>> transpose(from_crosses([(1, 3), (3, 1), (3, 2), (3, 3), (5, 1)], 6)).sorted_crosses
    ((1, 3), (1, 5), (2, 3), (3, 1), (3, 3))
    """
    return PipeDream(n=D.n, crosses=frozenset((j, i) for (i, j) in D.crosses))


def cross_strands(D: PipeDream) -> dict[Tile, tuple[int, int]]:
    """Map each cross tile to its ``(vertical, horizontal)`` pipe labels.

    The vertical strand enters from the north, the horizontal one from the
    east.  Every cross carries exactly one of each; this is asserted while
    assembling the map from the pipe traces.
    """
    vertical: dict[Tile, int] = {}
    horizontal: dict[Tile, int] = {}
    for x in range(1, D.n + 1):
        tiles = trace_pipe(D, x).tiles_visited
        entered_from_north = True  # every pipe starts by dropping into row 1
        for idx, tile in enumerate(tiles):
            if D.is_cross(*tile):
                book = vertical if entered_from_north else horizontal
                if tile in book:
                    raise DomainError(
                        f"two pipes enter cross {tile} from the same side; "
                        "not a legal pipe dream"
                    )
                book[tile] = x
            if idx + 1 < len(tiles):
                nxt = tiles[idx + 1]
                entered_from_north = nxt[0] == tile[0] + 1
    out: dict[Tile, tuple[int, int]] = {}
    for tile in D.crosses:
        if tile not in vertical or tile not in horizontal:
            raise DomainError(
                f"cross {tile} is not traversed by two pipes; "
                "not a legal pipe dream"
            )
        out[tile] = (vertical[tile], horizontal[tile])
    return out


# ---------------------------------------------------------------------------
# Text and JSON serialization
# ---------------------------------------------------------------------------

def format_dream(D: PipeDream) -> str:
    """Staircase text: row ``i`` holds ``n + 1 - i`` symbols, '+' or '.'.

    >>> print(format_dream(from_crosses([(1, 2), (2, 1)], 3)))
    .+.
    +.
    .
    """
    rows = []
    for i in range(1, D.n + 1):
        rows.append(
            "".join(
                "+" if (i, j) in D.crosses else "."
                for j in range(1, D.n + 2 - i)
            )
        )
    return "\n".join(rows)


def parse(text: str) -> PipeDream:
    """Parse the staircase text format; errors carry line and column.

    >>> parse(".+.\\n+.\\n.").sorted_crosses
    ((1, 2), (2, 1))
    """
    lines = text.rstrip("\n").split("\n")
    if lines == [""]:
        raise DomainError("empty pipe dream text")
    n = len(lines)
    crosses = []
    for i, line in enumerate(lines, start=1):
        expected = n + 1 - i
        if len(line) != expected:
            raise DomainError(
                f"line {i}: expected {expected} symbols for an n={n} "
                f"staircase, got {len(line)}"
            )
        for j, ch in enumerate(line, start=1):
            if ch == "+":
                if i + j == n + 1:
                    raise DomainError(
                        f"line {i}, column {j}: cross on the anti-diagonal"
                    )
                crosses.append((i, j))
            elif ch != ".":
                raise DomainError(
                    f"line {i}, column {j}: unexpected character {ch!r}"
                )
    return from_crosses(crosses, n)


def to_json(D: PipeDream) -> str:
    """Compact JSON: ``{"n": n, "crosses": [[i, j], ...]}`` in reading order."""
    payload = {"n": D.n, "crosses": [list(t) for t in D.sorted_crosses]}
    return json.dumps(payload, separators=(",", ":"))


def from_json(text: str) -> PipeDream:
    """Inverse of :func:`to_json` (also accepts an already-parsed dict)."""
    try:
        data = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as exc:
        raise DomainError(f"bad pipe dream JSON: {exc}") from exc
    try:
        n = int(data["n"])
        crosses = [(int(i), int(j)) for (i, j) in data["crosses"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"bad pipe dream JSON: {exc}") from exc
    return from_crosses(crosses, n)


def render_unicode(D: PipeDream) -> str:
    """Decorative box-drawing rendering with pipe labels.

    Crosses are drawn as a heavy cross, bumps as the pair of quarter turns
    (north-to-west and east-to-south).  Column headers give the entering
    pipe labels; row labels give the exiting pipe (the permutation).
    """
    w = permutation_of(D)
    head = "    " + " ".join(f"{x}" for x in range(1, D.n + 1))
    out = [head]
    for i in range(1, D.n + 1):
        cells = []
        for j in range(1, D.n + 2 - i):
            last = i + j == D.n + 1
            if (i, j) in D.crosses:
                cells.append("╋━")
            else:
                cells.append("┛ " if last else "┛┏")
        label = w(i) if i <= w.n else i
        out.append(f"{label} ← " + "".join(cells).rstrip())
    return "\n".join(out)


# Alias so the pair reads as parse/format at call sites that prefer it.
format = format_dream
