"""Crossing tableaux: a complete invariant for reduced pipe dreams.

For each pair of pipes ``x < y`` that cross, record how many left bumps of
pipe ``x`` (tiles where it turns from south-bound to west-bound) lie in
rows strictly south of their crossing.  Indexed by the inversions of
``w⁻¹`` and displayed in the Rothe diagram cell ``(w⁻¹(y), x)``, these
counts order the dreams: coordinate-wise ``≤`` on tableaux is exactly the
ladder-move order.  The filling determines the dream —``from_tableau``
rebuilds it pipe by pipe — and it transforms under a ladder move by a
closed-form increment, both of which the test suite checks exhaustively.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional

from .errors import DomainError, InvalidTableauError
from .moves import ladder_movable
from .perm import Permutation, dots_northwest, inverse, inversions, rothe_diagram
from .pipedream import PipeDream, Tile, cross_strands, d_bot, trace_pipe

__all__ = [
    "Tableau",
    "left_bump_count",
    "tableau_of",
    "tableau_leq",
    "bot_tableau",
    "from_tableau",
    "tableau_after_ladder",
    "format_tableau",
    "tableau_to_json",
    "tableau_from_json",
]


@lru_cache(maxsize=None)
def _bump_vector(w: Permutation) -> tuple[int, ...]:
    """Left-bump count of every pipe, read off the left-justified dream."""
    D = d_bot(w)
    return tuple(len(trace_pipe(D, x).left_bumps) for x in range(1, w.n + 1))


def left_bump_count(w: Permutation, x: int) -> int:
    """Number of left bumps of pipe ``x`` — the same in every dream of
    ``w``, so computed once from the left-justified representative.

    >>> left_bump_count(Permutation([3, 1, 4, 6, 5, 2]), 5)
    4
    >>> left_bump_count(Permutation([1]), 1)
    1
    """
    if not 1 <= x <= w.n:
        raise DomainError(f"pipe {x} out of range for a window of {w.n}")
    return _bump_vector(w)[x - 1]


@dataclass(frozen=True)
class Tableau:
    """An assignment of a positive count to every crossing pair of pipes.

    ``entries`` is a sorted tuple of ``((x, y), t)`` pairs, one for each
    inversion of ``w⁻¹``, with ``1 ≤ t ≤ B_x``.  Construction validates
    both the key set and the bounds, so no invalid tableau circulates.
    """

    w: Permutation
    entries: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.entries]
        expected = inversions(inverse(self.w))
        if len(keys) != len(set(keys)):
            raise InvalidTableauError("duplicate tableau keys")
        if set(keys) != expected:
            missing = sorted(expected - set(keys))
            extra = sorted(set(keys) - expected)
            raise InvalidTableauError(
                f"tableau keys must be the crossing pairs of "
                f"{self.w.to_text()}; missing {missing}, unexpected {extra}"
            )
        if list(self.entries) != sorted(self.entries):
            raise InvalidTableauError("tableau entries must be key-sorted")
        for (x, y), t in self.entries:
            bound = left_bump_count(self.w, x)
            if not 1 <= t <= bound:
                raise InvalidTableauError(
                    f"entry {t} at {(x, y)} outside [1, {bound}]"
                )

    @classmethod
    def from_dict(cls, w: Permutation, mapping: Mapping[tuple[int, int], int]) -> "Tableau":
        return cls(w=w, entries=tuple(sorted(mapping.items())))

    @cached_property
    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def entry(self, x: int, y: int) -> int:
        try:
            return self.as_dict[(x, y)]
        except KeyError:
            raise DomainError(f"pipes {x} and {y} do not cross") from None


def tableau_of(D: PipeDream) -> Tableau:
    """Read the tableau off a reduced dream.

    Each cross is attributed to its vertical (smaller) pipe; the entry for
    that crossing counts the pipe's left bumps strictly south of it.

    >>> D = PipeDream(6, frozenset({(1, 1), (1, 2), (2, 2), (2, 4), (3, 2), (5, 1)}))
    >>> tableau_of(D).entry(5, 6)
    3
    >>> tableau_of(PipeDream(1, frozenset())).entries
    ()
    """
    w = D.permutation
    strands = cross_strands(D)
    pairs = list(strands.values())
    assert len(pairs) == len(set(pairs)), "a pair of pipes crosses twice"
    bump_rows: dict[int, list[int]] = {}
    entries = {}
    for (r, _c), (x, y) in strands.items():
        assert x < y, f"vertical strand {x} not the smaller pipe"
        if x not in bump_rows:
            bump_rows[x] = [tile[0] for tile in trace_pipe(D, x).left_bumps]
        entries[(x, y)] = sum(1 for row in bump_rows[x] if row > r)
    return Tableau.from_dict(w, entries)


def tableau_leq(T1: Tableau, T2: Tableau) -> bool:
    """Coordinate-wise comparison; defined only within one permutation.

    >>> D = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> tableau_leq(tableau_of(D), tableau_of(D))
    True
    """
    if T1.w != T2.w:
        raise DomainError(
            f"tableaux belong to different permutations: "
            f"{T1.w.to_text()} vs {T2.w.to_text()}"
        )
    d2 = T2.as_dict
    return all(t <= d2[key] for key, t in T1.entries)


def bot_tableau(w: Permutation) -> Tableau:
    """The minimum dream's tableau from the closed formula: the full bump
    count minus the dots weakly northwest of the crossing's diagram cell.

    >>> wex = Permutation([3, 1, 4, 6, 5, 2])
    >>> bot_tableau(wex) == tableau_of(d_bot(wex))
    True
    """
    winv = inverse(w)
    entries = {
        (x, y): left_bump_count(w, x) - dots_northwest(w, (winv(y), x))
        for (x, y) in inversions(winv)
    }
    return Tableau.from_dict(w, entries)


# ---------------------------------------------------------------------------
# Reconstruction


class _Grid:
    """Partial dream under construction, tracking which strand of every
    tile is already spoken for."""

    def __init__(self, n: int):
        self.n = n
        self.crosses: set[Tile] = set()
        self.bumps: set[Tile] = set()
        self.cross_v_used: set[Tile] = set()
        self.cross_h_used: set[Tile] = set()
        self.bump_nw_used: set[Tile] = set()
        self.bump_es_used: set[Tile] = set()

    def vacant(self, t: Tile) -> bool:
        return t not in self.crosses and t not in self.bumps

    def in_staircase(self, t: Tile) -> bool:
        return t[0] >= 1 and t[1] >= 1 and t[0] + t[1] <= self.n + 1


def from_tableau(T: Tableau) -> PipeDream:
    """Rebuild the unique dream whose tableau is ``T``.

    Pipes are laid down in increasing order.  Pipe ``x`` descends from the
    top of column ``x``; between consecutive left bumps it must pass
    exactly the crossings whose entry names that stage, so the entry
    multiplicities dictate every tile: place that many new crosses, then
    the bump, walk west through existing crosses (those are the vertical
    crosses of smaller pipes), and turn south at the first tile that is
    not a cross.  Any conflict — a blocked descent, a strand already in
    use, walking off the staircase — identifies ``T`` as not arising from
    a dream and raises an invalid-tableau error naming the pipe and stage.

    >>> D = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> from_tableau(tableau_of(D)) == D
    True
    >>> from_tableau(tableau_of(PipeDream(1, frozenset()))).crosses
    frozenset()
    """
    w = T.w
    n = w.n
    grid = _Grid(n)
    winv = inverse(w)
    stage_counts: dict[int, dict[int, int]] = {x: {} for x in range(1, n + 1)}
    for (x, _y), t in T.entries:
        stage_counts[x][t] = stage_counts[x].get(t, 0) + 1

    exit_rows: dict[int, int] = {}
    for x in range(1, n + 1):
        exit_rows[x] = _lay_pipe(grid, x, left_bump_count(w, x), stage_counts[x])

    built = PipeDream(n, frozenset(grid.crosses))
    if any(exit_rows[x] != winv(x) for x in range(1, n + 1)):
        raise InvalidTableauError(
            "reconstructed pipes realize a different permutation"
        )
    if tableau_of(built) != T:
        raise InvalidTableauError(
            "reconstructed dream does not reproduce the given tableau"
        )
    return built


def _lay_pipe(grid: _Grid, x: int, total_bumps: int, counts: dict[int, int]) -> int:
    """Route pipe ``x`` through the partial grid; return its exit row."""
    if any(t > total_bumps or t < 1 for t in counts):
        raise InvalidTableauError(
            f"pipe {x}: stage outside [1, {total_bumps}]"
        )
    r, c = 1, x
    for stage in range(total_bumps, 0, -1):
        for _ in range(counts.get(stage, 0)):
            tile = (r, c)
            if not grid.in_staircase(tile) or tile[0] + tile[1] > grid.n:
                raise InvalidTableauError(
                    f"pipe {x}, stage {stage}: cross at {tile} leaves the staircase"
                )
            if not grid.vacant(tile):
                raise InvalidTableauError(
                    f"pipe {x}, stage {stage}: descent blocked at {tile}"
                )
            grid.crosses.add(tile)
            grid.cross_v_used.add(tile)
            r += 1
        bump = (r, c)
        if not grid.in_staircase(bump):
            raise InvalidTableauError(
                f"pipe {x}, stage {stage}: bump at {bump} leaves the staircase"
            )
        if bump in grid.crosses:
            raise InvalidTableauError(
                f"pipe {x}, stage {stage}: bump at {bump} collides with a cross"
            )
        if bump in grid.bump_nw_used:
            raise InvalidTableauError(
                f"pipe {x}, stage {stage}: turn at {bump} already taken"
            )
        grid.bumps.add(bump)
        grid.bump_nw_used.add(bump)
        # walk west through existing crosses; afterwards either turn south
        # (more bumps to place) or exit the grid (stage 1 done)
        c -= 1
        while c >= 1 and (r, c) in grid.crosses:
            if (r, c) in grid.cross_h_used:
                raise InvalidTableauError(
                    f"pipe {x}, stage {stage}: strand at {(r, c)} already taken"
                )
            grid.cross_h_used.add((r, c))
            c -= 1
        if stage == 1:
            if c >= 1:
                # stopped on a non-cross tile with no bumps left to place
                raise InvalidTableauError(
                    f"pipe {x}: forced turn at {(r, c)} after its last bump"
                )
            return r
        turn = (r, c)
        if c < 1:
            raise InvalidTableauError(
                f"pipe {x}, stage {stage}: ran off the west edge with "
                f"{stage - 1} bumps still to place"
            )
        if turn in grid.bump_es_used:
            raise InvalidTableauError(
                f"pipe {x}, stage {stage}: turn at {turn} already taken"
            )
        grid.bumps.add(turn)
        grid.bump_es_used.add(turn)
        r += 1
    raise InvalidTableauError(f"pipe {x}: no bumps to place")  # total_bumps >= 1 always


def tableau_after_ladder(T: Tableau, D: PipeDream, pivot: Tile) -> Tableau:
    """Tableau of ``D`` after the ladder move at ``pivot``, by increments.

    The move carries one left bump of the pivot's vertical pipe ``x`` from
    the destination row ``h`` down to the pivot row ``i``; exactly the
    entries whose crossing has ``x`` vertical in rows ``h+1 .. i`` gain 1
    (the pivot crossing itself moves up to row ``h`` and gains alongside).
    Everything else is untouched.  Must equal recomputing the tableau from
    the moved dream, which the tests confirm edge by edge.
    """
    (i, j) = pivot
    target = ladder_movable(D, i, j)
    if target is None:
        raise DomainError(f"tile {pivot} is not ladder movable")
    if T.w != D.permutation:
        # key sets agree automatically once the permutations do — both are
        # pinned to the inversion set at construction
        raise DomainError(
            f"tableau is for {T.w.to_text()}, dream for "
            f"{D.permutation.to_text()}"
        )
    (h, _k) = target.dest
    strands = cross_strands(D)
    x = strands[pivot][0]
    gaining = {
        (v, y)
        for (r, _c), (v, y) in strands.items()
        if v == x and h < r <= i
    }
    entries = {
        key: t + 1 if key in gaining else t for key, t in T.entries
    }
    return Tableau.from_dict(T.w, entries)


# ---------------------------------------------------------------------------
# Serialization


def format_tableau(T: Tableau) -> str:
    """Entries laid out in the Rothe diagram: counts in their cells, '•'
    for the permutation's dots, '.' elsewhere.

    >>> D = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> print(format_tableau(tableau_of(D)))
    • . . .
    . 1 1 •
    . 1 • .
    . • . .
    """
    w = T.w
    n = w.n
    diagram = rothe_diagram(w)
    by_cell = {
        (inverse(w)(y), x): t for (x, y), t in T.entries
    }
    width = max([1] + [len(str(t)) for _, t in T.entries])
    rows = []
    for r in range(1, n + 1):
        cells = []
        for c in range(1, n + 1):
            if (r, c) in diagram.dots:
                cells.append("•".rjust(width))
            elif (r, c) in by_cell:
                cells.append(str(by_cell[(r, c)]).rjust(width))
            else:
                cells.append(".".rjust(width))
        rows.append(" ".join(cells))
    return "\n".join(rows)


def tableau_to_json(T: Tableau) -> str:
    """JSON object mapping "x,y" to the entry, keys in numeric order."""
    return json.dumps({f"{x},{y}": t for (x, y), t in T.entries})


def tableau_from_json(w: Permutation, text: str) -> Tableau:
    """Parse the JSON map produced by :func:`tableau_to_json`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed tableau JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DomainError("tableau JSON must be an object")
    entries = {}
    for key, value in raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise DomainError(f"malformed tableau key {key!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise DomainError(f"malformed tableau key {key!r}") from None
        if not isinstance(value, int) or isinstance(value, bool):
            raise DomainError(f"entry for {key!r} must be an integer")
        entries[(x, y)] = value
    return Tableau.from_dict(w, entries)
