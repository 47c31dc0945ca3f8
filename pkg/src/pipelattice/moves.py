"""Generalized ladder and chute moves, cover relations, and enumeration.

A *generalized ladder move* at a cross ``(i, j)`` swaps it with a bump
``(h, k)`` strictly north and east of it, provided the rectangle
``[h, i] x [j, k]`` looks like::

        j       k
    h   .  + ‥ +  .
        +  + ‥ +  +
        ⋮  ⋮    ⋮  ⋮
    i   +  + ‥ +  .

i.e. ``D(i,j) = +``, the three other corners ``(h,j), (i,k), (h,k)`` are
bumps, and every remaining rectangle tile is a cross.  Chute moves are the
inverses; transposition interchanges the two families.  Ladder moves are the
covers of the lattice order studied throughout the package: every move
strictly raises the potential ``sum(col - row)``.

For a cross ``(i, j)`` write ``h_ij`` for the nearest bump row above it in
column ``j`` (if any) and ``k_ij`` for the nearest bump column east of it in
row ``i`` (always defined, since the anti-diagonal tile of every row is a
bump).  The pair pins the candidate rectangle; ladder movability is
equivalent to the rectangle's interior bumps sitting only in row ``h`` and
column ``k`` — both characterizations are computed and compared on every
call as a cheap self-check.
"""

from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Optional

from .errors import DomainError, ResourceError
from .perm import Permutation, inversions
from .pipedream import PipeDream, Tile, d_bot, from_crosses, is_reduced, permutation_of, transpose

__all__ = [
    "LadderTarget",
    "h_of",
    "k_of",
    "max_bump_row",
    "min_bump_col",
    "ladder_movable",
    "chute_movable",
    "apply_ladder",
    "apply_chute",
    "cover_moves",
    "enumerate_rpd",
    "enumerate_rpd_simple_moves",
    "enumerate_rpd_by_subsets",
]


class LadderTarget(NamedTuple):
    """A ladder move: the pivot cross ``(i, j)`` and its destination bump."""

    pivot: Tile
    dest: Tile


def _require_cross(D: PipeDream, i: int, j: int) -> None:
    if not D.is_cross(i, j):
        raise DomainError(f"tile {(i, j)} is not a cross of the dream")


def h_of(D: PipeDream, i: int, j: int) -> Optional[int]:
    """Nearest bump row above ``(i, j)`` in column ``j``; None if the column
    above the pivot is solid crosses.

    >>> D = from_crosses([(2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)], 6)
    >>> h_of(D, 3, 2), h_of(D, 4, 2), h_of(D, 3, 1)
    (1, 1, 2)
    """
    _require_cross(D, i, j)
    for h in range(i - 1, 0, -1):
        if not D.is_cross(h, j):
            return h
    return None


def k_of(D: PipeDream, i: int, j: int) -> int:
    """Nearest bump column east of ``(i, j)`` in row ``i`` (always defined).

    >>> D = from_crosses([(2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)], 6)
    >>> k_of(D, 3, 2)
    4
    """
    _require_cross(D, i, j)
    for k in range(j + 1, D.n + 2 - i):
        if not D.is_cross(i, k):
            return k
    raise DomainError(  # unreachable on legal dreams: (i, n+1-i) is a bump
        f"row {i} has no bump east of column {j}"
    )


def max_bump_row(D: PipeDream, i: int, j: int) -> Optional[int]:
    """Largest row ``r`` in ``[h_ij, i)`` whose stretch of the candidate
    rectangle contains a bump; None when the pivot has no bump above it."""
    h = h_of(D, i, j)
    if h is None:
        return None
    k = k_of(D, i, j)
    for r in range(i - 1, h - 1, -1):
        if any(not D.is_cross(r, c) for c in range(j, k + 1)):
            return r
    raise DomainError(f"rectangle [{h},{i}]x[{j},{k}] has no bump row")


def min_bump_col(D: PipeDream, i: int, j: int) -> Optional[int]:
    """Smallest column ``c`` in ``(j, k_ij]`` whose stretch of the candidate
    rectangle contains a bump; None when the pivot has no bump above it."""
    h = h_of(D, i, j)
    if h is None:
        return None
    k = k_of(D, i, j)
    for c in range(j + 1, k + 1):
        if any(not D.is_cross(r, c) for r in range(h, i + 1)):
            return c
    raise DomainError(f"rectangle [{h},{i}]x[{j},{k}] has no bump column")


def ladder_movable(D: PipeDream, i: int, j: int) -> Optional[LadderTarget]:
    """The ladder move at ``(i, j)`` if one exists, else None.

    Checked two ways — by scanning the rectangle directly and via the
    ``h/k`` criterion (``max_bump_row == h`` and ``min_bump_col == k``) —
    and the two verdicts are asserted to agree.

    >>> D = from_crosses([(2, 1), (2, 2), (3, 1)], 4)
    >>> ladder_movable(D, 2, 2)
    LadderTarget(pivot=(2, 2), dest=(1, 3))
    >>> ladder_movable(D, 2, 1) is None
    True
    """
    _require_cross(D, i, j)
    h = h_of(D, i, j)
    if h is None:
        return None
    k = k_of(D, i, j)

    # Route 1: direct rectangle scan.
    direct = not D.is_cross(h, k) and all(
        D.is_cross(r, c)
        for r in range(h, i + 1)
        for c in range(j, k + 1)
        if (r, c) not in ((i, j), (h, j), (i, k), (h, k))
    )
    # Route 2: the extremal-bump criterion.
    criterion = max_bump_row(D, i, j) == h and min_bump_col(D, i, j) == k
    assert direct == criterion, (
        f"rectangle scan and h/k criterion disagree at {(i, j)}: "
        f"{direct} vs {criterion}"
    )
    return LadderTarget(pivot=(i, j), dest=(h, k)) if direct else None


def chute_movable(D: PipeDream, h: int, k: int) -> Optional[Tile]:
    """The chute destination ``(i, j)`` for the cross ``(h, k)`` if the
    inverse ladder configuration exists; None otherwise.  Computed on the
    transpose, where chutes become ladders."""
    target = ladder_movable(transpose(D), k, h)
    if target is None:
        return None
    (jj, ii) = target.dest
    return (ii, jj)


def apply_ladder(D: PipeDream, i: int, j: int) -> PipeDream:
    """Swap the pivot cross with its destination bump.

    >>> D = from_crosses([(2, 1), (2, 2), (3, 1)], 4)
    >>> apply_ladder(D, 2, 2).sorted_crosses
    ((1, 3), (2, 1), (3, 1))
    """
    target = ladder_movable(D, i, j)
    if target is None:
        raise DomainError(f"tile {(i, j)} is not ladder movable")
    return D.with_crosses(add=[target.dest], remove=[target.pivot])


def apply_chute(D: PipeDream, h: int, k: int) -> PipeDream:
    """Inverse ladder move: push the cross at ``(h, k)`` back down-left.

    ``apply_ladder(apply_chute(D, h, k), i, j)`` restores ``D`` whenever the
    chute exists with destination ``(i, j)``.
    """
    dest = chute_movable(D, h, k)
    if dest is None:
        raise DomainError(f"tile {(h, k)} is not chute movable")
    return D.with_crosses(add=[dest], remove=[(h, k)])


def cover_moves(D: PipeDream) -> list[LadderTarget]:
    """All ladder moves available in ``D``, pivots in reading order.

    These are exactly the covers of ``D`` in the lattice order.
    """
    out = []
    for (i, j) in D.sorted_crosses:
        target = ladder_movable(D, i, j)
        if target is not None:
            out.append(target)
    return out


def _closure(start: PipeDream, moves) -> set[PipeDream]:
    """BFS closure of ``start`` under a move-listing function."""
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for D in frontier:
            for target in moves(D):
                (i, j) = target.pivot
                E = D.with_crosses(add=[target.dest], remove=[target.pivot])
                if E not in seen:
                    seen.add(E)
                    nxt.append(E)
        frontier = nxt
    return seen


def enumerate_rpd(w: Permutation, budget: Optional[int] = None) -> set[PipeDream]:
    """All reduced pipe dreams of ``w``: BFS from ``d_bot(w)`` under ladder
    moves.  ``budget`` caps the number of elements (ResourceError beyond).

    >>> len(enumerate_rpd(Permutation([1, 4, 3, 2])))
    5
    """
    start = d_bot(w)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for D in frontier:
            for target in cover_moves(D):
                E = D.with_crosses(add=[target.dest], remove=[target.pivot])
                if E not in seen:
                    seen.add(E)
                    if budget is not None and len(seen) > budget:
                        raise ResourceError(
                            f"enumeration of RPD({w.to_text()}) exceeded "
                            f"budget {budget}"
                        )
                    nxt.append(E)
        frontier = nxt
    return seen


def enumerate_rpd_simple_moves(w: Permutation) -> set[PipeDream]:
    """Closure from ``d_bot(w)`` using only two-column ladder moves
    (``k = j + 1``).  Must equal :func:`enumerate_rpd`; kept as an
    independent generation route for tests."""

    def simple_moves(D: PipeDream):
        return [t for t in cover_moves(D) if t.dest[1] == t.pivot[1] + 1]

    return _closure(d_bot(w), simple_moves)


def enumerate_rpd_by_subsets(w: Permutation) -> set[PipeDream]:
    """Brute-force enumeration: every ``ell(w)``-subset of legal tiles,
    filtered by reducedness and permutation.  Exponential — guarded to tiny
    inputs and used only to cross-check the BFS route."""
    n = w.n
    ell = len(inversions(w))
    if n > 5 or ell > 6:
        raise ResourceError(
            f"subset enumeration is gated to n <= 5 and ell <= 6 "
            f"(got n={n}, ell={ell})"
        )
    tiles = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1 - i)]
    out = set()
    for combo in itertools.combinations(tiles, ell):
        D = from_crosses(combo, n)
        if permutation_of(D) == w and is_reduced(D):
            out.add(D)
    return out
