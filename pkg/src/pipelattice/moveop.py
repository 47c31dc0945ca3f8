"""The upward move operator M on reduced pipe dreams.

A cross ``(i, j)`` with at least one bump above it in its column is
*movable*: among all dreams reachable from ``D`` by ladder moves whose
pivots sit weakly northeast of ``(i, j)`` (rows ``<= i``, columns ``>= j``),
some have a bump at ``(i, j)``, and that set — :func:`v_set` — has a unique
minimal element ``M_ij(D)`` in the lattice order.  When the rectangle of
``(i, j)`` is clean, ``M_ij`` is just the ladder move; otherwise it factors
through a nearer pivot.

The operator is computed three independent ways:

* :func:`m_explicit` — the production route: walk the monotone *path* from
  ``(i, k)`` to ``(h, j)`` through the rectangle and rewrite the tiles it
  marks, no recursion;
* :func:`m_recursive` — peel off the blocking bump row first;
* :func:`m_prime` — peel off the blocking bump column first.

All three must agree everywhere; the test suite sweeps that equivalence and
:func:`v_set` minimality exhaustively at small rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import DomainError
from .moves import (
    apply_ladder,
    h_of,
    k_of,
    ladder_movable,
    max_bump_row,
    min_bump_col,
)
from .pipedream import PipeDream, Tile

__all__ = [
    "MoveContext",
    "PathShape",
    "movable",
    "move_context",
    "path_of",
    "shape_of",
    "m_explicit",
    "m_recursive",
    "m_prime",
    "v_set",
    "southwest_weak",
    "sw_incomparable",
    "northeast_weak",
    "big_composition",
    "check_commutations",
]


def southwest_weak(t: Tile, u: Tile) -> bool:
    """True iff ``t`` is weakly southwest of ``u`` (includes ``t == u``)."""
    return t[0] >= u[0] and t[1] <= u[1]


def northeast_weak(t: Tile, u: Tile) -> bool:
    """True iff ``t`` is weakly northeast of ``u`` (includes ``t == u``)."""
    return t[0] <= u[0] and t[1] >= u[1]


def sw_incomparable(t: Tile, u: Tile) -> bool:
    """Neither tile weakly southwest of the other."""
    return not southwest_weak(t, u) and not southwest_weak(u, t)


class MoveContext(NamedTuple):
    """Geometry of a movable cross: its rectangle and blocking extremes.

    ``h``/``k`` locate the nearest bump above in the column / east in the
    row; ``max_bump_row`` is the southmost rectangle row carrying a bump,
    ``min_bump_col`` the westmost rectangle column east of the pivot doing
    so.  The move is a plain ladder move exactly when those extremes sit on
    the rectangle boundary (``max_bump_row == h`` and ``min_bump_col == k``).
    """

    pivot: Tile
    h: int
    k: int
    max_bump_row: int
    min_bump_col: int

    @property
    def rect(self) -> frozenset[Tile]:
        (i, j) = self.pivot
        return frozenset(
            (r, c) for r in range(self.h, i + 1) for c in range(j, self.k + 1)
        )


@dataclass(frozen=True)
class PathShape:
    """The marked path of a movable cross and the region it sweeps.

    ``path`` runs in traversal order from ``(i, k)`` to ``(h, j)``, moving
    only north and west.  ``corners`` are its turning tiles (always bumps);
    ``shape`` is every rectangle tile weakly south of the path in its
    column; ``bump_rows``/``bump_cols`` collect the rows and columns of the
    path's bump tiles — the data :func:`m_explicit` rewrites.
    """

    context: MoveContext
    path: tuple[Tile, ...]
    corners: frozenset[Tile]
    shape: frozenset[Tile]
    bump_rows: frozenset[int]
    bump_cols: frozenset[int]


def move_context(D: PipeDream, i: int, j: int) -> Optional[MoveContext]:
    """Geometry of the move at ``(i, j)``: None if the tile is not a cross
    or has no bump above it in column ``j``.

    >>> D = PipeDream(6, frozenset({(2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)}))
    >>> move_context(D, 3, 2)
    MoveContext(pivot=(3, 2), h=1, k=4, max_bump_row=2, min_bump_col=3)
    >>> move_context(D, 2, 2).max_bump_row
    1
    """
    if not D.is_cross(i, j):
        return None
    h = h_of(D, i, j)
    if h is None:
        return None
    k = k_of(D, i, j)
    a = max_bump_row(D, i, j)
    b = min_bump_col(D, i, j)
    assert h <= a < i and j < b <= k, f"extreme bumps out of range at {(i, j)}"
    return MoveContext(pivot=(i, j), h=h, k=k, max_bump_row=a, min_bump_col=b)


def movable(D: PipeDream, i: int, j: int) -> bool:
    """True iff ``(i, j)`` is a cross with a bump above it in column ``j``.

    >>> D = PipeDream(6, frozenset({(2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)}))
    >>> movable(D, 3, 2)
    True
    >>> movable(D, 3, 1)  # (2, 1) is a bump above it
    True
    >>> movable(D, 1, 1)  # not a cross at all
    False
    """
    return move_context(D, i, j) is not None


def _require_movable(D: PipeDream, i: int, j: int) -> MoveContext:
    ctx = move_context(D, i, j)
    if ctx is None:
        raise DomainError(f"tile {(i, j)} is not movable")
    return ctx


def path_of(D: PipeDream, i: int, j: int) -> PathShape:
    """Walk the path of the move at ``(i, j)``.

    From ``(i, k)`` repeatedly: climb to the southmost row strictly above
    that still has a bump west of the current column (within the
    rectangle's column range), then slide west to that row's first bump at
    or east of column ``j``; stop on reaching column ``j``.

    >>> D = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> path_of(D, 2, 2).path
    ((2, 3), (1, 3), (1, 2))
    >>> sorted(path_of(D, 2, 2).shape)
    [(1, 2), (1, 3), (2, 2), (2, 3)]
    """
    ctx = _require_movable(D, i, j)
    h, k = ctx.h, ctx.k
    path: list[Tile] = [(i, k)]
    p, q = i, k
    while True:
        candidates = [
            r
            for r in range(h, p)
            if any(not D.is_cross(r, c) for c in range(j, q + 1))
        ]
        assert candidates, f"path stalled at {(p, q)}: no bump row above"
        p_new = max(candidates)
        path.extend((r, q) for r in range(p - 1, p_new - 1, -1))
        q_new = next(t for t in range(j, q + 1) if not D.is_cross(p_new, t))
        path.extend((p_new, c) for c in range(q - 1, q_new - 1, -1))
        if q_new == j:
            break
        p, q = p_new, q_new

    tiles = set(path)
    corners = frozenset(
        (p, q)
        for (p, q) in tiles
        if ((p - 1, q) in tiles and (p, q + 1) in tiles)
        or ((p, q - 1) in tiles and (p + 1, q) in tiles)
    )
    top_row = {c: min(r for (r, cc) in tiles if cc == c) for c in range(j, k + 1)}
    shape = frozenset(
        (r, c) for c in range(j, k + 1) for r in range(top_row[c], i + 1)
    )
    bumps = [t for t in path if not D.is_cross(*t)]
    return PathShape(
        context=ctx,
        path=tuple(path),
        corners=corners,
        shape=shape,
        bump_rows=frozenset(r for (r, _) in bumps),
        bump_cols=frozenset(c for (_, c) in bumps),
    )


def shape_of(D: PipeDream, i: int, j: int) -> frozenset[Tile]:
    """The swept region of the move at ``(i, j)`` (convenience wrapper)."""
    return path_of(D, i, j).shape


def m_explicit(D: PipeDream, i: int, j: int) -> PipeDream:
    """Apply the move at ``(i, j)`` by rewriting along its path.

    Every row holding a path bump loses its column-``j`` cross, every
    column holding one loses its row-``i`` cross, and the path bumps
    themselves become crosses — except the two endpoints, which remain
    bumps.  The pivot ends up a bump and the permutation is unchanged.

    >>> D = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> sorted(m_explicit(D, 2, 2).crosses)
    [(1, 3), (2, 1), (3, 1)]
    """
    ps = path_of(D, i, j)
    h, k = ps.context.h, ps.context.k
    endpoints = {(h, j), (i, k)}
    bumps = [t for t in ps.path if not D.is_cross(*t)]
    remove = {(r, j) for r in ps.bump_rows if D.is_cross(r, j)}
    remove |= {(i, c) for c in ps.bump_cols if D.is_cross(i, c)}
    add = {t for t in bumps if t not in endpoints}
    return D.with_crosses(add=add, remove=remove)


def m_recursive(D: PipeDream, i: int, j: int) -> PipeDream:
    """Apply the move at ``(i, j)`` by peeling the blocking row first.

    If the rectangle is clean this is the ladder move; if the southmost
    bump row ``a`` sits strictly below ``h``, move at ``(a, j)`` first;
    otherwise move at ``(i, b)`` for the westmost bump column ``b``.
    """
    ctx = _require_movable(D, i, j)
    a, b = ctx.max_bump_row, ctx.min_bump_col
    if a == ctx.h and b == ctx.k:
        return apply_ladder(D, i, j)
    if a > ctx.h:
        return m_recursive(m_recursive(D, a, j), i, j)
    return m_recursive(m_recursive(D, i, b), i, j)


def m_prime(D: PipeDream, i: int, j: int) -> PipeDream:
    """Apply the move at ``(i, j)`` by peeling the blocking column first.

    Mirror of :func:`m_recursive`: prefer clearing the westmost bump
    column ``b`` before the southmost bump row ``a``.
    """
    ctx = _require_movable(D, i, j)
    a, b = ctx.max_bump_row, ctx.min_bump_col
    if a == ctx.h and b == ctx.k:
        return apply_ladder(D, i, j)
    if b < ctx.k:
        return m_prime(m_prime(D, i, b), i, j)
    return m_prime(m_prime(D, a, j), i, j)


def v_set(D: PipeDream, i: int, j: int) -> set[PipeDream]:
    """All dreams with a bump at ``(i, j)`` reachable from ``D`` by ladder
    moves whose pivots are weakly northeast of ``(i, j)``.

    The pivot tile itself counts as weakly northeast.  ``(i, j)`` is
    movable iff this set is nonempty, and ``M_ij(D)`` is its unique
    minimal element — a fact the tests verify against the lattice order.
    """
    seen = {D}
    frontier = [D]
    while frontier:
        nxt = []
        for E in frontier:
            for (p, q) in E.sorted_crosses:
                if not (p <= i and q >= j):
                    continue
                target = ladder_movable(E, p, q)
                if target is None:
                    continue
                F = E.with_crosses(add=[target.dest], remove=[target.pivot])
                if F not in seen:
                    seen.add(F)
                    nxt.append(F)
        frontier = nxt
    return {E for E in seen if not E.is_cross(i, j)}


def big_composition(D: PipeDream, tiles) -> PipeDream:
    """Apply the moves at a set of pairwise-incomparable pivots, row-major.

    Every pivot must be movable in ``D`` and no two may be weakly
    southwest of one another; under those preconditions the moves commute,
    so the reading order is immaterial (the tests check as much).
    """
    pivots = sorted(set(tiles))
    for t in pivots:
        if not movable(D, *t):
            raise DomainError(f"tile {t} is not movable")
    for t, u in itertools.combinations(pivots, 2):
        if not sw_incomparable(t, u):
            raise DomainError(
                f"pivots {t} and {u} are southwest-comparable"
            )
    out = D
    for t in pivots:
        out = m_explicit(out, *t)
    return out


def _record(rule: str, first: Tile, second: Tile, ok: bool, detail: str = "") -> dict:
    return {"rule": rule, "first": first, "second": second, "ok": ok, "detail": detail}


def check_commutations(D: PipeDream) -> list[dict]:
    """Exercise every commutation guarantee available in ``D``.

    Returns one record per applicable instance of the four rules below;
    ``ok`` is False when a guarantee is violated (the sweeps expect none).

    * ``southwest_incomparable``: moves at SW-incomparable pivots commute.
    * ``ladder_after_move``: a ladder pivot strictly south / weakly east
      (or weakly north / strictly west) of a movable tile survives its
      move and commutes with it.
    * ``disjoint_shapes``: moves whose shapes are disjoint commute.
    * ``northeast_outside_shape``: a movable pivot weakly northeast of
      another and outside its shape commutes with it.
    """
    records = []
    crosses = D.sorted_crosses
    movables = [t for t in crosses if movable(D, *t)]
    shapes = {t: shape_of(D, *t) for t in movables}

    for t, u in itertools.combinations(movables, 2):
        both_ways_ok = None
        if sw_incomparable(t, u):
            both_ways_ok = _commute_mm(D, t, u)
            records.append(
                _record("southwest_incomparable", t, u, *both_ways_ok)
            )
        if shapes[t].isdisjoint(shapes[u]):
            if both_ways_ok is None:
                both_ways_ok = _commute_mm(D, t, u)
            records.append(_record("disjoint_shapes", t, u, *both_ways_ok))

    for t in movables:
        (i, j) = t
        for u in movables:
            (p, q) = u
            if u != t and p <= i and q >= j and u not in shapes[t]:
                records.append(
                    _record("northeast_outside_shape", t, u, *_commute_mm(D, t, u))
                )
        for u in crosses:
            (p, q) = u
            if ladder_movable(D, p, q) is None:
                continue
            if (p > i and q >= j) or (p <= i and q < j):
                after_m = m_explicit(D, i, j)
                if ladder_movable(after_m, p, q) is None:
                    records.append(
                        _record(
                            "ladder_after_move", t, u, False,
                            "ladder pivot lost after move",
                        )
                    )
                    continue
                lhs = apply_ladder(after_m, p, q)
                after_l = apply_ladder(D, p, q)
                if not movable(after_l, i, j):
                    records.append(
                        _record(
                            "ladder_after_move", t, u, False,
                            "movable pivot lost after ladder",
                        )
                    )
                    continue
                rhs = m_explicit(after_l, i, j)
                records.append(
                    _record("ladder_after_move", t, u, lhs == rhs,
                            "" if lhs == rhs else "compositions differ")
                )
    return records


def _commute_mm(D: PipeDream, t: Tile, u: Tile) -> tuple[bool, str]:
    """Both orders of the two moves exist and agree."""
    Dt = m_explicit(D, *t)
    Du = m_explicit(D, *u)
    if not movable(Dt, *u):
        return False, f"{u} not movable after move at {t}"
    if not movable(Du, *t):
        return False, f"{t} not movable after move at {u}"
    lhs = m_explicit(Dt, *u)
    rhs = m_explicit(Du, *t)
    return lhs == rhs, "" if lhs == rhs else "compositions differ"
