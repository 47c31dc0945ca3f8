"""Join and meet on reduced pipe dreams, plus a brute-force poset oracle.

The order in play is the reflexive-transitive closure of generalized
ladder moves.  Its join has a direct algorithm: locate the *principal
disagreement* of the two dreams — the differing tile that is minimal in
the order "larger row first, then smaller column" — and move the dream
holding a cross there upward with the move operator; repeat until the
dreams coincide.  Meet is the same computation conjugated by transposition
(which maps ``RPD(w)`` order-reversingly onto ``RPD(w⁻¹)``).

:class:`PosetOracle` is the independent verification route: enumerate all
of ``RPD(w)``, build the cover relation from scratch, and compute joins
and meets as unique minimal upper / maximal lower bounds of the explicit
reachability relation, with uniqueness *asserted* on every query.  The
production algorithms never consult it; tests confront the two routes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import (
    DomainError,
    InternalInvariantError,
    ResourceError,
    VerificationError,
)
from .moves import cover_moves, enumerate_rpd
from .moveop import big_composition, m_explicit, movable, southwest_weak
from .perm import Permutation
from .pipedream import PipeDream, Tile, d_bot, d_top, format_dream, transpose

__all__ = [
    "Disagreement",
    "principal_disagreement",
    "upper_bump_check",
    "join",
    "meet",
    "leq",
    "leq_by_extremal",
    "PosetOracle",
    "build_oracle",
    "DEFAULT_ORACLE_BUDGET",
    "ORACLE_BUDGET_ENV",
]

DEFAULT_ORACLE_BUDGET = 200_000
ORACLE_BUDGET_ENV = "PIPELATTICE_ORACLE_BUDGET"


class Disagreement(NamedTuple):
    """A tile where two dreams differ, tagged with who holds the cross."""

    tile: Tile
    side: int  # 1 if the first dream has the cross there, else 2


def _require_same_permutation(D1: PipeDream, D2: PipeDream) -> None:
    if D1.permutation != D2.permutation:
        raise DomainError(
            f"dreams belong to different permutations: "
            f"{D1.permutation.to_text()} vs {D2.permutation.to_text()}"
        )


def principal_disagreement(D1: PipeDream, D2: PipeDream) -> Disagreement:
    """The differing tile with the largest row, then the smallest column.

    >>> a = PipeDream(6, frozenset({(1, 3), (3, 1), (3, 2), (3, 3), (5, 1)}))
    >>> b = PipeDream(6, frozenset({(1, 4), (1, 5), (2, 2), (3, 2), (5, 1)}))
    >>> principal_disagreement(a, b)
    Disagreement(tile=(3, 1), side=1)
    """
    _require_same_permutation(D1, D2)
    diff = D1.crosses ^ D2.crosses
    if not diff:
        raise DomainError("dreams are equal; no disagreement exists")
    tile = min(diff, key=lambda t: (-t[0], t[1]))
    return Disagreement(tile=tile, side=1 if D1.is_cross(*tile) else 2)


def upper_bump_check(D1: PipeDream, D2: PipeDream) -> Tile:
    """Runtime guard for the join loop: at the principal disagreement the
    dream holding the cross must be movable there.

    Requires the cross to sit in ``D1``.  Non-movability would break the
    join algorithm's well-definedness, so it surfaces as an internal
    invariant failure, never as a user-facing error.
    """
    dis = principal_disagreement(D1, D2)
    if dis.side != 1:
        raise DomainError(
            f"principal disagreement {dis.tile} holds its cross in the "
            f"second dream, not the first"
        )
    (i, j) = dis.tile
    if not movable(D1, i, j):
        raise InternalInvariantError(
            f"cross at principal disagreement {dis.tile} is not movable"
        )
    return dis.tile


def _potential_headroom(D1: PipeDream, D2: PipeDream) -> int:
    """Loop bound for join: every move strictly raises the moved side's
    potential, which is capped by the maximum dream's."""
    top_pot = d_top(D1.permutation).potential
    return (top_pot - D1.potential) + (top_pot - D2.potential) + 1


def join_with_depth(D1: PipeDream, D2: PipeDream) -> tuple[PipeDream, int]:
    """Join along with the number of move steps taken (a termination
    witness: tests confirm it never exceeds the size of ``RPD(w)``)."""
    _require_same_permutation(D1, D2)
    a, b = D1, D2
    limit = _potential_headroom(D1, D2)
    steps = 0
    while a != b:
        if steps > limit:
            raise InternalInvariantError(
                f"join failed to converge within {limit} moves"
            )
        if principal_disagreement(a, b).side == 1:
            tile = upper_bump_check(a, b)
            a = m_explicit(a, *tile)
        else:
            tile = upper_bump_check(b, a)
            b = m_explicit(b, *tile)
        steps += 1
    return a, steps


def join(D1: PipeDream, D2: PipeDream) -> PipeDream:
    """Least upper bound in the ladder-move order.

    >>> a = PipeDream(6, frozenset({(1, 3), (3, 1), (3, 2), (3, 3), (5, 1)}))
    >>> b = PipeDream(6, frozenset({(1, 4), (1, 5), (2, 2), (3, 2), (5, 1)}))
    >>> sorted(join(a, b).crosses)
    [(1, 3), (1, 4), (1, 5), (2, 3), (5, 1)]
    >>> join(a, a) == a
    True
    """
    return join_with_depth(D1, D2)[0]


def meet(D1: PipeDream, D2: PipeDream) -> PipeDream:
    """Greatest lower bound: transpose, join among ``RPD(w⁻¹)``, transpose.

    >>> a = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> meet(a, a) == a
    True
    """
    _require_same_permutation(D1, D2)
    return transpose(join(transpose(D1), transpose(D2)))


def leq(D1: PipeDream, D2: PipeDream) -> bool:
    """True iff ``D1`` is below ``D2``: their join is ``D2`` itself."""
    return join(D1, D2) == D2


def leq_by_extremal(D1: PipeDream, D2: PipeDream) -> bool:
    """Comparability test via southwest-extremal disagreements.

    Collect the differing tiles with no other differing tile weakly
    southwest of them.  ``D1`` can only be below ``D2`` if it holds a
    movable cross at every one of them; if so, move them all at once
    (they are pairwise southwest-incomparable) and repeat.

    >>> a = PipeDream(4, frozenset({(2, 1), (2, 2), (3, 1)}))
    >>> leq_by_extremal(a, a)
    True
    """
    _require_same_permutation(D1, D2)
    a = D1
    limit = _potential_headroom(D1, D2)
    rounds = 0
    while a != D2:
        if rounds > limit:
            raise InternalInvariantError(
                f"extremal comparability loop exceeded {limit} rounds"
            )
        diff = a.crosses ^ D2.crosses
        extremal = [
            t
            for t in diff
            if not any(u != t and southwest_weak(u, t) for u in diff)
        ]
        if not all(a.is_cross(*t) for t in extremal):
            return False
        if not all(movable(a, *t) for t in extremal):
            return False  # holds the cross but cannot rise
        a = big_composition(a, extremal)
        rounds += 1
    return True


@dataclass
class PosetOracle:
    """Explicit reachability data for all of ``RPD(w)``.

    ``elements`` is sorted by (potential, text) — a linear extension,
    since every cover strictly raises potential.  ``up``/``down`` are
    per-element bitmasks over element indices of the weak order filters
    and ideals.  Join and meet queries assert the bound they return is
    the unique minimal/maximal one, so every successful sweep is a
    from-scratch proof of the lattice property at that size.
    """

    w: Permutation
    elements: list[PipeDream]
    index: dict[PipeDream, int]
    covers: list[list[int]]
    up: list[int]
    down: list[int]

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def edge_count(self) -> int:
        return sum(len(c) for c in self.covers)

    def idx(self, D: PipeDream) -> int:
        try:
            return self.index[D]
        except KeyError:
            raise DomainError("dream is not an element of this oracle") from None

    def oracle_leq(self, D1: PipeDream, D2: PipeDream) -> bool:
        return bool((self.up[self.idx(D1)] >> self.idx(D2)) & 1)

    def oracle_join_idx(self, ia: int, ib: int) -> int:
        common = self.up[ia] & self.up[ib]
        if common == 0:
            raise VerificationError(
                f"elements {ia} and {ib} have no common upper bound"
            )
        lowest = (common & -common).bit_length() - 1
        if common & ~self.up[lowest]:
            raise VerificationError(
                f"elements {ia} and {ib} have multiple minimal upper bounds"
            )
        return lowest

    def oracle_meet_idx(self, ia: int, ib: int) -> int:
        common = self.down[ia] & self.down[ib]
        if common == 0:
            raise VerificationError(
                f"elements {ia} and {ib} have no common lower bound"
            )
        highest = common.bit_length() - 1
        if common & ~self.down[highest]:
            raise VerificationError(
                f"elements {ia} and {ib} have multiple maximal lower bounds"
            )
        return highest

    def oracle_join(self, D1: PipeDream, D2: PipeDream) -> PipeDream:
        return self.elements[self.oracle_join_idx(self.idx(D1), self.idx(D2))]

    def oracle_meet(self, D1: PipeDream, D2: PipeDream) -> PipeDream:
        return self.elements[self.oracle_meet_idx(self.idx(D1), self.idx(D2))]


def build_oracle(w: Permutation, budget: Optional[int] = None) -> PosetOracle:
    """Enumerate ``RPD(w)`` and materialize the order.

    The element budget defaults to 200,000 and can be overridden by the
    ``PIPELATTICE_ORACLE_BUDGET`` environment variable or the ``budget``
    argument; exceeding it raises a resource error.

    >>> oracle = build_oracle(Permutation([1, 4, 3, 2]))
    >>> oracle.size
    5
    >>> oracle.oracle_leq(oracle.elements[0], oracle.elements[-1])
    True
    """
    if budget is None:
        budget = int(os.environ.get(ORACLE_BUDGET_ENV, DEFAULT_ORACLE_BUDGET))
    elements = sorted(
        enumerate_rpd(w, budget=budget),
        key=lambda D: (D.potential, format_dream(D)),
    )
    index = {D: i for i, D in enumerate(elements)}
    covers: list[list[int]] = []
    for D in elements:
        kids = sorted(
            index[D.with_crosses(add=[t.dest], remove=[t.pivot])]
            for t in cover_moves(D)
        )
        covers.append(kids)

    size = len(elements)
    up = [0] * size
    for i in range(size - 1, -1, -1):
        mask = 1 << i
        for child in covers[i]:
            mask |= up[child]
        up[i] = mask
    down = [1 << i for i in range(size)]
    for i in range(size):
        for child in covers[i]:
            down[child] |= down[i]

    oracle = PosetOracle(
        w=w, elements=elements, index=index, covers=covers, up=up, down=down
    )
    _check_global_bounds(oracle)
    return oracle


def _check_global_bounds(oracle: PosetOracle) -> None:
    """The order must have exactly one maximal and one minimal element —
    the top-justified and left-justified dreams."""
    maximal = [i for i, kids in enumerate(oracle.covers) if not kids]
    has_parent = [False] * oracle.size
    for kids in oracle.covers:
        for child in kids:
            has_parent[child] = True
    minimal = [i for i, flag in enumerate(has_parent) if not flag]
    top = d_top(oracle.w)
    bot = d_bot(oracle.w)
    if maximal != [oracle.idx(top)]:
        raise VerificationError(
            f"expected the unique maximal element to be the top-justified "
            f"dream; found indices {maximal}"
        )
    if minimal != [oracle.idx(bot)]:
        raise VerificationError(
            f"expected the unique minimal element to be the left-justified "
            f"dream; found indices {minimal}"
        )
