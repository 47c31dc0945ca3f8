"""Ladder moves, chute moves, and fiber enumeration."""

import pytest

from pipelattice import (
    DomainError,
    Permutation,
    ResourceError,
    apply_chute,
    apply_ladder,
    chute_movable,
    cover_moves,
    enumerate_rpd,
    from_crosses,
    ladder_movable,
)
from pipelattice.moves import (
    enumerate_rpd_by_subsets,
    enumerate_rpd_simple_moves,
    h_of,
    k_of,
)

from conftest import (
    DIAMOND,
    DIAMOND_BOT_ROUTE,
    DIAMOND_FINAL,
    DIAMOND_TOP_ROUTE,
    FIBER_SIZES,
    LADDER_WIDE,
    LADDER_WIDE_DEST,
    LADDER_WIDE_PIVOT,
    all_windows,
    dream,
)

S4_CORPUS = [
    (w, D)
    for k in range(1, 5)
    for w in all_windows(k)
    for D in sorted(enumerate_rpd(w), key=lambda d: d.sorted_crosses)
]


def naive_ladder_target(D, i, j):
    """Reference implementation by direct rectangle inspection."""
    if not D.is_cross(i, j):
        return None
    h = next((r for r in range(i - 1, 0, -1) if not D.is_cross(r, j)), None)
    if h is None:
        return None
    k = j + 1
    while D.is_cross(i, k):
        k += 1
    if not D.in_staircase(h, k) or h + k > D.n:  # destination must hold a cross
        return None
    for r in range(h, i + 1):
        for c in range(j, k + 1):
            expected_bump = (r, c) in {(h, j), (h, k), (i, k)}
            if D.is_cross(r, c) == expected_bump:
                return None
    return (h, k)


@pytest.mark.parametrize("w,D", S4_CORPUS, ids=lambda v: str(v)[:24])
def test_ladder_movable_matches_rectangle_inspection(w, D):
    for (i, j) in D.sorted_crosses:
        target = ladder_movable(D, i, j)
        naive = naive_ladder_target(D, i, j)
        assert (target.dest if target else None) == naive


def test_ladder_movable_frozen_cases():
    D = from_crosses([(2, 1), (2, 2), (3, 1)], 4)
    target = ladder_movable(D, 2, 2)
    assert target is not None and target.dest == (1, 3)
    assert ladder_movable(D, 2, 1) is None  # the column above is not solid
    with pytest.raises(DomainError):
        ladder_movable(D, 1, 1)  # not a cross


def test_h_and_k_frozen_values():
    D = from_crosses([(2, 1), (2, 2), (3, 1)], 4)
    assert h_of(D, 2, 2) == 1
    assert k_of(D, 2, 2) == 3
    assert h_of(D, 2, 1) == 1  # bump above exists; the rectangle is what fails
    assert h_of(D, 3, 1) == 1
    # a solid column above leaves no destination row at all
    top = from_crosses([(1, 2), (1, 3), (2, 2)], 4)
    assert h_of(top, 2, 2) is None


def test_wide_rectangle_ladder():
    target = ladder_movable(LADDER_WIDE, *LADDER_WIDE_PIVOT)
    assert target is not None
    assert target.dest == LADDER_WIDE_DEST
    moved = apply_ladder(LADDER_WIDE, *LADDER_WIDE_PIVOT)
    assert moved.crosses == (
        LADDER_WIDE.crosses - {LADDER_WIDE_PIVOT} | {LADDER_WIDE_DEST}
    )


def test_two_routes_reach_the_same_dream():
    top = DIAMOND
    for pivot in DIAMOND_TOP_ROUTE:
        top = apply_ladder(top, *pivot)
    bot = DIAMOND
    for pivot in DIAMOND_BOT_ROUTE:
        bot = apply_ladder(bot, *pivot)
    assert top == bot == DIAMOND_FINAL


@pytest.mark.parametrize("w,D", S4_CORPUS, ids=lambda v: str(v)[:24])
def test_chute_undoes_every_ladder(w, D):
    for target in cover_moves(D):
        E = apply_ladder(D, *target.pivot)
        assert chute_movable(E, *target.dest) == target.pivot
        assert apply_chute(E, *target.dest) == D


@pytest.mark.parametrize("w,D", S4_CORPUS, ids=lambda v: str(v)[:24])
def test_ladder_raises_potential_by_at_least_two(w, D):
    for target in cover_moves(D):
        E = apply_ladder(D, *target.pivot)
        assert E.potential - D.potential >= 2
        (i, j), (h, k) = target.pivot, target.dest
        assert E.potential - D.potential == (k - j) + (i - h)


def test_apply_errors_on_immovable_tiles():
    D = from_crosses([(2, 1), (2, 2), (3, 1)], 4)
    with pytest.raises(DomainError):
        apply_ladder(D, 2, 1)
    with pytest.raises(DomainError):
        apply_chute(D, 2, 2)


@pytest.mark.parametrize("text,size", sorted(FIBER_SIZES.items()))
def test_fiber_sizes_frozen(text, size):
    assert len(enumerate_rpd(Permutation.from_text(text))) == size


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_three_enumeration_routes_agree(k):
    for w in all_windows(k):
        by_ladders = enumerate_rpd(w)
        assert by_ladders == enumerate_rpd_simple_moves(w)
        assert by_ladders == enumerate_rpd_by_subsets(w)


def test_every_fiber_element_is_reduced_with_the_right_permutation():
    w = Permutation.from_text("126453")
    fiber = enumerate_rpd(w)
    assert len(fiber) == FIBER_SIZES["126453"]
    for D in fiber:
        assert D.permutation == w
        assert len(D.crosses) == w.length


def test_enumeration_budget_is_enforced():
    with pytest.raises(ResourceError):
        enumerate_rpd(Permutation.from_text("126543"), budget=10)
    # a budget equal to the fiber size is enough
    assert len(enumerate_rpd(Permutation.from_text("1432"), budget=5)) == 5


def test_subset_enumeration_is_gated():
    with pytest.raises(ResourceError):
        enumerate_rpd_by_subsets(Permutation.from_text("126543"))


def test_cover_moves_reads_pivots_in_reading_order():
    moves = cover_moves(dream([(2, 1), (2, 2), (3, 1)], 4))
    assert [t.pivot for t in moves] == sorted(t.pivot for t in moves)
