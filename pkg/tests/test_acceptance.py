"""Acceptance sweep: the package's top-level guarantees at full desk scale.

Each test is one criterion; a verbose run prints one pass/fail line per
criterion.  The sweeps are exhaustive over every permutation window of
size up to five (larger sizes are spot-checked by seeded sample), so a
pass certifies the guarantees wholesale, not on cherry-picked examples.
"""

import time

import pytest

from pipelattice import (
    Permutation,
    WalkConfig,
    apply_ladder,
    bot_tableau,
    check_commutations,
    cover_moves,
    d_bot,
    d_top,
    format_dream,
    from_tableau,
    join,
    join_with_depth,
    leq,
    leq_by_extremal,
    m_explicit,
    m_prime,
    m_recursive,
    meet,
    movable,
    principal_disagreement,
    run_walk,
    tableau_after_ladder,
    tableau_leq,
    tableau_of,
    v_set,
)
from pipelattice.verify import all_ok, lattice_core_suite, sample_permutations

from conftest import (
    FIG_DREAM,
    JOIN_D1,
    JOIN_D2,
    JOIN_M31_D1,
    JOIN_M32_D2,
    JOIN_RESULT,
    JOIN_STEPS,
    RUN_DREAM,
    RUN_PIVOT,
    RUN_V_MEMBER,
    RUN_V_MEMBER_CHAIN,
    RUN_V_NONMEMBER,
    RUN_V_NONMEMBER_CHAIN,
    W_FIG,
    all_windows,
)

WINDOWS_THROUGH_4 = [w for k in range(1, 5) for w in all_windows(k)]
WINDOWS_THROUGH_5 = [w for k in range(1, 6) for w in all_windows(k)]
WINDOWS_THROUGH_6 = [w for k in range(1, 7) for w in all_windows(k)]


def test_every_small_fiber_is_a_lattice_with_unique_bounds(oracle_for):
    """Exhaustively over windows of size <= 5, every pair of dreams has a
    unique minimal upper bound and unique maximal lower bound, and the
    computed join and meet land exactly on them; 25 seeded size-6
    permutations confirm the same beyond the exhaustive range."""
    started = time.monotonic()
    for w in WINDOWS_THROUGH_5:
        assert all_ok(lattice_core_suite(oracle_for(w)))
    for w in sample_permutations(6, 25, 20260816):
        assert all_ok(lattice_core_suite(oracle_for(w, 50_000)))
    assert time.monotonic() - started < 300.0


def test_worked_join_reproduces_every_intermediate_dream():
    """The three-move join of the worked six-pipe pair replays tile for
    tile: each principal disagreement, each side, each intermediate dream
    byte-identical, and the final join equal from both argument orders."""
    a, b = JOIN_D1, JOIN_D2
    steps = []
    intermediates = []
    while a != b:
        dis = principal_disagreement(a, b)
        steps.append((dis.tile, dis.side))
        if dis.side == 1:
            a = m_explicit(a, *dis.tile)
            intermediates.append(a)
        else:
            b = m_explicit(b, *dis.tile)
            intermediates.append(b)
    assert steps == JOIN_STEPS
    expected = [JOIN_M31_D1, JOIN_M32_D2, JOIN_RESULT]
    assert [format_dream(D) for D in intermediates] == [
        format_dream(D) for D in expected
    ]
    assert format_dream(join(JOIN_D1, JOIN_D2)) == format_dream(JOIN_RESULT)
    assert format_dream(join(JOIN_D2, JOIN_D1)) == format_dream(JOIN_RESULT)
    assert join_with_depth(JOIN_D1, JOIN_D2)[1] == 3


def test_three_move_computations_agree_everywhere(oracle_for):
    """The recursive, explicit-path, and column-peeling computations of
    the move operator return the same dream at every movable cross of
    every dream of every window of size <= 5."""
    for w in WINDOWS_THROUGH_5:
        for D in oracle_for(w).elements:
            for (i, j) in D.sorted_crosses:
                if not movable(D, i, j):
                    continue
                out = m_explicit(D, i, j)
                assert m_recursive(D, i, j) == out
                assert m_prime(D, i, j) == out


def test_move_is_the_unique_minimum_reachable_clearing(oracle_for):
    """At every movable cross of every dream of every window of size
    <= 4, the move operator's output belongs to the set of ladder-
    reachable dreams clearing the pivot and sits below all of them; the
    worked membership and non-membership chains replay verbatim."""
    for w in WINDOWS_THROUGH_4:
        for D in oracle_for(w).elements:
            for (i, j) in D.sorted_crosses:
                candidates = v_set(D, i, j)
                assert bool(candidates) == movable(D, i, j)
                if not candidates:
                    continue
                out = m_explicit(D, i, j)
                assert out in candidates
                assert all(leq(out, Q) for Q in candidates)

    via_member = RUN_DREAM
    for pivot in RUN_V_MEMBER_CHAIN:
        via_member = apply_ladder(via_member, *pivot)
    assert via_member == RUN_V_MEMBER
    via_non = RUN_DREAM
    for pivot in RUN_V_NONMEMBER_CHAIN:
        via_non = apply_ladder(via_non, *pivot)
    assert via_non == RUN_V_NONMEMBER
    candidates = v_set(RUN_DREAM, *RUN_PIVOT)
    assert RUN_V_MEMBER in candidates
    assert RUN_V_NONMEMBER not in candidates


def test_entrywise_tableau_order_equals_the_move_order(oracle_for):
    """For every ordered pair of dreams in every window of size <= 5,
    entrywise comparison of the two tableaux gives exactly the lattice
    order, and the worked six-pipe entries pin the encoding."""
    for w in WINDOWS_THROUGH_5:
        oracle = oracle_for(w)
        tabs = [tableau_of(D) for D in oracle.elements]
        for a in range(oracle.size):
            for b in range(oracle.size):
                assert tableau_leq(tabs[a], tabs[b]) == oracle.oracle_leq(
                    oracle.elements[a], oracle.elements[b]
                )
    assert tableau_of(FIG_DREAM).entry(5, 6) == 3
    assert tableau_of(d_top(W_FIG)).entry(5, 6) == 4


def test_tableau_reconstruction_inverts_extraction(oracle_for):
    """Rebuilding a dream from its tableau returns the original dream for
    every element of every window of size <= 5 and for the full fiber of
    the worked six-pipe permutation."""
    for w in WINDOWS_THROUGH_5:
        for D in oracle_for(w).elements:
            assert from_tableau(tableau_of(D)) == D
    fig_fiber = oracle_for(W_FIG).elements
    assert len(fig_fiber) == 15
    for D in fig_fiber:
        assert from_tableau(tableau_of(D)) == D


def test_moves_commute_and_extreme_rows_aggregate(oracle_for):
    """Every applicable commutation configuration in every window of size
    <= 5 checks out, the top row of a join is the union of the inputs'
    top rows, and dually the first column of a meet is the union of the
    inputs' first columns — for every pair in every fiber."""
    for w in WINDOWS_THROUGH_5:
        oracle = oracle_for(w)
        for D in oracle.elements:
            for record in check_commutations(D):
                assert record["ok"], (w.to_text(), record)
        row1 = [
            frozenset(j for (i, j) in D.crosses if i == 1)
            for D in oracle.elements
        ]
        col1 = [
            frozenset(i for (i, j) in D.crosses if j == 1)
            for D in oracle.elements
        ]
        for a, Da in enumerate(oracle.elements):
            for b, Db in enumerate(oracle.elements):
                hi = oracle.oracle_join_idx(a, b)
                assert row1[hi] == row1[a] | row1[b]
                lo = oracle.oracle_meet_idx(a, b)
                assert col1[lo] == col1[a] | col1[b]


def test_single_ladder_tableau_update_and_minimum_formula(oracle_for):
    """The incremental tableau update along a ladder move matches a full
    recomputation on every cover edge of every window of size <= 5, and
    the closed formula for the minimum dream's tableau is exact for every
    window of size <= 6."""
    for w in WINDOWS_THROUGH_5:
        for D in oracle_for(w).elements:
            T = tableau_of(D)
            for target in cover_moves(D):
                moved = apply_ladder(D, *target.pivot)
                assert tableau_after_ladder(T, D, target.pivot) == tableau_of(
                    moved
                )
    for w in WINDOWS_THROUGH_6:
        assert bot_tableau(w) == tableau_of(d_bot(w))


def test_extremal_descent_comparability_matches_the_join_test(oracle_for):
    """The round-based comparability test that raises all southwest-
    extremal disagreements at once agrees with the join-based test on
    every ordered pair in every window of size <= 5."""
    for w in WINDOWS_THROUGH_5:
        oracle = oracle_for(w)
        for Da in oracle.elements:
            for Db in oracle.elements:
                expected = oracle.oracle_leq(Da, Db)
                assert leq(Da, Db) == expected
                assert leq_by_extremal(Da, Db) == expected


def test_sampler_converges_reproducibly_to_uniform():
    """Ten thousand seeded walks of the lazy chain visit the whole fiber,
    end within total-variation 0.05 of uniform, and produce bit-identical
    traces on repeated runs, with the first and last rows pinned."""
    cfg = WalkConfig(
        Permutation.from_text("1432"), 0.5, steps=200, seed=42, walks=10_000
    )
    first = run_walk(cfg)
    second = run_walk(cfg)
    csv_text = first.to_csv()
    assert csv_text == second.to_csv()
    assert first.visited == set(first.states)
    assert len(first.states) == 5
    assert first.final_tv == 0.010200000000000015
    assert first.final_tv < 0.05
    lines = csv_text.splitlines()
    assert lines[0] == "step,tv_distance,states_visited"
    assert lines[1] == "1,0.2986,4"
    assert lines[2] == "2,0.12940000000000004,5"
    assert lines[199] == "199,0.016600000000000004,5"
    assert lines[200] == "200,0.010200000000000015,5"
