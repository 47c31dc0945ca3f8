"""Random walk on the dreams of a permutation, with mixing measurement.

One step picks a cross uniformly at random; with probability ``p`` it
applies the upward move operator there (staying put if the tile is not
movable), and otherwise the downward transpose-dual move (staying put if
that would leave the order ideal).  The walk is *lazy* in both directions:
undefined moves fix the state.  Whether this chain mixes rapidly is open;
the harness exists to measure, not to prove.

The down move deserves a note: the upward operator has no closed-form
inverse on its image, but transposition maps the order on ``RPD(w)``
order-reversingly onto ``RPD(w⁻¹)``, so "move down at ``(i, j)``" is
realized as the upward move at ``(j, i)`` of the transposed dream,
transposed back.  On a cover produced by a ladder move this recovers the
original dream exactly (tested edge by edge).

Determinism: every walk owns a counter-based generator — Philox keyed by
``SeedSequence(entropy=seed, spawn_key=(walk_index,))`` — so traces are
bit-for-bit reproducible regardless of scheduling, and the vectorized
runner consumes the identical stream (two doubles per step: tile choice,
then branch choice) as single-stepping with the same generator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import DomainError, ResourceError
from .lattice import DEFAULT_ORACLE_BUDGET, ORACLE_BUDGET_ENV
from .moves import enumerate_rpd
from .moveop import m_explicit, movable
from .perm import Permutation
from .pipedream import PipeDream, Tile, d_bot, format_dream, transpose

__all__ = [
    "WalkConfig",
    "WalkResult",
    "step",
    "inverse_move",
    "transition_tables",
    "run_walk",
    "save_trace_figure",
]


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one sampling experiment.

    ``walks`` independent chains start at the minimum dream and run for
    ``steps`` steps each; rows before ``burn_in`` are simulated but not
    recorded.
    """

    w: Permutation
    p: float
    steps: int
    seed: int
    walks: int = 1
    burn_in: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"probability p={self.p} outside [0, 1]")
        if self.steps < 1:
            raise DomainError("steps must be at least 1")
        if self.walks < 1:
            raise DomainError("walks must be at least 1")
        if not 0 <= self.burn_in < self.steps:
            raise DomainError("burn_in must lie in [0, steps)")


def inverse_move(D: PipeDream, i: int, j: int) -> Optional[PipeDream]:
    """The downward move at ``(i, j)``, or None when nothing lies below.

    Defined whenever ``(j, i)`` is movable in the transpose — i.e. the
    cross has a bump somewhere to its west in row ``i``.

    >>> D = PipeDream(4, frozenset({(1, 3), (2, 1), (3, 1)}))
    >>> sorted(inverse_move(D, 1, 3).crosses)
    [(2, 1), (2, 2), (3, 1)]
    >>> inverse_move(D, 2, 1) is None
    True
    """
    Dt = transpose(D)
    if not movable(Dt, j, i):
        return None
    return transpose(m_explicit(Dt, j, i))


def step(D: PipeDream, rng: np.random.Generator, p: float) -> PipeDream:
    """Advance one step, consuming exactly two uniforms (tile, branch).

    A crossless dream is a fixed point and consumes no randomness.
    """
    crosses = D.sorted_crosses
    if not crosses:
        return D
    u_tile = rng.random()
    (i, j) = crosses[int(u_tile * len(crosses))]
    u_branch = rng.random()
    if u_branch < p:
        return m_explicit(D, i, j) if movable(D, i, j) else D
    down = inverse_move(D, i, j)
    return down if down is not None else D


def _canonical_states(w: Permutation, budget: Optional[int]) -> list[PipeDream]:
    if budget is None:
        budget = int(os.environ.get(ORACLE_BUDGET_ENV, DEFAULT_ORACLE_BUDGET))
    try:
        states = enumerate_rpd(w, budget=budget)
    except ResourceError:
        raise ResourceError(
            f"RPD({w.to_text()}) is not enumerable within budget {budget}; "
            f"total-variation measurement needs the full state list "
            f"(drive step() directly for histogram-only sampling)"
        ) from None
    return sorted(states, key=lambda D: (D.potential, format_dream(D)))


def transition_tables(states: list[PipeDream]) -> tuple[np.ndarray, np.ndarray]:
    """Per-state, per-cross successor tables for the up and down branches.

    Every dream of ``w`` has the same number of crosses, so the tables are
    rectangular: entry ``[s, c]`` is the successor index when the ``c``-th
    cross (reading order) of state ``s`` is chosen, or ``s`` itself when
    the move is undefined.
    """
    index = {D: s for s, D in enumerate(states)}
    ell = len(states[0].crosses) if states else 0
    up = np.empty((len(states), ell), dtype=np.int64)
    down = np.empty((len(states), ell), dtype=np.int64)
    for s, D in enumerate(states):
        for c, (i, j) in enumerate(D.sorted_crosses):
            up[s, c] = index[m_explicit(D, i, j)] if movable(D, i, j) else s
            inv = inverse_move(D, i, j)
            down[s, c] = index[inv] if inv is not None else s
    return up, down


@dataclass
class WalkResult:
    """Trace of one experiment: per-step total-variation distance to the
    uniform distribution and the running count of distinct states seen."""

    config: WalkConfig
    states: list[PipeDream]
    rows: list[tuple[int, float, int]]  # (step, tv_distance, states_visited)
    visited: set[PipeDream]

    @property
    def final_tv(self) -> float:
        return self.rows[-1][1] if self.rows else 0.0

    def to_csv(self) -> str:
        lines = ["step,tv_distance,states_visited"]
        for step_no, tv, seen in self.rows:
            lines.append(f"{step_no},{tv!r},{seen}")
        return "\n".join(lines) + "\n"


def run_walk(cfg: WalkConfig, budget: Optional[int] = None) -> WalkResult:
    """Run ``cfg.walks`` independent chains from the minimum dream.

    All chains advance in lockstep, vectorized over walks via the
    transition tables; the per-walk generators make the result identical
    to stepping each chain on its own.
    """
    states = _canonical_states(cfg.w, budget)
    size = len(states)
    index = {D: s for s, D in enumerate(states)}
    start = index[d_bot(cfg.w)]
    ell = len(states[0].crosses)

    if ell == 0:
        rows = [
            (t, 0.0, 1)
            for t in range(1, cfg.steps + 1)
            if t > cfg.burn_in
        ]
        return WalkResult(
            config=cfg, states=states, rows=rows, visited={states[0]}
        )

    up, down = transition_tables(states)
    draws = np.empty((cfg.walks, cfg.steps, 2), dtype=np.float64)
    for walk_index in range(cfg.walks):
        seq = np.random.SeedSequence(
            entropy=cfg.seed, spawn_key=(walk_index,)
        )
        draws[walk_index] = np.random.Generator(
            np.random.Philox(seq)
        ).random((cfg.steps, 2))

    current = np.full(cfg.walks, start, dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    seen[start] = True
    uniform = 1.0 / size
    rows: list[tuple[int, float, int]] = []
    for t in range(1, cfg.steps + 1):
        tile_choice = (draws[:, t - 1, 0] * ell).astype(np.int64)
        go_up = draws[:, t - 1, 1] < cfg.p
        current = np.where(
            go_up, up[current, tile_choice], down[current, tile_choice]
        )
        seen[current] = True
        if t > cfg.burn_in:
            counts = np.bincount(current, minlength=size)
            tv = 0.5 * np.abs(counts / cfg.walks - uniform).sum()
            rows.append((t, float(tv), int(seen.sum())))
    visited = {states[s] for s in np.flatnonzero(seen)}
    return WalkResult(config=cfg, states=states, rows=rows, visited=visited)


def save_trace_figure(result: WalkResult, path: str) -> str:
    """Plot the total-variation trace to a PNG file; returns the path."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cfg = result.config
    steps = [row[0] for row in result.rows]
    tvs = [row[1] for row in result.rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(steps, tvs, lw=1.5)
    ax.set_xlabel("step")
    ax.set_ylabel("total variation distance to uniform")
    ax.set_title(
        f"w={cfg.w.to_text()}, p={cfg.p}, {cfg.walks} walks, seed={cfg.seed}"
    )
    ax.grid(True, alpha=0.3)
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
