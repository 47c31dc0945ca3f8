"""Lattice structure on the reduced pipe dreams of a permutation.

The package models pipe dreams on the staircase grid, the generalized
ladder/chute moves that generate the partial order on them, the move
operator behind the join algorithm, tableau coordinates that characterize
comparability, a brute-force poset oracle for exhaustive verification at
small sizes, and a Markov-chain sampler harness.  The ``pipelattice``
console script exposes all of it.
"""

from __future__ import annotations

from .errors import (
    DomainError,
    InternalInvariantError,
    InvalidTableauError,
    ResourceError,
    VerificationError,
)
from .perm import Permutation, inverse, inversions, rothe_diagram, dots_northwest
from .pipedream import (
    PipeDream,
    PipeTrace,
    cross_strands,
    d_bot,
    d_top,
    format_dream,
    from_crosses,
    is_reduced,
    parse,
    permutation_of,
    trace_pipe,
    transpose,
)
from .moves import (
    LadderTarget,
    apply_chute,
    apply_ladder,
    chute_movable,
    cover_moves,
    enumerate_rpd,
    ladder_movable,
)
from .moveop import (
    MoveContext,
    PathShape,
    big_composition,
    check_commutations,
    m_explicit,
    m_prime,
    m_recursive,
    movable,
    move_context,
    path_of,
    shape_of,
    sw_incomparable,
    v_set,
)
from .lattice import (
    PosetOracle,
    build_oracle,
    join,
    join_with_depth,
    leq,
    leq_by_extremal,
    meet,
    principal_disagreement,
)
from .tableau import (
    Tableau,
    bot_tableau,
    format_tableau,
    from_tableau,
    left_bump_count,
    tableau_after_ladder,
    tableau_from_json,
    tableau_leq,
    tableau_of,
    tableau_to_json,
)
from .markov import (
    WalkConfig,
    WalkResult,
    inverse_move,
    run_walk,
    save_trace_figure,
    step,
)

__all__ = [
    "DomainError",
    "InternalInvariantError",
    "InvalidTableauError",
    "ResourceError",
    "VerificationError",
    "Permutation",
    "inverse",
    "inversions",
    "rothe_diagram",
    "dots_northwest",
    "PipeDream",
    "PipeTrace",
    "cross_strands",
    "d_bot",
    "d_top",
    "format_dream",
    "from_crosses",
    "is_reduced",
    "parse",
    "permutation_of",
    "trace_pipe",
    "transpose",
    "LadderTarget",
    "apply_chute",
    "apply_ladder",
    "chute_movable",
    "cover_moves",
    "enumerate_rpd",
    "ladder_movable",
    "MoveContext",
    "PathShape",
    "big_composition",
    "check_commutations",
    "m_explicit",
    "m_prime",
    "m_recursive",
    "movable",
    "move_context",
    "path_of",
    "shape_of",
    "sw_incomparable",
    "v_set",
    "PosetOracle",
    "build_oracle",
    "join",
    "join_with_depth",
    "leq",
    "leq_by_extremal",
    "meet",
    "principal_disagreement",
    "Tableau",
    "bot_tableau",
    "format_tableau",
    "from_tableau",
    "left_bump_count",
    "tableau_after_ladder",
    "tableau_from_json",
    "tableau_leq",
    "tableau_of",
    "tableau_to_json",
    "WalkConfig",
    "WalkResult",
    "inverse_move",
    "run_walk",
    "save_trace_figure",
    "step",
]

__version__ = "0.1.0"
