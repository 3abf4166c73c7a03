"""Sticker-level n x n x n cube model with commutator-based solvers."""

from .clusters import (
    ClusterConfiguration,
    ClusterId,
    center,
    cluster_of,
    cluster_parity,
    count_clusters,
    enumerate_clusters,
    extract_configuration,
    is_cluster_solved,
    wing,
)
from .commutators import CycleSpec, center_cycle, conjugate, corner_cycle, edge_cycle
from .cube import (
    CubeError,
    CubeState,
    CubiePosition,
    Move,
    apply_move,
    apply_sequence,
    deserialize_state,
    format_sequence,
    invert_sequence,
    parse_sequence,
    scramble,
    serialize_state,
    sticker_diff,
)
from .solver import (
    ParityError,
    SolveReport,
    batch_solve_grouped,
    batch_solve_log,
    batch_solve_xy,
    fix_parity,
    solve_cluster,
    solve_frame,
    solve_naive,
    solve_optimized,
)

__version__ = "0.1.0"
