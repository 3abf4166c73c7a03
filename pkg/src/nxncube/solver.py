"""Solving pipelines built from cluster-local 3-cycles.

``solve_naive`` solves the frame (corners, and for odd n the cross edges and
face centers), fixes wing parity with one slice turn per odd wing cluster,
then solves every wing and center cluster on its own.  ``solve_optimized``
replaces the per-cluster center stage with batched solves: center clusters
``(x, y)`` that share a configuration are solved together by running one
cluster's solution with each slice move widened to all rows in ``X`` or all
columns in ``Y``.
"""

from __future__ import annotations

import hashlib
import math
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .clusters import (
    CENTER,
    CORNER,
    CROSS,
    FACE_CENTER,
    ORIENTED,
    WING,
    ClusterConfiguration,
    ClusterId,
    center,
    cluster_geometry,
    cluster_parity,
    enumerate_clusters,
    extract_configuration,
    is_cluster_solved,
    wing_indices,
)
from .cube import CubeError, CubeState, Move, apply_sequence, move_permutation
from .library import MAX_SETUP_DEPTH, REFERENCE, Entry, library

# A single placement step uses at most two library entries and fixes at least
# one more slot, so a 24-slot cluster needs at most 48 entries.
MAX_ENTRY_LENGTH = 8 + 2 * MAX_SETUP_DEPTH
L_MAX = 2 * 24 * MAX_ENTRY_LENGTH


class ParityError(CubeError):
    """The cluster holds an odd permutation of distinguishable cubies."""


class UnsolvableError(CubeError):
    pass


@dataclass
class Stage:
    name: str
    moves: tuple[Move, ...]
    seconds: float

    @property
    def count(self) -> int:
        return len(self.moves)


@dataclass
class SolveReport:
    digest: str
    algorithm: str
    stages: list[Stage] = field(default_factory=list)
    # (setup moves, emitted length) of every single-cluster 3-cycle
    cycles: list[tuple[int, int]] = field(default_factory=list)
    cluster_lengths: list[int] = field(default_factory=list)
    batch_checks: list[tuple[int, int, int, int]] = field(default_factory=list)
    solved: bool = False

    @property
    def moves(self) -> tuple[Move, ...]:
        return tuple(m for s in self.stages for m in s.moves)

    @property
    def total_moves(self) -> int:
        return sum(s.count for s in self.stages)

    def stage_moves(self, name: str) -> int:
        return sum(s.count for s in self.stages if s.name == name)

    @property
    def cycle_lengths(self) -> list[int]:
        return [length for _, length in self.cycles]

    @property
    def moves_per_cycle(self) -> float:
        """Mean length of the 3-cycles emitted with at most one setup move."""
        short = [length for depth, length in self.cycles if depth <= 1]
        return sum(short) / len(short) if short else float("nan")

    @property
    def mean_cycle_length(self) -> float:
        c = self.cycle_lengths
        return sum(c) / len(c) if c else float("nan")


def state_digest(state: CubeState) -> str:
    return hashlib.sha1(state.flat.tobytes() + bytes([state.n])).hexdigest()[:16]


# --------------------------------------------------------------------------
# per-cluster planning


def _apply_entry(content: list, entry: Entry) -> list:
    out = list(content)
    for src, dst, perm in entry.parts:
        out[dst] = tuple(content[src][k] for k in perm)
    return out


def _solved_count(content, need, slots) -> int:
    return sum(content[s] == need[s] for s in slots)


def _matches(kind: str, colors: tuple, want: tuple) -> bool:
    if kind in ORIENTED:
        return sorted(colors) == sorted(want)
    return colors == want


def _best_single(lib, content, need, kind):
    unsolved = [s for s in range(len(need)) if content[s] != need[s]]
    for t in unsolved:
        best = None
        # a source may look solved when it holds a twin of its own colour
        for s in range(len(need)):
            if s == t or not _matches(kind, content[s], need[t]):
                continue
            for idx in lib.by_pair.get((s, t), ()):
                e = lib.entries[idx]
                part = next(p for p in e.parts if p[1] == t)
                if tuple(content[s][k] for k in part[2]) != need[t]:
                    continue
                touched = e.slots
                after = _apply_entry(content, e)
                gain = _solved_count(after, need, touched) - _solved_count(content, need, touched)
                if gain >= 1 and (best is None or (-gain, e.length, idx) < best[0]):
                    best = ((-gain, e.length, idx), [e])
        if best:
            return best[1]
    return None


def _best_pair(lib, content, need):
    """Two entries that together fix a slot no single entry can (twists, flips)."""
    base = _solved_count(content, need, range(len(need)))
    unsolved = [s for s in range(len(need)) if content[s] != need[s]]
    for t in unsolved:
        best = None
        for x in range(len(need)):
            for i1 in lib.by_pair.get((t, x), ()):
                e1 = lib.entries[i1]
                mid = _apply_entry(content, e1)
                for i2 in lib.by_pair.get((x, t), ()):
                    e2 = lib.entries[i2]
                    after = _apply_entry(mid, e2)
                    if after[t] != need[t]:
                        continue
                    gain = _solved_count(after, need, range(len(need))) - base
                    key = (-gain, e1.length + e2.length, i1, i2)
                    if gain >= 1 and (best is None or key < best[0]):
                        best = (key, [e1, e2])
        if best:
            return best[1]
    return None


@lru_cache(maxsize=4096)
def plan_configuration(shape: str, contents: tuple, need: tuple) -> tuple[Entry, ...]:
    """Library entries solving one configuration, memoised by configuration.

    Greedy: take the first unsolved slot, bring in a cubie that belongs
    there with a 3-cycle whose other two slots do not lose solved cubies,
    and fall back to a pair of 3-cycles for cubies that are home but
    twisted or flipped.  Every step solves at least one more slot.
    """
    lib = library(shape)
    kind = shape.split("_")[0]
    content = list(contents)
    plan: list[Entry] = []
    while any(c != w for c, w in zip(content, need)):
        step = _best_single(lib, content, need, kind) or _best_pair(lib, content, need)
        if step is None:
            raise ParityError(f"{shape} configuration cannot be solved by 3-cycles")
        for e in step:
            content = _apply_entry(content, e)
        plan.extend(step)
    return tuple(plan)


def _check_parity(config: ClusterConfiguration) -> None:
    if config.id.kind in (CORNER, CROSS, WING) and cluster_parity(config) == "odd":
        raise ParityError(f"{config.id} has odd parity")


def _cluster_plan(state: CubeState, cid: ClusterId):
    if cid.kind == FACE_CENTER:
        raise CubeError("face centers are aligned by solve_frame")
    geo = cluster_geometry(state.n, cid)
    config = extract_configuration(state, cid)
    _check_parity(config)
    return geo, plan_configuration(geo.shape, config.contents, geo.need)


def _cycle_records(lib, plan, roles) -> list[tuple[int, int]]:
    return [(len(e.setup), len(lib.moves(e, roles))) for e in plan]


def solve_cluster(state: CubeState, cid: ClusterId) -> tuple[Move, ...]:
    """Moves that solve one cluster and leave every other sticker in place."""
    geo, plan = _cluster_plan(state, cid)
    lib = library(geo.shape)
    return tuple(m for e in plan for m in lib.moves(e, geo.roles))


# --------------------------------------------------------------------------
# frame and parity


def _align_face_centers(state: CubeState) -> tuple[Move, ...]:
    n = state.n
    m = (n - 1) // 2
    geo = cluster_geometry(n, ClusterId(FACE_CENTER))
    gens = [Move(axis, m, cw) for axis in "HVD" for cw in (True, False)]
    start = geo.contents(state)
    if start == geo.need:
        return ()
    # face centers only ever see the 24 rotations of the cube
    flat_pos = [slot[0] for slot in geo.slots]
    seen = {start: ()}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            perm = move_permutation(n, g)
            lookup = dict(zip(flat_pos, cur))
            nxt = tuple(lookup[int(perm[p])] for p in flat_pos)
            if nxt in seen:
                continue
            seen[nxt] = seen[cur] + (g,)
            if nxt == geo.need:
                return seen[nxt]
            queue.append(nxt)
    raise UnsolvableError("face centers cannot be aligned")


def _frame_steps(state: CubeState):
    """Yield ``(moves, cycle_lengths)`` for each frame step."""
    cur = state
    if state.n % 2:
        align = _align_face_centers(cur)
        yield align, (), None
        cur = apply_sequence(cur, align)
    corners = extract_configuration(cur, ClusterId(CORNER))
    if cluster_parity(corners) == "odd":
        turn = (Move("H", 0, True),)
        yield turn, (), None
        cur = apply_sequence(cur, turn)
    kinds = [ClusterId(CORNER)] + ([ClusterId(CROSS)] if state.n % 2 else [])
    for cid in kinds:
        try:
            geo, plan = _cluster_plan(cur, cid)
        except ParityError as exc:
            raise UnsolvableError(str(exc)) from exc
        lib = library(geo.shape)
        seq = tuple(m for e in plan for m in lib.moves(e, geo.roles))
        yield seq, _cycle_records(lib, plan, geo.roles), len(seq)
        cur = apply_sequence(cur, seq)


def solve_frame(state: CubeState) -> tuple[Move, ...]:
    """Solve corners and, for odd n, face centers and cross edges.

    Only face moves and (odd n) middle-slice moves are used.
    """
    return tuple(m for seq, _, _ in _frame_steps(state) for m in seq)


def fix_parity(state: CubeState) -> tuple[Move, ...]:
    """One slice turn for every wing cluster whose parity is odd."""
    out = []
    for i in wing_indices(state.n):
        if cluster_parity(extract_configuration(state, ClusterId(WING, i))) == "odd":
            out.append(Move("H", i, True))
    return tuple(out)


# --------------------------------------------------------------------------
# pipelines


class _Run:
    def __init__(self, state: CubeState, algorithm: str):
        self.state = state
        self.report = SolveReport(state_digest(state), algorithm)
        self._clock = time.perf_counter()

    def stage(self, name: str, moves, cycles=(), cluster_lengths=()):
        # time spent since the previous stage is charged to this one
        now = time.perf_counter()
        self.report.stages.append(Stage(name, tuple(moves), now - self._clock))
        self.report.cycles.extend(cycles)
        self.report.cluster_lengths.extend(cluster_lengths)
        self.state = apply_sequence(self.state, moves)
        self._clock = time.perf_counter()

    def cluster(self, name: str, cid: ClusterId) -> None:
        geo, plan = _cluster_plan(self.state, cid)
        lib = library(geo.shape)
        moves = tuple(m for e in plan for m in lib.moves(e, geo.roles))
        self.stage(name, moves, _cycle_records(lib, plan, geo.roles), [len(moves)])

    def finish(self) -> SolveReport:
        self.report.solved = self.state.is_solved()
        return self.report


def _front(run: _Run) -> None:
    for seq, cycles, length in list(_frame_steps(run.state)):
        run.stage("frame", seq, cycles, () if length is None else (length,))
    run.stage("parity", fix_parity(run.state))
    for i in wing_indices(run.state.n):
        run.cluster("wings", ClusterId(WING, i))


def solve_naive(state: CubeState) -> SolveReport:
    run = _Run(state, "naive")
    _front(run)

    for cid in enumerate_clusters(state.n):
        if cid.kind == CENTER:
            run.cluster("centers", cid)
    return run.finish()


# --------------------------------------------------------------------------
# batching


@dataclass
class BatchPlan:
    contents: tuple
    X: tuple[int, ...]
    Y: tuple[int, ...]
    groups: dict = field(default_factory=dict)  # S -> Y_S
    chunk_size: int = 1
    chunks: list = field(default_factory=list)


def pair_indices(n: int) -> list[int]:
    """Slice indices usable as batch rows/columns (inner, off the middle)."""
    return [i for i in range(1, (n + 1) // 2) if 2 * i != n - 1]


def _oblique(n: int, x: int, y: int) -> ClusterId:
    return center(x, y)


def _validate_xy(n: int, X, Y) -> None:
    if set(X) & set(Y):
        raise CubeError("X and Y must be disjoint")
    allowed = set(pair_indices(n))
    if not set(X) <= allowed or not set(Y) <= allowed:
        raise CubeError(f"batch indices must lie in {sorted(allowed)}")


def _substitute(role_moves, n: int, X, Y) -> list[Move]:
    wide = {
        "0": [0],
        "N": [n - 1],
        "a": list(X),
        "A": [n - 1 - x for x in X],
        "b": list(Y),
        "B": [n - 1 - y for y in Y],
    }
    return [Move(axis, i, cw) for axis, role, cw in role_moves for i in wide[role]]


def canonical_solution(contents: tuple) -> tuple:
    """Role-level solution of one oblique center configuration and its length ``m_c``."""
    need = cluster_geometry(*REFERENCE["center_oblique"]).need
    plan = plan_configuration("center_oblique", tuple(contents), need)
    lib = library("center_oblique")
    return tuple(m for e in plan for m in lib.role_sequence(e))


def batch_solve_xy(state: CubeState, contents: tuple, X, Y) -> tuple[Move, ...]:
    """Solve every center cluster in ``X x Y`` at once; all must hold ``contents``."""
    n = state.n
    X, Y = tuple(X), tuple(Y)
    _validate_xy(n, X, Y)
    for x in X:
        for y in Y:
            if extract_configuration(state, _oblique(n, x, y)).contents != tuple(contents):
                raise CubeError(f"cluster ({x},{y}) is not in the requested configuration")
    if not X or not Y:
        return ()
    return tuple(_substitute(canonical_solution(tuple(contents)), n, X, Y))


def make_batch_plan(state: CubeState, contents: tuple, X, Y) -> BatchPlan:
    n = state.n
    X, Y = tuple(sorted(X)), tuple(sorted(Y))
    _validate_xy(n, X, Y)
    size = max(1, int(math.floor(0.5 * math.log2(len(Y))))) if Y else 1
    plan = BatchPlan(tuple(contents), X, Y, chunk_size=size)
    plan.chunks = [X[i : i + size] for i in range(0, len(X), size)]
    for y in Y:
        s = frozenset(x for x in X if extract_configuration(state, _oblique(n, x, y)).contents == tuple(contents))
        if s:
            plan.groups.setdefault(s, []).append(y)
    return plan


def batch_solve_grouped(state: CubeState, contents: tuple, X, Y, checks=None) -> tuple[Move, ...]:
    """Group rows by which columns hold ``contents`` and batch each group."""
    plan = make_batch_plan(state, contents, X, Y)
    moves: list[Move] = []
    cur = state
    m_c = len(canonical_solution(tuple(contents))) if plan.groups else 0
    for s in sorted(plan.groups, key=lambda s: (len(s), sorted(s))):
        ys = plan.groups[s]
        seq = batch_solve_xy(cur, contents, sorted(s), ys)
        if checks is not None:
            checks.append((len(seq), m_c, len(s), len(ys)))
        moves += seq
        cur = apply_sequence(cur, seq)
    return tuple(moves)


def batch_solve_log(state: CubeState, contents: tuple, X, Y, checks=None) -> tuple[Move, ...]:
    """Split ``X`` into chunks of ``max(1, floor(log2|Y| / 2))`` and batch each."""
    plan = make_batch_plan(state, contents, X, Y)
    moves: list[Move] = []
    cur = state
    for chunk in plan.chunks:
        seq = batch_solve_grouped(cur, contents, chunk, plan.Y, checks)
        moves += seq
        cur = apply_sequence(cur, seq)
    return tuple(moves)


def index_groups(n: int) -> list[tuple[int, ...]]:
    idx = pair_indices(n)
    if not idx:
        return []
    k = max(1, math.ceil(math.sqrt(n / 2)))
    size = math.ceil(len(idx) / k)
    return [tuple(idx[i : i + size]) for i in range(0, len(idx), size)]


def solve_optimized(state: CubeState) -> SolveReport:
    run = _Run(state, "optimized")
    _front(run)
    n = state.n

    groups = index_groups(n) if n > 3 else []
    for gi in groups:
        for gj in groups:
            if gi == gj:
                continue
            seen = []
            for x in gi:
                for y in gj:
                    c = extract_configuration(run.state, _oblique(n, x, y)).contents
                    if c not in seen:
                        seen.append(c)
            need = cluster_geometry(n, _oblique(n, gi[0], gj[0])).need
            for c in seen:
                if c == need:
                    continue
                checks: list = []
                seq = batch_solve_log(run.state, c, gi, gj, checks)
                run.report.batch_checks.extend(checks)
                run.stage("centers", seq)
    for cid in enumerate_clusters(n):
        if cid.kind == CENTER and not is_cluster_solved(run.state, cid):
            run.cluster("centers", cid)
    return run.finish()
