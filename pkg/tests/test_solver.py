import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nxncube.clusters import (
    CENTER,
    CORNER,
    CROSS,
    FACE_CENTER,
    WING,
    ClusterId,
    center,
    cluster_geometry,
    cluster_parity,
    enumerate_clusters,
    extract_configuration,
    is_cluster_solved,
    wing,
    wing_indices,
)
from nxncube.cube import CubeError, CubeState, Move, apply_move, apply_sequence, scramble
from nxncube.library import REFERENCE, library
from nxncube.solver import (
    L_MAX,
    ParityError,
    UnsolvableError,
    batch_solve_grouped,
    batch_solve_log,
    batch_solve_xy,
    canonical_solution,
    fix_parity,
    index_groups,
    make_batch_plan,
    pair_indices,
    solve_cluster,
    solve_frame,
    solve_naive,
    solve_optimized,
)


def owners(n):
    out = {}
    for cid in enumerate_clusters(n):
        for p in cluster_geometry(n, cid).positions.tolist():
            out[p] = cid
    return out


def touched_clusters(a, b):
    own = owners(a.n)
    return {own[int(p)] for p in np.nonzero(a.flat != b.flat)[0]}


def prepared(n, seed):
    """Scramble with frame and wing parity already fixed."""
    s, _ = scramble(n, seed, 20 * n)
    s = apply_sequence(s, solve_frame(s))
    return apply_sequence(s, fix_parity(s))


def shared(n, cells, rng, count=6):
    """Put every center cluster in ``cells`` into the same random configuration."""
    lib = library("center_oblique")
    role_seq = ()
    for _ in range(count):
        role_seq += lib.role_sequence(rng.choice(lib.entries))
    moves = []
    for x, y in cells:
        roles = cluster_geometry(n, center(x, y)).roles
        moves += [Move(a, roles[r], cw) for a, r, cw in role_seq]
    return moves


@pytest.mark.parametrize("shape", sorted(REFERENCE))
def test_library_reaches_every_three_slot_set(shape):
    lib = library(shape)
    k = lib.slot_count
    assert len({frozenset(e.slots) for e in lib.entries}) == k * (k - 1) * (k - 2) // 6
    assert min(e.length for e in lib.entries) == 8
    assert all(e.length == 8 + 2 * len(e.setup) for e in lib.entries)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10_000), st.data())
def test_solve_cluster_touches_only_its_cluster(n, seed, data):
    s = prepared(n, seed)
    ids = [c for c in enumerate_clusters(n) if c.kind in (WING, CENTER)]
    cid = data.draw(st.sampled_from(ids))
    seq = solve_cluster(s, cid)
    t = apply_sequence(s, seq)
    assert is_cluster_solved(t, cid)
    assert touched_clusters(s, t) <= {cid}
    assert len(seq) <= L_MAX


def test_solved_cluster_gives_empty_sequence():
    assert solve_cluster(CubeState.solved(6), center(1, 2)) == ()


@pytest.mark.parametrize("shape", ["wing", "center_oblique", "center_diag", "corner"])
def test_single_known_cycle_is_undone_in_ten_moves(shape):
    n, cid = {"wing": (6, wing(2)), "center_oblique": (8, center(1, 3)),
              "center_diag": (6, center(2, 2)), "corner": (4, ClusterId(CORNER))}[shape]
    lib = library(shape)
    geo = cluster_geometry(n, cid)
    for e in [x for x in lib.entries if x.length <= 10][:40]:
        s = apply_sequence(CubeState.solved(n), lib.moves(e, geo.roles))
        seq = solve_cluster(s, cid)
        assert len(seq) <= 10
        assert apply_sequence(s, seq).is_solved()


def test_wings_masked_scramble():
    n = 6
    s, _ = scramble(n, 3, 100)
    s = apply_sequence(s, solve_frame(s))
    s = apply_sequence(s, fix_parity(s))
    for i in wing_indices(n):
        t = apply_sequence(s, solve_cluster(s, wing(i)))
        assert is_cluster_solved(t, wing(i))
        assert touched_clusters(s, t) <= {wing(i)}


def test_odd_wing_needs_parity_fix():
    s = apply_move(CubeState.solved(6), Move("H", 1, True))
    with pytest.raises(ParityError):
        solve_cluster(s, wing(1))
    with pytest.raises(CubeError):
        solve_cluster(s, ClusterId(FACE_CENTER))


def test_solve_frame_n4_and_n5():
    s, _ = scramble(4, 9, 80)
    t = apply_sequence(s, solve_frame(s))
    assert is_cluster_solved(t, ClusterId(CORNER))
    s, _ = scramble(5, 9, 100)
    t = apply_sequence(s, solve_frame(s))
    for k in (CORNER, CROSS, FACE_CENTER):
        assert is_cluster_solved(t, ClusterId(k))
    assert solve_frame(CubeState.solved(5)) == ()


def test_solve_frame_uses_face_and_middle_moves_only():
    for n in (4, 5, 7):
        s, _ = scramble(n, 1, 20 * n)
        allowed = {0, n - 1} | ({(n - 1) // 2} if n % 2 else set())
        assert {m.index for m in solve_frame(s)} <= allowed


def test_frame_rejects_twisted_corner():
    s = CubeState.solved(3)
    flat = s.flat.copy()
    # rotate the colours of one corner in place
    geo = cluster_geometry(3, ClusterId(CORNER))
    a, b, c = geo.slots[0]
    flat[[a, b, c]] = flat[[b, c, a]]
    with pytest.raises(UnsolvableError):
        solve_frame(CubeState(3, flat))


def test_fix_parity_single_slice():
    s = apply_move(CubeState.solved(9), Move("H", 2, True))
    seq = fix_parity(s)
    assert len(seq) == 1
    t = apply_sequence(s, seq)
    assert all(cluster_parity(extract_configuration(t, wing(i))) == "even" for i in wing_indices(9))
    assert fix_parity(CubeState.solved(9)) == ()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_fix_parity_random_nine(seed):
    s, _ = scramble(9, seed, 180)
    s = apply_sequence(s, solve_frame(s))
    seq = fix_parity(s)
    assert len(seq) <= len(wing_indices(9)) == 3
    t = apply_sequence(s, seq)
    assert all(cluster_parity(extract_configuration(t, wing(i))) == "even" for i in wing_indices(9))


def test_naive_long_scramble():
    s, _ = scramble(8, 42, 1000)
    r = solve_naive(s)
    assert r.solved
    assert apply_sequence(s, r.moves).is_solved()
    assert [st.name for st in r.stages][0] == "frame"


@pytest.mark.parametrize("solver", [solve_naive, solve_optimized])
def test_solved_input_needs_no_moves(solver):
    r = solver(CubeState.solved(7))
    assert r.total_moves == 0 and r.solved


@pytest.mark.parametrize("n", [2, 3])
def test_small_cubes(n):
    for seed in range(5):
        s, _ = scramble(n, seed, 40)
        assert solve_optimized(s).solved


def test_optimized_n14():
    s, _ = scramble(14, 5, 280)
    r = solve_optimized(s)
    assert r.solved
    assert {st.name for st in r.stages} <= {"frame", "parity", "wings", "centers"}


def test_naive_stage_invariant_wing_parity_stays_even():
    s, _ = scramble(9, 4, 180)
    r = solve_naive(s)
    cur = s
    seen_parity = False
    for stage in r.stages:
        cur = apply_sequence(cur, stage.moves)
        seen_parity |= stage.name == "parity"
        if seen_parity:
            assert all(cluster_parity(extract_configuration(cur, wing(i))) == "even" for i in wing_indices(9))


# --------------------------------------------------------------------------
# batching


def allowed_touch(cid, X, Y):
    x, y = cid.i, cid.j
    return cid.kind == CENTER and (
        (x in X and y in Y) or (x in X and y in X) or (x in Y and y in Y)
    )


def test_batch_xy_solves_grid_and_respects_side_effects():
    n = 16
    X, Y = [1, 2, 3], [4, 5, 6, 7]
    rng = random.Random(0)
    s = apply_sequence(CubeState.solved(n), shared(n, [(x, y) for x in X for y in Y], rng))
    c = extract_configuration(s, center(1, 4)).contents
    seq = batch_solve_xy(s, c, X, Y)
    t = apply_sequence(s, seq)
    assert all(is_cluster_solved(t, center(x, y)) for x in X for y in Y)
    assert all(allowed_touch(cid, X, Y) for cid in touched_clusters(s, t))
    m_c = len(canonical_solution(c))
    assert len(seq) <= m_c * (len(X) + len(Y) + 1)
    assert len(seq) < 12 * m_c


def test_batch_single_cell_is_a_cluster_solve():
    n = 8
    s = apply_sequence(CubeState.solved(n), shared(n, [(1, 3)], random.Random(1)))
    c = extract_configuration(s, center(1, 3)).contents
    assert batch_solve_xy(s, c, [1], [3]) == solve_cluster(s, center(1, 3))


def test_batch_preconditions():
    n = 10
    s = apply_sequence(CubeState.solved(n), shared(n, [(1, 2), (1, 3)], random.Random(2)))
    c = extract_configuration(s, center(1, 2)).contents
    with pytest.raises(CubeError):
        batch_solve_xy(s, c, [1, 2], [2, 3])
    with pytest.raises(CubeError):
        batch_solve_xy(CubeState.solved(n), c, [1], [2])
    assert batch_solve_log(s, c, [], [2, 3]) == ()


def test_grouped_no_match_and_one_group():
    n = 12
    X, Y = [1, 2], [3, 4, 5]
    s = apply_sequence(CubeState.solved(n), shared(n, [(x, y) for x in X for y in Y], random.Random(3)))
    c = extract_configuration(s, center(1, 3)).contents
    plan = make_batch_plan(s, c, X, Y)
    assert list(plan.groups.values()) == [Y]
    other = extract_configuration(CubeState.solved(n), center(1, 3)).contents
    assert batch_solve_grouped(s, tuple(tuple(v) for v in other[::-1]), X, Y) == ()


def test_grouped_adversarial_all_subsets():
    n = 40
    X = [1, 2, 3]
    Y = list(range(4, 20))
    rng = random.Random(7)
    cells = [(x, y) for k, y in enumerate(Y) for b, x in enumerate(X) if (k % 8) >> b & 1]
    s = apply_sequence(CubeState.solved(n), shared(n, cells, rng))
    c = extract_configuration(s, center(*cells[0])).contents
    plan = make_batch_plan(s, c, X, Y)
    assert len(plan.groups) == 7  # every nonempty subset of a 3-element X
    covered = sorted(y for ys in plan.groups.values() for y in ys)
    assert covered == sorted(y for k, y in enumerate(Y) if k % 8)
    checks = []
    t = apply_sequence(s, batch_solve_grouped(s, c, X, Y, checks))
    assert all(is_cluster_solved(t, center(x, y)) for x in X for y in Y)
    assert all(length <= m * (a + b + 1) for length, m, a, b in checks)


def test_log_chunks_and_sixteen_by_sixteen():
    n = 66
    idx = pair_indices(n)
    X, Y = idx[:16], idx[16:32]
    s = apply_sequence(CubeState.solved(n), shared(n, [(x, y) for x in X for y in Y], random.Random(11)))
    c = extract_configuration(s, center(X[0], Y[0])).contents
    plan = make_batch_plan(s, c, X, Y)
    assert plan.chunk_size == 2 and all(len(ch) <= 2 for ch in plan.chunks)
    seq = batch_solve_log(s, c, X, Y)
    t = apply_sequence(s, seq)
    assert all(is_cluster_solved(t, center(x, y)) for x in X for y in Y)
    assert len(seq) < 256 * len(canonical_solution(c))
    assert make_batch_plan(s, c, X[:2], Y[:4]).chunk_size == 1


def test_index_groups_cover_pair_indices():
    for n in range(4, 40):
        groups = index_groups(n)
        flat = [i for g in groups for i in g]
        assert flat == pair_indices(n)
        if groups:
            k = -(-int((n / 2) ** 0.5 * 1e9) // int(1e9))
            assert len(groups) <= k
