import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from nxncube.cube import (
    CubeError,
    CubeState,
    CubiePosition,
    InvalidMoveError,
    Move,
    NotationError,
    StateFormatError,
    apply_move,
    apply_sequence,
    deserialize_state,
    format_sequence,
    invert_sequence,
    move_permutation,
    named_cubie,
    parse_sequence,
    scramble,
    serialize_state,
    sticker_diff,
)


@st.composite
def moves(draw, n, max_size=30):
    k = draw(st.integers(0, max_size))
    return tuple(
        Move(draw(st.sampled_from("HVD")), draw(st.integers(0, n - 1)), draw(st.booleans()))
        for _ in range(k)
    )


@st.composite
def cube_and_moves(draw, lo=2, hi=7):
    n = draw(st.integers(lo, hi))
    return n, draw(moves(n))


@pytest.mark.parametrize("n", range(2, 8))
def test_every_move_matches_grid_oracle(n):
    lab = oracle.labelled(n)
    for axis in "HVD":
        for i in range(n):
            for cw in (True, False):
                got = lab.ravel()[move_permutation(n, Move(axis, i, cw))].reshape(6, n, n)
                assert (got == oracle.turn(lab, axis, i, cw)).all(), (axis, i, cw)


@settings(max_examples=60, deadline=None)
@given(cube_and_moves())
def test_sequences_match_grid_oracle(case):
    n, seq = case
    got = apply_sequence(CubeState.solved(n), seq).stickers
    assert (got == oracle.run(oracle.solved(n), seq)).all()


@settings(max_examples=60, deadline=None)
@given(cube_and_moves())
def test_inverse_sequence_undoes(case):
    n, seq = case
    s = apply_sequence(CubeState.solved(n), seq)
    assert apply_sequence(s, invert_sequence(seq)).is_solved()


@settings(max_examples=40, deadline=None)
@given(cube_and_moves())
def test_colour_counts_preserved(case):
    n, seq = case
    assert (apply_sequence(CubeState.solved(n), seq).color_counts() == n * n).all()


@pytest.mark.parametrize("n", [2, 3, 5])
def test_every_move_has_order_four(n):
    for axis in "HVD":
        for i in range(n):
            s = CubeState.solved(n)
            m = Move(axis, i, True)
            once = apply_move(s, m)
            assert not once.is_solved()
            assert apply_sequence(s, [m] * 4).is_solved()
            assert apply_move(once, m.inverse()).is_solved()


def _order(n, seq):
    s = CubeState.solved(n)
    k = 0
    while True:
        s = apply_sequence(s, seq)
        k += 1
        if s.is_solved():
            return k


def test_known_orders_on_3x3():
    # classic face-turn facts: R U has order 105, R U R' U' order 6
    assert _order(3, parse_sequence("R U", 3)) == 105
    assert _order(3, parse_sequence("R U R' U'", 3)) == 6
    assert _order(3, parse_sequence("R2 U2", 3)) == 6


def test_face_letters_are_outer_slices():
    n = 5
    assert parse_sequence("U D L R F B", n) == (
        Move("H", 0, True), Move("H", 4, False), Move("V", 0, True),
        Move("V", 4, False), Move("D", 0, True), Move("D", 4, False),
    )


def test_u_turn_moves_front_row_to_left():
    s = apply_sequence(CubeState.solved(3), parse_sequence("U", 3))
    assert (s.stickers[1, 0] == 2).all()  # L top row now green (from F)
    assert (s.stickers[2, 1:] == 2).all()


def test_parse_and_format_roundtrip():
    seq = parse_sequence("U R' h1 v2' d0 F2", 4)
    assert len(seq) == 7
    assert parse_sequence(format_sequence(seq), 4) == seq


def test_detached_two_repeats_previous():
    assert parse_sequence("h1 2", 4) == (Move("H", 1, True),) * 2


@pytest.mark.parametrize("text,pos", [("U X", 2), ("h9", 0), ("R U q1", 4)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(NotationError) as err:
        parse_sequence(text, 4)
    assert err.value.position == pos


def test_invalid_move_index():
    with pytest.raises(InvalidMoveError):
        apply_move(CubeState.solved(3), Move("H", 3, True))


def test_scramble_is_deterministic():
    a, sa = scramble(6, 11, 50)
    b, sb = scramble(6, 11, 50)
    assert sa == sb and a == b
    assert scramble(6, 12, 50)[1] != sa
    assert scramble(4, 1, 0)[0].is_solved()


@settings(max_examples=30, deadline=None)
@given(cube_and_moves())
def test_serialize_roundtrip(case):
    n, seq = case
    s = apply_sequence(CubeState.solved(n), seq)
    assert deserialize_state(serialize_state(s)) == s


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("n=3", "n=x"),
        lambda t: "\n".join(t.splitlines()[:-1]),
        lambda t: t.replace("face=F", "face=Q"),
        lambda t: t.replace("GGG", "GGZ", 1),
        lambda t: t.replace("GGG", "GGW", 1),
        lambda t: t.replace("GGG", "GG", 1),
    ],
)
def test_deserialize_rejects_malformed(mutate):
    text = serialize_state(CubeState.solved(3))
    with pytest.raises(StateFormatError):
        deserialize_state(mutate(text))


def test_named_cubies():
    assert named_cubie(3, "DFL") == CubiePosition(0, 2, 0)
    assert named_cubie(5, "UFV3") == CubiePosition(3, 0, 0)
    assert named_cubie(5, "FV1H3") == CubiePosition(1, 3, 0)
    assert named_cubie(5, "DLD2") == CubiePosition(0, 4, 2)
    assert named_cubie(4, "UBR").kind(4) == "corner"
    with pytest.raises(CubeError):
        named_cubie(4, "UF")


def test_sticker_diff_dimension_mismatch():
    with pytest.raises(CubeError):
        sticker_diff(CubeState.solved(3), CubeState.solved(4))


def test_state_is_immutable():
    s = CubeState.solved(3)
    with pytest.raises(AttributeError):
        s.n = 4
    with pytest.raises(ValueError):
        s.flat[0] = 3
    assert isinstance(s.stickers, np.ndarray)
