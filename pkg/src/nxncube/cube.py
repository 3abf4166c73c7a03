"""Sticker-level model of the n x n x n cube.

A state is ``6 * n * n`` sticker colours stored face by face in the order
U, L, F, R, B, D.  Each face grid is read as seen from outside the cube:

* U is viewed from above with B at the top of the grid,
* L, F, R, B are viewed from the side with U at the top,
* D is viewed from below with F at the top.

Cubie coordinates ``(x, y, z)`` run left to right, top to bottom and front
to back, so slice ``H_i`` is ``y == i``, ``V_i`` is ``x == i`` and ``D_i`` is
``z == i``.  ``H`` turns clockwise as seen from U, ``V`` as seen from L and
``D`` as seen from F.  With that convention the face letters expand to

    U = H0,  D = H(n-1)',  L = V0,  R = V(n-1)',  F = D0,  B = D(n-1)'

and every move is a fixed permutation of sticker indices.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

FACES = "ULFRBD"
COLORS = "WOGRBY"
U, L, F, R, B, D = range(6)

AXES = "HVD"
# Axis of each slice family in (x, y, z) coordinates.
_AXIS_COORD = {"H": 1, "V": 0, "D": 2}

# Outward normal of every face, in (x, y, z).
_NORMALS = {
    U: (0, -1, 0),
    L: (-1, 0, 0),
    F: (0, 0, -1),
    R: (1, 0, 0),
    B: (0, 0, 1),
    D: (0, 1, 0),
}


class CubeError(ValueError):
    """Base class for malformed cubes, moves or files."""


class InvalidMoveError(CubeError):
    pass


class NotationError(CubeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class StateFormatError(CubeError):
    pass


class Move(NamedTuple):
    """A quarter turn of slice ``index`` of family ``axis``."""

    axis: str
    index: int
    clockwise: bool = True

    def inverse(self) -> "Move":
        return Move(self.axis, self.index, not self.clockwise)

    def __str__(self) -> str:
        return f"{self.axis.lower()}{self.index}{'' if self.clockwise else chr(39)}"


MoveSequence = tuple  # tuple[Move, ...]


def invert_sequence(seq: Iterable[Move]) -> tuple[Move, ...]:
    return tuple(m.inverse() for m in reversed(tuple(seq)))


# --------------------------------------------------------------------------
# geometry


def sticker_index(n: int, face: int, row: int, col: int) -> int:
    return (face * n + row) * n + col


def sticker_address(n: int, index: int) -> tuple[int, int, int]:
    face, rest = divmod(index, n * n)
    row, col = divmod(rest, n)
    return face, row, col


def sticker_cubie(n: int, face: int, row: int, col: int) -> tuple[int, int, int]:
    """Cubie coordinate ``(x, y, z)`` carrying the given sticker."""
    last = n - 1
    if face == U:
        return col, 0, last - row
    if face == L:
        return 0, row, last - col
    if face == F:
        return col, row, 0
    if face == R:
        return last, row, col
    if face == B:
        return last - col, row, last
    return col, last, row


def cubie_stickers(n: int, cubie: tuple[int, int, int]) -> tuple[int, ...]:
    """Sticker indices of a cubie, ordered by face (U, L, F, R, B, D)."""
    x, y, z = cubie
    last = n - 1
    out = []
    if y == 0:
        out.append(sticker_index(n, U, last - z, x))
    if x == 0:
        out.append(sticker_index(n, L, y, last - z))
    if z == 0:
        out.append(sticker_index(n, F, y, x))
    if x == last:
        out.append(sticker_index(n, R, y, z))
    if z == last:
        out.append(sticker_index(n, B, y, last - x))
    if y == last:
        out.append(sticker_index(n, D, z, x))
    return tuple(out)


@dataclass(frozen=True, order=True)
class CubiePosition:
    x: int
    y: int
    z: int

    def kind(self, n: int) -> str:
        on_boundary = sum(c in (0, n - 1) for c in (self.x, self.y, self.z))
        return ("internal", "center", "edge", "corner")[on_boundary]

    def stickers(self, n: int) -> tuple[int, ...]:
        return cubie_stickers(n, (self.x, self.y, self.z))


_LETTER_COORD = {"U": (1, 0), "D": (1, -1), "L": (0, 0), "R": (0, -1), "F": (2, 0), "B": (2, -1)}
_SLICE_COORD = {"H": 1, "V": 0, "D": 2}


def named_cubie(n: int, name: str) -> CubiePosition:
    """Position of a cubie written in face/slice notation.

    ``"DFL"`` is a corner, ``"UFV3"`` the U/F edge cubie in slice ``V_3``,
    ``"FV1H3"`` the F-face center cubie in slices ``V_1`` and ``H_3``.
    """
    coords: list[int | None] = [None, None, None]
    for letter, value in re.findall(r"([UDLRFBHV])(\d*)", name):
        if value:
            coords[_SLICE_COORD[letter]] = int(value)
        else:
            axis, side = _LETTER_COORD[letter]
            coords[axis] = 0 if side == 0 else n - 1
    if any(c is None for c in coords):
        raise CubeError(f"cannot place cubie {name!r}")
    # "D<k>" parsed as a face letter plus digits means a depth slice.
    return CubiePosition(*coords)  # type: ignore[arg-type]


@lru_cache(maxsize=None)
def _geometry(n: int) -> tuple[np.ndarray, np.ndarray, dict]:
    """Doubled sticker centres, cubie coordinates and a centre->index lookup."""
    count = 6 * n * n
    points = np.empty((count, 3), dtype=np.int64)
    cubies = np.empty((count, 3), dtype=np.int64)
    for idx in range(count):
        face, row, col = sticker_address(n, idx)
        cubie = sticker_cubie(n, face, row, col)
        cubies[idx] = cubie
        points[idx] = [2 * c - (n - 1) + d for c, d in zip(cubie, _NORMALS[face])]
    lookup = {tuple(p): i for i, p in enumerate(points.tolist())}
    return points, cubies, lookup


def _rotate(points: np.ndarray, axis: str, clockwise: bool) -> np.ndarray:
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    if axis == "H":
        out = (z, y, -x) if clockwise else (-z, y, x)
    elif axis == "V":
        out = (x, -z, y) if clockwise else (x, z, -y)
    else:
        out = (-y, x, z) if clockwise else (y, -x, z)
    return np.stack(out, axis=1)


@lru_cache(maxsize=None)
def move_permutation(n: int, move: Move) -> np.ndarray:
    """Gather array ``src`` with ``new = old[src]`` for a single move."""
    if move.axis not in _AXIS_COORD:
        raise InvalidMoveError(f"unknown axis {move.axis!r}")
    if not 0 <= move.index < n:
        raise InvalidMoveError(f"slice index {move.index} out of range for n={n}")
    points, cubies, lookup = _geometry(n)
    src = np.arange(6 * n * n)
    moving = np.nonzero(cubies[:, _AXIS_COORD[move.axis]] == move.index)[0]
    rotated = _rotate(points[moving], move.axis, move.clockwise)
    dest = np.fromiter((lookup[tuple(p)] for p in rotated.tolist()), dtype=np.int64, count=len(moving))
    src[dest] = moving
    src.setflags(write=False)
    return src


def sequence_permutation(n: int, seq: Iterable[Move]) -> np.ndarray:
    perm = np.arange(6 * n * n)
    for move in seq:
        perm = perm[move_permutation(n, move)]
    return perm


# --------------------------------------------------------------------------
# state


class CubeState:
    """Immutable sticker array of an n x n x n cube."""

    __slots__ = ("n", "_stickers")

    def __init__(self, n: int, stickers: np.ndarray | Sequence[int]):
        if n < 2:
            raise CubeError("cube dimension must be at least 2")
        arr = np.array(stickers, dtype=np.uint8).reshape(-1)
        if arr.size != 6 * n * n:
            raise CubeError(f"expected {6 * n * n} stickers, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_stickers", arr)

    def __setattr__(self, name, value):
        raise AttributeError("CubeState is immutable")

    @classmethod
    def solved(cls, n: int) -> "CubeState":
        return cls(n, np.repeat(np.arange(6, dtype=np.uint8), n * n))

    @property
    def flat(self) -> np.ndarray:
        return self._stickers

    @property
    def stickers(self) -> np.ndarray:
        """Read-only ``(6, n, n)`` view of the colours."""
        return self._stickers.reshape(6, self.n, self.n)

    def is_solved(self) -> bool:
        return bool((self.stickers == self.stickers[:, :1, :1]).all())

    def color_counts(self) -> np.ndarray:
        return np.bincount(self._stickers, minlength=6)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CubeState):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._stickers, other._stickers)

    def __hash__(self) -> int:
        return hash((self.n, self._stickers.tobytes()))

    def __repr__(self) -> str:
        return f"CubeState(n={self.n}, solved={self.is_solved()})"


def apply_move(state: CubeState, move: Move) -> CubeState:
    return CubeState(state.n, state.flat[move_permutation(state.n, move)])


def apply_sequence(state: CubeState, seq: Iterable[Move]) -> CubeState:
    flat = state.flat
    for move in seq:
        flat = flat[move_permutation(state.n, move)]
    return CubeState(state.n, flat)


def sticker_diff(a: CubeState, b: CubeState) -> frozenset[tuple[int, int, int]]:
    """Addresses ``(face, row, col)`` whose colours differ."""
    if a.n != b.n:
        raise CubeError(f"dimension mismatch: {a.n} vs {b.n}")
    return frozenset(sticker_address(a.n, int(i)) for i in np.nonzero(a.flat != b.flat)[0])


def addresses_of(n: int, indices: Iterable[int]) -> frozenset[tuple[int, int, int]]:
    return frozenset(sticker_address(n, int(i)) for i in indices)


# --------------------------------------------------------------------------
# notation

_TOKEN = re.compile(r"\S+")
_FACE_TOKEN = re.compile(r"([UDLRFB])(['2]?)$")
_SLICE_TOKEN = re.compile(r"([hvd])(\d+)(['2]?)$")


def face_move(n: int, letter: str, prime: bool = False) -> Move:
    """Slice move equivalent to a face letter."""
    axis, side = {"U": ("H", 0), "D": ("H", 1), "L": ("V", 0), "R": ("V", 1), "F": ("D", 0), "B": ("D", 1)}[letter]
    index = 0 if side == 0 else n - 1
    clockwise = (side == 0) != prime
    return Move(axis, index, clockwise)


def parse_sequence(text: str, n: int) -> tuple[Move, ...]:
    moves: list[Move] = []
    for match in _TOKEN.finditer(text):
        token = match.group()
        if token == "2" and moves:
            # "d2 2": a detached half-turn suffix repeats the previous move
            moves.append(moves[-1])
            continue
        face = _FACE_TOKEN.match(token)
        if face:
            move = face_move(n, face.group(1), face.group(2) == "'")
            suffix = face.group(2)
        else:
            sl = _SLICE_TOKEN.match(token)
            if not sl:
                raise NotationError(f"bad token {token!r}", match.start())
            index = int(sl.group(2))
            if index >= n:
                raise NotationError(f"slice index {index} out of range for n={n}", match.start())
            move = Move(sl.group(1).upper(), index, sl.group(3) != "'")
            suffix = sl.group(3)
        moves.extend([move, move] if suffix == "2" else [move])
    return tuple(moves)


def format_sequence(seq: Iterable[Move]) -> str:
    return " ".join(str(m) for m in seq)


# --------------------------------------------------------------------------
# scrambling and files


def scramble(n: int, seed: int, length: int) -> tuple[CubeState, tuple[Move, ...]]:
    """Random quarter turns drawn with :class:`random.Random` (Mersenne Twister).

    Each move picks axis, slice and direction uniformly; the draw order is
    fixed so a given ``(n, seed, length)`` always yields the same sequence.
    """
    if n < 2 or length < 0:
        raise CubeError("need n >= 2 and length >= 0")
    rng = random.Random(seed)
    seq = tuple(
        Move(rng.choice(AXES), rng.randrange(n), rng.random() < 0.5) for _ in range(length)
    )
    return apply_sequence(CubeState.solved(n), seq), seq


def serialize_state(state: CubeState) -> str:
    lines = [f"n={state.n}"]
    for f, grid in zip(FACES, state.stickers):
        lines.append(f"face={f}")
        lines.extend("".join(COLORS[c] for c in row) for row in grid)
    return "\n".join(lines) + "\n"


def deserialize_state(text: str) -> CubeState:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not re.fullmatch(r"n=\d+", lines[0]):
        raise StateFormatError("first line must be n=<int>")
    n = int(lines[0][2:])
    if n < 2:
        raise StateFormatError("n must be at least 2")
    if len(lines) != 1 + 6 * (n + 1):
        raise StateFormatError(f"expected {1 + 6 * (n + 1)} lines, got {len(lines)}")
    colors = []
    pos = 1
    for f in FACES:
        if lines[pos] != f"face={f}":
            raise StateFormatError(f"line {pos + 1}: expected face={f}")
        for row in lines[pos + 1 : pos + 1 + n]:
            if len(row) != n:
                raise StateFormatError(f"face {f}: row {row!r} is not {n} wide")
            for ch in row:
                if ch not in COLORS:
                    raise StateFormatError(f"unknown colour letter {ch!r}")
                colors.append(COLORS.index(ch))
        pos += n + 1
    state = CubeState(n, colors)
    if not (state.color_counts() == n * n).all():
        raise StateFormatError("every colour must appear exactly n*n times")
    return state
