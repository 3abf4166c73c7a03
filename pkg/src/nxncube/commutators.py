"""The three 8-move 3-cycles and their conjugates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cube import (
    B,
    CubeError,
    CubiePosition,
    F,
    Move,
    R,
    _geometry,
    addresses_of,
    invert_sequence,
    named_cubie,
    parse_sequence,
    sequence_permutation,
    sticker_cubie,
)

CORNER = "corner"
EDGE = "edge"
CENTER = "center"


class UnsupportedDimensionError(CubeError):
    pass


@dataclass(frozen=True)
class CycleSpec:
    """A 3-cycle: ``permuted[0] -> permuted[1] -> permuted[2] -> permuted[0]``."""

    kind: str
    n: int
    param: int | None
    permuted: tuple[CubiePosition, CubiePosition, CubiePosition]
    sequence: tuple[Move, ...]


def corner_cycle(n: int) -> CycleSpec:
    if n < 2:
        raise UnsupportedDimensionError("n must be at least 2")
    seq = parse_sequence("U R' D R U' R' D' R", n)
    permuted = tuple(named_cubie(n, name) for name in ("DFL", "UBR", "UFR"))
    return CycleSpec(CORNER, n, None, permuted, seq)


def edge_sequence(n: int, x: int) -> tuple[Move, ...]:
    top, bottom = 0, n - 1
    return (
        Move("H", top, True),
        Move("V", x, True),
        Move("H", bottom, False),
        Move("V", x, False),
        Move("H", top, False),
        Move("V", x, True),
        Move("H", bottom, True),
        Move("V", x, False),
    )


def edge_cycle(n: int, x: int) -> CycleSpec:
    """Cycle ``DLD_{n-x-1} -> URD_x -> UFV_x`` using vertical slice ``x``.

    For ``x == n - 1`` every move is a face move and the result is the corner
    cycle; ``x == 0`` is its mirror image.  Both are tagged ``kind="corner"``.
    """
    if n < 2:
        raise UnsupportedDimensionError("n must be at least 2")
    if not 0 <= x < n:
        raise CubeError(f"x={x} out of range for n={n}")
    seq = edge_sequence(n, x)
    if x == 0:
        # the named cubies collapse onto corners that the slice never reaches;
        # follow the actual cubie map from UFL instead
        permuted = _follow(n, seq, named_cubie(n, "UFL"))
    else:
        permuted = tuple(named_cubie(n, name) for name in (f"DLD{n - x - 1}", f"URD{x}", f"UFV{x}"))
    kind = CORNER if x in (0, n - 1) else EDGE
    return CycleSpec(kind, n, x, permuted, seq)


def center_sequence(n: int, first: int, second: int) -> tuple[Move, ...]:
    """``[H_first, V_{n-1} H_second' V_{n-1}']`` written out as 8 moves.

    Any two distinct inner rows give a 3-cycle of single center stickers:
    the two commutator halves overlap in one sticker of the R face.
    """
    right = n - 1
    return (
        Move("H", first, True),
        Move("V", right, True),
        Move("H", second, False),
        Move("V", right, False),
        Move("H", first, False),
        Move("V", right, True),
        Move("H", second, True),
        Move("V", right, False),
    )


def center_cycle(n: int, k: int) -> CycleSpec:
    """Cycle ``FV_kH_{n-k-1} -> BH_kV_k -> RH_kV_k`` (face-local rows/columns)."""
    if n <= 3:
        raise UnsupportedDimensionError("center 3-cycles need n > 3")
    if not (1 <= k and 2 * k < n - 1):
        raise CubeError(f"k={k} invalid for n={n}: need 1 <= k < n-k-1")
    seq = center_sequence(n, k, n - k - 1)
    permuted = (
        CubiePosition(*sticker_cubie(n, F, n - k - 1, k)),
        CubiePosition(*sticker_cubie(n, B, k, k)),
        CubiePosition(*sticker_cubie(n, R, k, k)),
    )
    return CycleSpec(CENTER, n, k, permuted, seq)


def _cubie_map(n: int, seq: Sequence[Move]) -> dict[CubiePosition, CubiePosition]:
    """Where the cubie at each visible position ends up after ``seq``."""
    src = sequence_permutation(n, seq)
    dest = np.empty_like(src)
    dest[src] = np.arange(len(src))
    cubies = _geometry(n)[1].tolist()
    return {CubiePosition(*cubies[i]): CubiePosition(*cubies[j]) for i, j in enumerate(dest.tolist())}


def _follow(n: int, seq: Sequence[Move], start: CubiePosition) -> tuple[CubiePosition, ...]:
    where = _cubie_map(n, seq)
    out = [start]
    while where[out[-1]] != start:
        out.append(where[out[-1]])
        if len(out) > 3:
            raise CubeError("sequence is not a 3-cycle through the given cubie")
    return tuple(out)


def conjugate(setup: Iterable[Move], base: CycleSpec) -> tuple[tuple[Move, ...], tuple[CubiePosition, ...]]:
    """Wrap ``base`` as ``setup + base + setup^-1``.

    The returned positions are where ``setup`` has to start from to land on
    the base triple, so the conjugate cycles those positions in the same order.
    """
    setup = tuple(setup)
    back = _cubie_map(base.n, invert_sequence(setup)) if setup else None
    permuted = tuple(back[p] for p in base.permuted) if back else base.permuted
    return setup + base.sequence + invert_sequence(setup), permuted


def predicted_support(spec: CycleSpec) -> frozenset[tuple[int, int, int]]:
    return frozenset().union(*(addresses_of(spec.n, p.stickers(spec.n)) for p in spec.permuted))


def permutation_support(n: int, seq: Iterable[Move]) -> frozenset[tuple[int, int, int]]:
    """Sticker slots moved by ``seq``, independent of any colouring."""
    src = sequence_permutation(n, seq)
    return addresses_of(n, np.nonzero(src != np.arange(len(src)))[0])
