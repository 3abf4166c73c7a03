"""Benchmark records, replicated-configuration scrambles and curve fits."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import asdict, dataclass

import numpy as np

from .clusters import CENTER, CORNER, CROSS, WING, center, cluster_geometry, enumerate_clusters
from .cube import CubeState, Move, apply_sequence, scramble
from .library import library
from .solver import SolveReport, pair_indices, solve_naive, solve_optimized

CSV_FIELDS = (
    "n", "seed", "scramble_len", "algorithm", "total_moves", "frame_moves", "parity_moves",
    "wing_moves", "center_moves", "moves_per_cycle", "seconds", "solved",
)

ALGORITHMS = {"naive": solve_naive, "optimized": solve_optimized}


@dataclass
class BenchRecord:
    n: int
    seed: int
    scramble_len: int
    algorithm: str
    total_moves: int
    frame_moves: int
    parity_moves: int
    wing_moves: int
    center_moves: int
    moves_per_cycle: float
    seconds: float
    solved: bool

    @classmethod
    def from_report(cls, n, seed, scramble_len, report: SolveReport, seconds: float) -> "BenchRecord":
        return cls(
            n, seed, scramble_len, report.algorithm, report.total_moves,
            report.stage_moves("frame"), report.stage_moves("parity"),
            report.stage_moves("wings"), report.stage_moves("centers"),
            report.moves_per_cycle, seconds, report.solved,
        )


def _random_cycles(rng: random.Random, shape: str, count: int) -> tuple:
    lib = library(shape)
    out = ()
    for _ in range(count):
        out += lib.role_sequence(rng.choice(lib.entries))
    return out


def _instantiate(role_seq, roles) -> list[Move]:
    return [Move(axis, roles[role], cw) for axis, role, cw in role_seq]


def replicated_scramble(n: int, seed: int, cycles: int = 12, face_moves: int = 20) -> tuple[CubeState, tuple[Move, ...]]:
    """Scramble where every off-diagonal center cluster shares one configuration.

    One random product of 3-cycles is written in slice roles and instantiated
    on every center cluster ``(x, y)`` with ``x != y`` off the middle; all
    other clusters get their own random 3-cycles, and the result is finished
    with random face moves, which act identically on every such cluster.
    """
    rng = random.Random(seed)
    idx = pair_indices(n)
    shared = _random_cycles(rng, "center_oblique", cycles)
    moves: list[Move] = []
    for x in idx:
        for y in idx:
            if x != y:
                moves += _instantiate(shared, cluster_geometry(n, center(x, y)).roles)
    for cid in enumerate_clusters(n):
        if cid.kind in (CORNER, CROSS, WING, CENTER):
            geo = cluster_geometry(n, cid)
            if geo.shape == "center_oblique" and cid.i in idx and cid.j in idx:
                continue
            moves += _instantiate(_random_cycles(rng, geo.shape, cycles), geo.roles)
    for _ in range(face_moves):
        moves.append(Move(rng.choice("HVD"), rng.choice((0, n - 1)), rng.random() < 0.5))
    return apply_sequence(CubeState.solved(n), moves), tuple(moves)


def make_scramble(n: int, seed: int, length: int | None = None, replicated: bool = False):
    if replicated:
        return replicated_scramble(n, seed)
    return scramble(n, seed, 20 * n if length is None else length)


def run_case(n: int, seed: int, algorithm: str, length: int | None = None, replicated: bool = False) -> tuple[BenchRecord, SolveReport]:
    state, moves = make_scramble(n, seed, length, replicated)
    t = time.perf_counter()
    report = ALGORITHMS[algorithm](state)
    seconds = time.perf_counter() - t
    # independent check: replay the whole answer on the scrambled input
    report.solved = apply_sequence(state, report.moves).is_solved()
    return BenchRecord.from_report(n, seed, len(moves), report, seconds), report


def run_bench(ns, seeds, algorithms, length=None, replicated=False) -> list[BenchRecord]:
    return [run_case(n, s, a, length, replicated)[0] for n in ns for s in seeds for a in algorithms]


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        row["moves_per_cycle"] = f"{r.moves_per_cycle:.3f}"
        row["seconds"] = f"{r.seconds:.4f}"
        row["solved"] = int(r.solved)
        w.writerow(row)
    return buf.getvalue()


@dataclass
class Fit:
    model: str
    a: float
    rss: float


def fit_models(records) -> list[Fit]:
    """Least-squares ``a`` for ``a*n^2`` and ``a*n^2/log2(n)`` over mean moves per n."""
    by_n: dict[int, list[int]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r.total_moves)
    ns = np.array(sorted(by_n), dtype=float)
    if not len(ns):
        return []
    y = np.array([np.mean(by_n[int(n)]) for n in ns])
    out = []
    for name, basis in (("a*n^2", ns**2), ("a*n^2/log2(n)", ns**2 / np.log2(ns))):
        coef, *_ = np.linalg.lstsq(basis[:, None], y, rcond=None)
        rss = float(np.sum((basis * coef[0] - y) ** 2))
        out.append(Fit(name, float(coef[0]), rss))
    return out


def summary(records) -> str:
    lines = [f"{f.model:>15}: a = {f.a:.4f}  rss = {f.rss:.1f}" for f in fit_models(records)]
    cyc = [r.moves_per_cycle for r in records if not math.isnan(r.moves_per_cycle)]
    if cyc:
        lines.append(f"mean moves per 3-cycle: {sum(cyc) / len(cyc):.3f}")
    return "\n".join(lines)
