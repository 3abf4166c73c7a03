"""Command line: ``python -m nxncube <command> ...``.

Exit codes: 0 solved (or success), 1 unsolved, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import ALGORITHMS, make_scramble, run_bench, summary, to_csv
from .clusters import closed_form_counts, count_clusters
from .cube import (
    CubeError,
    CubeState,
    apply_sequence,
    deserialize_state,
    format_sequence,
    parse_sequence,
    serialize_state,
    sticker_diff,
)
from .solver import L_MAX

EXIT_SOLVED, EXIT_UNSOLVED, EXIT_INPUT = 0, 1, 2


class _InputError(Exception):
    pass


def _read_state(path: str) -> CubeState:
    try:
        return deserialize_state(Path(path).read_text())
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from exc
    except CubeError as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_scramble(args) -> int:
    state, moves = make_scramble(args.n, args.seed, args.length, args.replicated)
    seq = format_sequence(moves) + "\n"
    if args.out:
        Path(args.out).write_text(serialize_state(state))
        if args.moves:
            Path(args.moves).write_text(seq)
        else:
            sys.stdout.write(seq)
    else:
        sys.stdout.write(serialize_state(state))
        if args.moves:
            Path(args.moves).write_text(seq)
    return EXIT_SOLVED


def _report_text(report) -> str:
    lines = [f"input {report.digest}  algorithm {report.algorithm}"]
    totals: dict[str, list] = {}
    for s in report.stages:
        t = totals.setdefault(s.name, [0, 0.0])
        t[0] += s.count
        t[1] += s.seconds
    for name, (count, secs) in totals.items():
        lines.append(f"  {name:<8} {count:>8} moves  {secs:8.3f} s")
    lines.append(f"  {'total':<8} {report.total_moves:>8} moves")
    if report.cycle_lengths:
        lines.append(f"  3-cycles used: {len(report.cycle_lengths)}, "
                     f"moves per 3-cycle (<=1 setup move) {report.moves_per_cycle:.2f}, "
                     f"with longer setups {report.mean_cycle_length:.2f}")
    if report.cluster_lengths:
        lines.append(f"  longest single-cluster solve {max(report.cluster_lengths)} (bound {L_MAX})")
    lines.append(f"  solved: {'yes' if report.solved else 'no'}")
    return "\n".join(lines) + "\n"


def _report_csv(report) -> str:
    rows = ["stage,moves,seconds"]
    rows += [f"{s.name},{s.count},{s.seconds:.4f}" for s in report.stages]
    rows.append(f"total,{report.total_moves},")
    return "\n".join(rows) + "\n"


def cmd_solve(args) -> int:
    state = _read_state(args.state)
    try:
        report = ALGORITHMS[args.algorithm](state)
    except CubeError as exc:
        print(f"error: state cannot be solved: {exc}", file=sys.stderr)
        return EXIT_UNSOLVED
    report.solved = apply_sequence(state, report.moves).is_solved()
    seq = format_sequence(report.moves) + "\n"
    if args.out:
        Path(args.out).write_text(seq)
    else:
        sys.stdout.write(seq)
    sys.stdout.write(_report_csv(report) if args.format == "csv" else _report_text(report))
    return EXIT_SOLVED if report.solved else EXIT_UNSOLVED


def cmd_verify(args) -> int:
    state = _read_state(args.state)
    try:
        moves = parse_sequence(Path(args.sequence).read_text(), state.n)
    except OSError as exc:
        raise _InputError(f"cannot read {args.sequence}: {exc.strerror}") from exc
    except CubeError as exc:
        raise _InputError(f"{args.sequence}: {exc}") from exc
    final = apply_sequence(state, moves)
    diff = sticker_diff(final, CubeState.solved(state.n))
    print(f"moves {len(moves)}  residual stickers {len(diff)}")
    return EXIT_SOLVED if not diff else EXIT_UNSOLVED


def cmd_clusters(args) -> int:
    counts = count_clusters(args.n)
    closed = closed_form_counts(args.n)
    keys = ("corners", "wings", "cross", "edges", "face_centers", "centers", "center_orbits")
    if args.format == "csv":
        print("n," + ",".join(keys) + ",edges_closed_form,centers_closed_form")
        print(f"{args.n}," + ",".join(str(counts[k]) for k in keys) + f",{closed['edges']},{closed['centers']}")
    else:
        for k in keys:
            print(f"{k:<14}{counts[k]}")
        print(f"{'edges (closed form)':<22}{closed['edges']}")
        print(f"{'centers (closed form)':<22}{closed['centers']}")
    if counts["edges"] != closed["edges"] or counts["centers"] != closed["centers"]:
        print("internal error: enumeration disagrees with the closed form", file=sys.stderr)
        return EXIT_UNSOLVED
    return EXIT_SOLVED


def cmd_bench(args) -> int:
    seeds = args.seed if args.seed is not None else list(range(args.seeds))
    algorithms = args.algorithm or ["naive", "optimized"]
    records = run_bench(args.n, seeds, algorithms, args.length, args.replicated)
    table = to_csv(records)
    if args.out:
        Path(args.out).write_text(table)
    if args.format == "csv" or not args.out:
        sys.stdout.write(table)
    print(summary(records))
    bad = [r for r in records if not r.solved]
    for r in bad:
        print(f"error: n={r.n} seed={r.seed} {r.algorithm} left the cube unsolved", file=sys.stderr)
    return EXIT_UNSOLVED if bad else EXIT_SOLVED


def _n(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nxncube", description="Scramble and solve n x n x n cubes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scramble", help="write a scrambled state")
    s.add_argument("--n", type=_n, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--length", type=_nonneg, default=None, help="quarter turns (default 20*n)")
    s.add_argument("--replicated", action="store_true", help="shared center configuration scramble")
    s.add_argument("--out", help="state file (default: stdout)")
    s.add_argument("--moves", help="also write the scramble sequence here")
    s.set_defaults(func=cmd_scramble)

    s = sub.add_parser("solve", help="solve a state file")
    s.add_argument("state")
    s.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="optimized")
    s.add_argument("--format", choices=("text", "csv"), default="text")
    s.add_argument("--out", help="write the move sequence here instead of stdout")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="apply a sequence and check the result")
    s.add_argument("state")
    s.add_argument("sequence")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("clusters", help="cluster counts for one n")
    s.add_argument("--n", type=_n, required=True)
    s.add_argument("--format", choices=("text", "csv"), default="text")
    s.set_defaults(func=cmd_clusters)

    s = sub.add_parser("bench", help="benchmark and fit move counts")
    s.add_argument("--n", type=_n, nargs="+", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--seed", type=int, nargs="+")
    g.add_argument("--seeds", type=_nonneg, default=3, help="use seeds 0..K-1")
    s.add_argument("--algorithm", choices=sorted(ALGORITHMS), action="append")
    s.add_argument("--length", type=_nonneg, default=None)
    s.add_argument("--replicated", action="store_true")
    s.add_argument("--out", help="CSV file")
    s.add_argument("--format", choices=("text", "csv"), default="text")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CubeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
