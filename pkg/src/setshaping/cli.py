"""Command-line entry point: ``setshaping <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiment, huffman, oracle
from .errors import DomainError
from .experiment import ExperimentConfig, RoundTripError
from .seqcore import Sequence, coding_limit, empirical_histogram
from .shaping import ShapingParams, shape, unshape


def _read_seq(args) -> Sequence:
    if args.seq is not None and args.seq_file is not None:
        raise DomainError("give either --seq or --seq-file, not both")
    if args.seq_file is not None:
        text = Path(args.seq_file).read_text()
    elif args.seq is not None:
        text = args.seq
    else:
        raise DomainError("a sequence is required (--seq or --seq-file)")
    return Sequence.parse(text, args.ns)


def _add_seq_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ns", type=int, required=True, help="alphabet size; symbols are 1..ns")
    p.add_argument("--seq", help='space-separated symbols, e.g. "2 2 3 1"')
    p.add_argument("--seq-file", help="file holding whitespace-separated symbols")


def cmd_lc(args) -> None:
    print(f"{coding_limit(_read_seq(args)):.6f}")


def cmd_shape(args) -> None:
    x = _read_seq(args)
    print(shape(x, ShapingParams(args.ns, len(x), args.k)))


def cmd_unshape(args) -> None:
    y = _read_seq(args)
    if len(y) <= args.k:
        raise DomainError(f"sequence of length {len(y)} is too short for K={args.k}")
    print(unshape(y, ShapingParams(args.ns, len(y) - args.k, args.k)))


def cmd_huffman(args) -> None:
    seq = _read_seq(args)
    code = huffman.build_code(empirical_histogram(seq))
    for sym, word in code.items():
        print(f"{sym} {word}")
    print(f"total_bits {len(huffman.encode(seq, code))}")


def cmd_experiment(args) -> None:
    config = ExperimentConfig(ns=args.ns, N=args.len, K=args.k, history=args.history, seed=args.seed)
    records = experiment.run_trials(config)
    report = experiment.summarize(config, records)
    if args.out:
        experiment.write_report(report, args.out)
    if args.trials_csv:
        experiment.write_trials_csv(records, args.trials_csv)
    print(report.to_json())


def cmd_verify(args) -> int:
    rep = oracle.verify_bijection(args.ns, args.len, args.k)
    status = "PASS" if rep.passed else "FAIL"
    print(
        f"{status} ns={rep.ns} N={rep.N} K={rep.K} rows={rep.rows} "
        f"shape_mismatches={rep.shape_mismatches} unshape_mismatches={rep.unshape_mismatches} "
        f"rejected_outside={rep.rejected_outside}/{rep.outside}"
    )
    if args.table_csv:
        oracle.build_table(args.ns, args.len, args.k).write_csv(args.table_csv)
    return 0 if rep.passed else 1


def cmd_stats(args) -> None:
    print(json.dumps(oracle.exhaustive_stats(args.ns, args.len, args.k).to_dict()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="setshaping", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lc", help="coding limit of a sequence, in bits")
    _add_seq_args(p)
    p.set_defaults(func=cmd_lc)

    for name, func in (("shape", cmd_shape), ("unshape", cmd_unshape)):
        p = sub.add_parser(name, help=f"{name} a sequence")
        _add_seq_args(p)
        p.add_argument("--k", type=int, default=1, help="shaping order (length increase)")
        p.set_defaults(func=func)

    p = sub.add_parser("huffman", help="Huffman codebook and encoded length")
    _add_seq_args(p)
    p.set_defaults(func=cmd_huffman)

    p = sub.add_parser("experiment", help="Monte-Carlo experiment")
    p.add_argument("--ns", type=int, required=True)
    p.add_argument("--len", type=int, default=None, help="input length N (default 2*ns)")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--history", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report (.json, otherwise CSV)")
    p.add_argument("--trials-csv", help="write per-trial records as CSV")
    p.set_defaults(func=cmd_experiment)

    for name, func, hlp in (
        ("verify", cmd_verify, "check against the brute-force table"),
        ("stats", cmd_stats, "exact statistics over all inputs"),
    ):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--ns", type=int, required=True)
        p.add_argument("--len", type=int, required=True)
        p.add_argument("--k", type=int, default=1)
        if name == "verify":
            p.add_argument("--table-csv", help="dump the correspondence table")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except (DomainError, RoundTripError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
