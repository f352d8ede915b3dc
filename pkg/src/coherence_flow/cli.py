"""Command-line entry point: ``coherence-flow {sweep,verify,figure}``.

Exit status: 0 on success, 1 when verification fails, 2 for invalid
arguments (including unwritable output paths).
"""
from __future__ import annotations

import argparse
import sys

from .channels import ChannelKind
from .errors import CoherenceFlowError
from .experiments import (
    DEFAULT_STEPS,
    FIXTURES,
    SweepConfig,
    reproduce_figure,
    run_sweep,
    run_verify,
)
from .states import BlochVector, sample_random_bloch

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CHANNEL_CODES = [k.value for k in ChannelKind]


def _bloch(text: str) -> BlochVector:
    try:
        return BlochVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _channels(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip().lower()
        if part == "all":
            out.extend(ChannelKind)
        elif part in CHANNEL_CODES:
            out.append(ChannelKind(part))
        else:
            raise argparse.ArgumentTypeError(
                f"unknown channel {part!r}; choose from {'|'.join(CHANNEL_CODES)}"
            )
    return out


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-flow",
        description="l1-norm coherence and entanglement of a qubit under noise channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep p in [0, 1] for one channel and state")
    sweep.add_argument("--channel", required=True, choices=CHANNEL_CODES)
    sweep.add_argument(
        "--bloch", type=_bloch,
        help="initial Bloch vector, e.g. --bloch=-0.41,0.80,-0.38 "
             "(default: random mixed state drawn from --seed)",
    )
    sweep.add_argument("--steps", type=_positive_int, default=DEFAULT_STEPS)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--out", help="output CSV path (default: stdout)")

    verify = sub.add_parser("verify", help="compare closed forms with the numerical pipeline")
    verify.add_argument(
        "--channel", type=_channels, action="append",
        help="channel code or comma list; repeatable (default: all six)",
    )
    verify.add_argument("--n-states", type=_positive_int, default=1000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tolerance", type=float, default=1e-9)
    verify.add_argument("--steps", type=_positive_int, default=DEFAULT_STEPS)
    verify.add_argument("--workers", type=_positive_int, default=1)
    verify.add_argument("--out", help="report path (default: stdout)")

    figure = sub.add_parser("figure", help="reproduce the data behind a figure")
    figure.add_argument("--fixture", required=True, choices=list(FIXTURES))
    figure.add_argument(
        "--state-index", type=int, default=0,
        help="which initial state of the fixture (fig1 has two: 0 lines, 1 points)",
    )
    figure.add_argument("--steps", type=_positive_int, default=DEFAULT_STEPS)
    figure.add_argument("--out", help="output CSV path (default: stdout)")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            bloch = args.bloch
            if bloch is None:
                if args.seed is None:
                    parser.error("sweep needs --bloch or --seed")
                bloch = sample_random_bloch(args.seed, "mixed")
            cfg = SweepConfig(ChannelKind(args.channel), bloch, args.steps, args.out, args.seed)
            text = run_sweep(cfg)
            if args.out is None:
                _emit(text, None)
            return EXIT_OK
        if args.command == "figure":
            _emit(reproduce_figure(args.fixture, args.state_index, args.steps), args.out)
            return EXIT_OK
        channels = None
        if args.channel:
            channels = list(dict.fromkeys(k for group in args.channel for k in group))
        report = run_verify(
            channels, args.n_states, args.seed, args.tolerance, args.steps, args.workers
        )
        _emit(report.format(), args.out)
        return EXIT_OK if report.passed else EXIT_FAIL
    except (CoherenceFlowError, OSError) as exc:
        sys.stderr.write(f"coherence-flow: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
