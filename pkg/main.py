import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Optional

import numpy as np

# Utils
from utils.channel import LlrVector
from utils.codes import resolve_code
from utils.data_types import ChannelSpec, CodeSpec, DecoderConfig, DecoderKind, SimConfig
from utils.decoders import decode
from utils.metrics import set_quiet, time_execution
from utils.sim import find_snr_at_fer, run_paired, run_sweep, write_csv

'''
Command-line front end: decode one reception, run paired simulations,
compare decoders frame by frame, sweep an operating-point grid.
CSV goes to stdout and diagnostics to stderr.
'''

DECODER_CHOICES = [kind.value for kind in DecoderKind]
CODE_CHOICES = ["hamming74", "rm", "random", "repetition", "file"]
NUMBER_LIST_FLAGS = ("--llr", "--snr-db", "--p")
NUMBER_TOKEN = re.compile(r"^[-+]?\.?\d[\d.,eE+\-\s]*$")


# --- Argument parsing ---

def attach_number_lists(argv: list[str]) -> list[str]:
    """
    Glue the number tokens after --llr, --snr-db and --p onto the flag as
    `--flag=a,b,c`. argparse reads a token such as `-0.8,0.3` or `-1e-3` as
    an unknown option otherwise.
    """
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in NUMBER_LIST_FLAGS:
            values = []
            while i + 1 < len(argv) and NUMBER_TOKEN.match(argv[i + 1]):
                values.append(argv[i + 1])
                i += 1
            if values:
                token = f"{token}={','.join(values)}"
        out.append(token)
        i += 1
    return out


def _floats(text: str, what: str) -> list[float]:
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise ValueError(f"{what} is empty")
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise ValueError(f"{what} must be a list of numbers, got '{text}'") from None


def _add_code_args(p: argparse.ArgumentParser):
    p.add_argument("--code", choices=CODE_CHOICES, default="hamming74")
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--code-seed", type=int, default=0)
    p.add_argument("--matrix", help="parity-check matrix file for --code file")
    p.add_argument("--max-guesses", type=int)
    p.add_argument("--quiet", action="store_true", help="only log warnings and errors")


def _add_sim_args(p: argparse.ArgumentParser, grid: bool = False):
    p.add_argument("--channel", choices=["bsc", "awgn"], default="awgn")
    value_help = "comma-separated grid" if grid else None
    p.add_argument("--p", help=value_help)
    p.add_argument("--snr-db", help=value_help)
    p.add_argument("--decoder", action="append", choices=DECODER_CHOICES)
    p.add_argument("--frames", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stop-at-errors", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict", action="store_true", help="abort on the first dominance or ML violation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guessdec", description="Guessing decoders for binary linear codes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decode", help="decode one reception given as LLRs")
    _add_code_args(p)
    p.add_argument("--decoder", choices=DECODER_CHOICES, default="gcd")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--llr", help="N LLR values, comma or space separated")
    source.add_argument("--llr-file", help="file holding N LLR values, comma or whitespace separated")

    p = sub.add_parser("simulate", help="Monte-Carlo FER and guess counts")
    _add_code_args(p)
    _add_sim_args(p)
    p.add_argument("--target-fer", type=float, help="find the SNR reaching this FER, then simulate there")

    p = sub.add_parser("compare", help="paired decoders with per-frame dominance and ML checks")
    _add_code_args(p)
    _add_sim_args(p)

    p = sub.add_parser("sweep", help="simulate over a grid of SNRs or crossover probabilities")
    _add_code_args(p)
    _add_sim_args(p, grid=True)
    return parser


def _code_spec(args) -> CodeSpec:
    return CodeSpec(
        name=args.code, m=args.m, r=args.r, n=args.n, k=args.k,
        code_seed=args.code_seed, matrix=args.matrix,
    )


def _channel_values(args) -> list[float]:
    raw = args.p if args.channel == "bsc" else args.snr_db
    flag = "--p" if args.channel == "bsc" else "--snr-db"
    if raw is None:
        raise ValueError(f"{args.channel} channel needs {flag}")
    return _floats(raw, flag)


def _channel(args, value: float) -> ChannelSpec:
    if args.channel == "bsc":
        return ChannelSpec("bsc", p=value, seed=args.seed)
    return ChannelSpec("awgn", snr_db=value, seed=args.seed)


def _sim_config(args, decoders, value: float, **checks) -> SimConfig:
    return SimConfig(
        code=_code_spec(args),
        channel=_channel(args, value),
        decoders=tuple(decoders),
        frames=args.frames,
        seed=args.seed,
        max_guesses=args.max_guesses,
        stop_at_errors=args.stop_at_errors,
        strict=args.strict,
        **checks,
    )


# --- Commands ---

@time_execution
def cmd_decode(args) -> int:
    code = resolve_code(_code_spec(args))
    if args.llr_file is not None:
        values = _floats(Path(args.llr_file).read_text(), f"LLR file {args.llr_file}")
    else:
        values = _floats(args.llr, "--llr")
    llr = LlrVector(np.array(values))
    outcome = decode(code, llr, DecoderConfig(DecoderKind(args.decoder), args.max_guesses))
    print(outcome.describe())
    return 0


@time_execution
def cmd_simulate(args) -> int:
    decoders = args.decoder or ["gcd"]
    if args.target_fer is not None:
        if args.channel != "awgn" or len(decoders) != 1:
            raise ValueError("--target-fer needs --channel awgn and exactly one --decoder")
        snr = find_snr_at_fer(
            _code_spec(args), decoders[0], args.target_fer,
            frames=args.frames, seed=args.seed, max_guesses=args.max_guesses,
            stop_at_errors=args.stop_at_errors, jobs=args.jobs,
        )
        logging.info(f"target FER {args.target_fer} reached near {snr:.4f} dB")
        values = [snr]
    else:
        values = _channel_values(args)
        if len(values) != 1:
            raise ValueError("simulate takes a single operating point; use sweep for grids")
    result = run_paired(_sim_config(args, decoders, values[0]), jobs=args.jobs)
    write_csv([result], sys.stdout)
    return 0


@time_execution
def cmd_compare(args) -> int:
    decoders = args.decoder or ["gnd", "gcd"]
    values = _channel_values(args)
    if len(values) != 1:
        raise ValueError("compare takes a single operating point")
    config = _sim_config(args, decoders, values[0], check_dominance=True, check_ml_agreement=True)
    result = run_paired(config, jobs=args.jobs)
    write_csv([result], sys.stdout)
    violations = result.dominance_violations + result.ml_disagreements
    print(f"violations,{violations}")
    return 1 if violations else 0


@time_execution
def cmd_sweep(args) -> int:
    decoders = args.decoder or ["gcd"]
    values = _channel_values(args)
    results = run_sweep(_sim_config(args, decoders, values[0]), values, jobs=args.jobs)
    write_csv(results, sys.stdout)
    return 0


COMMANDS = {
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(attach_number_lists(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        return int(e.code or 0)

    set_quiet(args.quiet)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"assertion failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
