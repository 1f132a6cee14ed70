import argparse
import datetime
import io
import logging
import platform
import sys
import os

# Add parent directory to path to import utils
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from utils.data_types import ChannelSpec, CodeSpec, SimConfig, SimResult
from utils.sim import find_snr_at_fer, run_paired, write_csv

'''
Guess-count gap between GND and GCD for a low-rate and a high-rate code of the
same length, each run at the SNR where GCD reaches the target FER.
'''

CODES = [CodeSpec(name="rm", r=1, m=5), CodeSpec(name="rm", r=3, m=5)]
CERTIFIED_FLOOR = 0.99


def trend(target_fer: float, frames: int, min_errors: int, max_guesses: int, seed: int, jobs: int) -> list[SimResult]:
    results = []
    for code in CODES:
        snr = find_snr_at_fer(code, "gcd", target_fer, tolerance=0.1, frames=frames, seed=seed, jobs=jobs)
        logging.warning(f"{code.name}: FER {target_fer} near {snr:.3f} dB")
        config = SimConfig(
            code=code,
            channel=ChannelSpec("awgn", snr_db=snr),
            decoders=("gnd", "gcd"),
            frames=max(frames, int(10 * min_errors / target_fer)),
            seed=seed,
            max_guesses=max_guesses,
            stop_at_errors=min_errors,
            check_dominance=True,
        )
        results.append(run_paired(config, jobs=jobs))
    return results


def gap(result: SimResult) -> float:
    return result.stats["gnd"].avg_guesses - result.stats["gcd"].avg_guesses


def trend_checks(results: list[SimResult], min_errors: int) -> list[tuple[str, bool]]:
    """The low-rate/high-rate acceptance checks, in report order."""
    low, high = results
    checks = [(f"gap {low.code_name} > gap {high.code_name}", gap(low) > gap(high))]
    for result in results:
        gnd, gcd = result.stats["gnd"], result.stats["gcd"]
        checks += [
            (f"{result.code_name}: gcd avg_guesses < gnd avg_guesses", gcd.avg_guesses < gnd.avg_guesses),
            (f"{result.code_name}: >= {min_errors} errors per decoder", min(gnd.errors, gcd.errors) >= min_errors),
            (
                f"{result.code_name}: gnd ml_certified_frac >= {CERTIFIED_FLOOR}",
                gnd.ml_certified_fraction >= CERTIFIED_FLOOR,
            ),
            (f"{result.code_name}: no dominance violations", result.dominance_violations == 0),
        ]
    return checks


def render_record(results: list[SimResult], checks: list[tuple[str, bool]], command: str) -> str:
    """Markdown block for BENCHMARKS.md: command, CSV, gaps, operation counts and checks."""
    csv = io.StringIO()
    write_csv(results, csv)
    lines = [
        f"### Run {datetime.date.today().isoformat()} on {platform.machine()} / Python {platform.python_version()}",
        "",
        "```",
        command,
        "```",
        "",
        "```",
        csv.getvalue().rstrip("\n"),
        "```",
        "",
        "| Code | Eb/N0 (dB) | gap | gnd avg_operations | gcd avg_operations | gnd ml_certified_frac |",
        "| :--- | :--- | :--- | :--- | :--- | :--- |",
    ]
    for result in results:
        gnd, gcd = result.stats["gnd"], result.stats["gcd"]
        lines.append(
            f"| {result.code_name} | {result.channel.snr_db:.3f} | {gap(result):.2f} | "
            f"{gnd.avg_operations:.1f} | {gcd.avg_operations:.1f} | {gnd.ml_certified_fraction:.4f} |"
        )
    lines.append("")
    lines += [f"- [{'x' if ok else ' '}] {name}" for name, ok in checks]
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="GND vs GCD guess gap against code rate")
    parser.add_argument("--target-fer", type=float, default=1e-2)
    parser.add_argument("--frames", type=int, default=5000)
    parser.add_argument("--min-errors", type=int, default=200)
    parser.add_argument("--max-guesses", type=int, default=10 ** 6)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--record", help="append the run to this markdown file, e.g. benchmarks/BENCHMARKS.md")
    args = parser.parse_args()

    logging.getLogger().setLevel(logging.WARNING)
    results = trend(args.target_fer, args.frames, args.min_errors, args.max_guesses, args.seed, args.jobs)
    write_csv(results, sys.stdout)

    checks = trend_checks(results, args.min_errors)
    for result in results:
        st = result.stats
        print(
            f"# {result.code_name}: gap={gap(result):.2f} "
            f"ops gnd={st['gnd'].avg_operations:.1f} gcd={st['gcd'].avg_operations:.1f} "
            f"gnd_certified={st['gnd'].ml_certified_fraction:.4f}",
            file=sys.stderr,
        )
    for name, ok in checks:
        print(f"# {'PASS' if ok else 'FAIL'}: {name}", file=sys.stderr)

    if args.record:
        command = "python benchmarks/guess_trend.py " + " ".join(sys.argv[1:])
        with open(args.record, "a") as f:
            f.write("\n" + render_record(results, checks, command))
    sys.exit(0 if all(ok for _, ok in checks) else 1)
