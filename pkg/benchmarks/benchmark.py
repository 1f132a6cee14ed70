import argparse
import logging
import sys
import os
import time

import numpy as np

# Add parent directory to path to import utils
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from utils.channel import transmit
from utils.codes import hamming_7_4, reed_muller
from utils.data_types import ChannelSpec, DecoderConfig, DecoderKind
from utils.decoders import decode
from utils.gf2 import BitVector
from utils.metrics import latency_summary

# Suppress harness logging during benchmark
logging.getLogger().setLevel(logging.WARNING)

CASES = [
    # (code factory, snr_db)
    (hamming_7_4, 4.0),
    (lambda: reed_muller(1, 4), 3.0),
    (lambda: reed_muller(2, 4), 4.0),
    (lambda: reed_muller(2, 5), 4.0),
]


def benchmark_decoder(code, snr_db: float, kind: DecoderKind, frames: int, max_guesses=None, seed: int = 0):
    """Per-frame decode latency, mean guesses and mean column XORs over identical receptions."""
    spec = ChannelSpec("awgn", snr_db=snr_db, seed=seed)
    rng = np.random.default_rng(seed)
    receptions = [
        transmit(code, code.encode(BitVector(rng.integers(0, 2, size=code.k))), spec, i)
        for i in range(frames)
    ]
    config = DecoderConfig(kind, max_guesses)

    # Warmup
    for r in receptions[:10]:
        decode(code, r, config)

    times, guesses, operations = [], [], []
    for r in receptions:
        start = time.perf_counter()
        out = decode(code, r, config)
        times.append(time.perf_counter() - start)
        guesses.append(out.guesses)
        operations.append(out.operations)
    return latency_summary(times), float(np.mean(guesses)), float(np.mean(operations))


def print_stats(name, stats, avg_guesses, avg_operations):
    print(f"\nBenchmark for: {name}")
    print(f"  P50: {stats['p50'] * 1e6:.1f} us")
    print(f"  P95: {stats['p95'] * 1e6:.1f} us")
    print(f"  P99: {stats['p99'] * 1e6:.1f} us")
    print(f"  avg guesses: {avg_guesses:.2f}")
    print(f"  avg operations: {avg_operations:.1f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Decoder latency percentiles")
    parser.add_argument("--frames", type=int, default=2000)
    parser.add_argument("--max-guesses", type=int, default=10 ** 5)
    args = parser.parse_args()

    print("Running Benchmarks...")
    for factory, snr in CASES:
        code = factory()
        for kind in (DecoderKind.GND, DecoderKind.GCD, DecoderKind.OSD_GCD):
            stats, avg, ops = benchmark_decoder(code, snr, kind, args.frames, args.max_guesses)
            print_stats(f"{kind.value} on {code.name} [{code.n},{code.k}] at {snr} dB", stats, avg, ops)

    print("\nBenchmarking complete.")
