import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Optional

import pandas as pd

from .analytics import binomial_ci95
from .channel import frame_rng, transmit
from .codes import LinearCode, resolve_code
from .data_types import (
    ChannelSpec,
    CodeSpec,
    DecoderConfig,
    DecoderKind,
    DecoderStats,
    FrameChunkRequest,
    SimConfig,
    SimResult,
    Termination,
)
from .decoders import decode
from .gf2 import BitVector
from .metrics import Stopwatch, time_execution

'''
Paired Monte-Carlo harness.

Every frame draws one information word and one channel realization, and hands
the same LLR vector to every configured decoder. Frames are cut into chunks
that a pool of workers pulls from a bounded queue; the reducer folds chunk
results strictly in frame order, so counters do not depend on the number of
workers.
'''

CHUNK_FRAMES = 256
QUEUE_DEPTH = 2  # pending chunks per worker
DEFAULT_SNR_BRACKET = (-2.0, 12.0)
INFO_STREAM = 1


def _decoder_configs(config: SimConfig) -> list[DecoderConfig]:
    return [DecoderConfig(DecoderKind(d), config.max_guesses) for d in config.decoders]


def simulate_frame(code: LinearCode, channel: ChannelSpec, decoders: list[DecoderConfig], seed: int, frame_index: int):
    """One paired frame: [(error, guesses, certified, tep weight, soft weight, operations)] per decoder."""
    rng = frame_rng(seed, frame_index, INFO_STREAM)
    u = BitVector(rng.integers(0, 2, size=code.k, dtype="uint8"))
    c = code.encode(u)
    r = transmit(code, c, channel, frame_index)
    record = []
    for cfg in decoders:
        out = decode(code, r, cfg)
        record.append((
            out.codeword != c,
            out.guesses,
            out.termination != Termination.CAP_HIT and out.ml_certified,
            out.tep.weight(),
            out.soft_weight,
            out.operations,
        ))
    return record


def _simulate_chunk(code: LinearCode, channel: ChannelSpec, decoders: list[DecoderConfig], seed: int, start: int, stop: int):
    return [simulate_frame(code, channel, decoders, seed, i) for i in range(start, stop)]


class _Reducer:
    def __init__(self, config: SimConfig, names: list[str]):
        self.config = config
        self.names = names
        self.stats = {name: DecoderStats(decoder=name) for name in names}
        self.frames_run = 0
        self.dominance_violations = 0
        self.ml_disagreements = 0
        self._gnd = names.index("gnd") if "gnd" in names else None
        self._gcd = names.index("gcd") if "gcd" in names else None

    def fold(self, frame_index: int, record) -> bool:
        """Accumulate one frame; True once stop_at_errors is satisfied."""
        self.frames_run += 1
        for name, (error, guesses, certified, weight, _, operations) in zip(self.names, record):
            st = self.stats[name]
            st.frames_run += 1
            st.errors += int(error)
            st.total_guesses += guesses
            st.total_operations += operations
            st.max_guesses_observed = max(st.max_guesses_observed, guesses)
            st.certified += int(certified)
            st.guess_histogram[weight] = st.guess_histogram.get(weight, 0) + 1

        if self.config.check_dominance and self._gnd is not None and self._gcd is not None:
            gnd, gcd = record[self._gnd], record[self._gcd]
            if gnd[2] and gcd[2] and gcd[1] > gnd[1]:
                self.dominance_violations += 1
                self._violation(f"frame {frame_index}: GCD used {gcd[1]} guesses, GND used {gnd[1]}")

        if self.config.check_ml_agreement:
            weights = {rec[4] for rec in record if rec[2]}
            if len(weights) > 1:
                self.ml_disagreements += 1
                self._violation(f"frame {frame_index}: certified decoders disagree on soft weight {sorted(weights)}")

        limit = self.config.stop_at_errors
        return limit is not None and all(st.errors >= limit for st in self.stats.values())

    def _violation(self, message: str):
        logging.error(message)
        if self.config.strict:
            raise AssertionError(message)


async def _run_pipeline(config: SimConfig, code: LinearCode, channel: ChannelSpec, reducer: _Reducer, jobs: int):
    loop = asyncio.get_running_loop()
    decoders = _decoder_configs(config)
    queue = asyncio.Queue(maxsize=QUEUE_DEPTH * jobs)
    requests = [
        FrameChunkRequest(i, start, min(config.frames, start + CHUNK_FRAMES), loop.create_future())
        for i, start in enumerate(range(0, config.frames, CHUNK_FRAMES))
    ]
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None

    async def worker():
        while True:
            req = await queue.get()
            try:
                if req.future.done():
                    continue
                args = (code, channel, decoders, config.seed, req.start, req.stop)
                if executor is not None:
                    records = await loop.run_in_executor(executor, _simulate_chunk, *args)
                else:
                    records = await asyncio.to_thread(_simulate_chunk, *args)
                if not req.future.done():
                    req.future.set_result(records)
            except Exception as e:
                if not req.future.done():
                    req.future.set_exception(e)
            finally:
                queue.task_done()

    async def producer():
        for req in requests:
            await queue.put(req)

    tasks = [asyncio.create_task(worker()) for _ in range(jobs)]
    tasks.append(asyncio.create_task(producer()))
    try:
        for req in requests:
            records = await req.future
            for offset, record in enumerate(records):
                if reducer.fold(req.start + offset, record):
                    logging.info(f"stop_at_errors reached after {reducer.frames_run} frames")
                    return
            logging.info(f"chunk {req.index + 1}/{len(requests)} folded ({reducer.frames_run} frames)")
    finally:
        for req in requests:
            if not req.future.done():
                req.future.cancel()
        for task in tasks:
            task.cancel()
        await asyncio.gather(*tasks, return_exceptions=True)
        if executor is not None:
            executor.shutdown(wait=True, cancel_futures=True)


@time_execution
def run_paired(config: SimConfig, jobs: int = 1, code: Optional[LinearCode] = None) -> SimResult:
    """Run every configured decoder on identical receptions and reduce the counters."""
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    code = code if code is not None else resolve_code(config.code)
    channel = replace(config.channel, seed=config.seed)
    names = [DecoderKind(d).value for d in config.decoders]
    reducer = _Reducer(config, names)

    with Stopwatch() as sw:
        asyncio.run(_run_pipeline(config, code, channel, reducer, jobs))

    for st in reducer.stats.values():
        st.fer = st.errors / st.frames_run if st.frames_run else 0.0
        st.fer_ci95 = binomial_ci95(st.errors, st.frames_run)

    result = SimResult(
        code_name=code.name,
        n=code.n,
        k=code.k,
        channel=channel,
        seed=config.seed,
        stats=reducer.stats,
        frames_run=reducer.frames_run,
        dominance_violations=reducer.dominance_violations,
        ml_disagreements=reducer.ml_disagreements,
        wall_time=sw.elapsed,
    )
    logging.info(
        f"{code.name} {channel.kind}={channel.param}: {result.frames_run} frames, "
        + ", ".join(
            f"{n} fer={st.fer:.3g} avg_guesses={st.avg_guesses:.4g} avg_operations={st.avg_operations:.4g}"
            for n, st in result.stats.items()
        )
    )
    return result


def run_sweep(config: SimConfig, values, jobs: int = 1, code: Optional[LinearCode] = None) -> list[SimResult]:
    """run_paired at each channel parameter in values (snr_db for awgn, p for bsc)."""
    field_name = "p" if config.channel.kind == "bsc" else "snr_db"
    results = []
    for value in values:
        point = replace(config, channel=replace(config.channel, **{field_name: float(value)}))
        results.append(run_paired(point, jobs=jobs, code=code))
    return results


@time_execution
def find_snr_at_fer(
    code: CodeSpec,
    decoder: str,
    target_fer: float,
    tolerance: float = 0.05,
    frames: int = 2000,
    seed: int = 0,
    bracket: tuple = DEFAULT_SNR_BRACKET,
    max_guesses: Optional[int] = None,
    stop_at_errors: Optional[int] = None,
    jobs: int = 1,
    linear_code: Optional[LinearCode] = None,
) -> float:
    """
    Bisect snr_db until the FER interval brackets target_fer or the step drops
    below tolerance. Every evaluation reuses the same seed.
    """
    if not 0.0 < target_fer < 1.0:
        raise ValueError(f"target_fer must lie in (0, 1), got {target_fer}")

    def fer_at(snr_db: float) -> tuple[float, float]:
        cfg = SimConfig(
            code=code,
            channel=ChannelSpec("awgn", snr_db=snr_db, seed=seed),
            decoders=(decoder,),
            frames=frames,
            seed=seed,
            max_guesses=max_guesses,
            stop_at_errors=stop_at_errors,
        )
        st = next(iter(run_paired(cfg, jobs=jobs, code=linear_code).stats.values()))
        return st.fer, st.fer_ci95

    lo, hi = bracket
    fer_lo, _ = fer_at(lo)
    fer_hi, _ = fer_at(hi)
    if not fer_lo >= target_fer >= fer_hi:
        raise ValueError(
            f"Target FER {target_fer} is not bracketed by [{lo}, {hi}] dB (FER {fer_lo:.3g} .. {fer_hi:.3g})"
        )

    while hi - lo >= tolerance:
        mid = 0.5 * (lo + hi)
        fer, ci = fer_at(mid)
        logging.info(f"bisection: snr={mid:.4f} dB fer={fer:.4g} +/- {ci:.2g}")
        if abs(fer - target_fer) <= ci:
            return mid
        if fer > target_fer:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


CSV_COLUMNS = [
    "code", "n", "k", "channel", "param", "decoder", "frames", "errors",
    "fer", "fer_ci95", "avg_guesses", "max_guesses", "ml_certified_frac", "seed",
]


def results_frame(results: list[SimResult]) -> pd.DataFrame:
    rows = [row for result in results for row in result.to_rows()]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_csv(results: list[SimResult], stream) -> None:
    """One row per (decoder, operating point), fixed column order."""
    results_frame(results).to_csv(stream, index=False, float_format="%.6g", lineterminator="\n")
