import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .data_types import ChannelSpec
from .gf2 import BitVector, matvec_t

'''BSC and BPSK-AWGN channels, LLRs, hard decisions and soft weights.'''

# Keeps soft weights finite; far above anything the simulated SNRs produce.
LLR_CLAMP = 1e6


@dataclass(frozen=True, eq=False)
class LlrVector:
    values: np.ndarray

    def __post_init__(self):
        arr = np.clip(np.array(self.values, dtype=np.float64), -LLR_CLAMP, LLR_CLAMP)
        if arr.ndim != 1 or not np.all(np.isfinite(arr)):
            raise ValueError("LLR vector must be a 1-D sequence of finite reals")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def length(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.length

    @property
    def reliabilities(self) -> np.ndarray:
        return np.abs(self.values)

    def permuted(self, perm) -> "LlrVector":
        return LlrVector(self.values[np.asarray(perm)])

    def __eq__(self, other) -> bool:
        return isinstance(other, LlrVector) and np.array_equal(self.values, other.values)

    __hash__ = None


def noise_variance(snr_db: float, rate: float) -> float:
    """sigma^2 for unit-energy BPSK at Eb/N0 = snr_db."""
    return 1.0 / (2.0 * rate * 10.0 ** (snr_db / 10.0))


def bsc_llr(y: np.ndarray, p: float) -> np.ndarray:
    magnitude = math.log((1.0 - p) / p)
    return np.where(np.asarray(y) == 0, magnitude, -magnitude)


def awgn_llr(y: np.ndarray, sigma2: float) -> np.ndarray:
    return 2.0 * np.asarray(y, dtype=np.float64) / sigma2


def frame_rng(seed: int, frame_index: int, stream: int = 0) -> np.random.Generator:
    """Independent generator per (seed, frame, stream); worker order cannot change it."""
    return np.random.default_rng([seed, frame_index, stream])


def transmit(code, c: BitVector, spec: ChannelSpec, frame_index: int) -> LlrVector:
    """Send codeword c once; deterministic in (spec.seed, frame_index)."""
    rng = frame_rng(spec.seed, frame_index)
    bits = c.bits
    if spec.kind == "bsc":
        flips = (rng.random(bits.size) < spec.p).astype(np.uint8)
        return LlrVector(bsc_llr(bits ^ flips, spec.p))
    sigma2 = noise_variance(spec.snr_db, code.rate)
    x = 1.0 - 2.0 * bits.astype(np.float64)
    y = x + rng.normal(0.0, math.sqrt(sigma2), size=bits.size)
    return LlrVector(awgn_llr(y, sigma2))


def hard_decision(r: LlrVector) -> BitVector:
    return BitVector((r.values < 0).astype(np.uint8))


def support_weight(reliabilities, positions: Iterable[int]) -> float:
    # fsum is correctly rounded, so equal supports give bit-identical weights
    # whatever order the positions arrive in.
    return math.fsum(reliabilities[i] for i in positions)


def soft_weight(e: BitVector, r: Union[LlrVector, np.ndarray]) -> float:
    """Sum of |r_i| over the support of e. r may be the sub-vector matching a partial TEP."""
    rel = r.reliabilities if isinstance(r, LlrVector) else np.abs(np.asarray(r, dtype=np.float64))
    if e.length != rel.size:
        raise ValueError(f"Length mismatch: TEP has {e.length} bits, LLR vector has {rel.size}")
    return support_weight(rel, np.flatnonzero(e.bits))


def syndrome(code, z: BitVector) -> BitVector:
    return matvec_t(code.parity, z)
