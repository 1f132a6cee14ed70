import asyncio
import enum
import math
from dataclasses import dataclass, field
from typing import Optional

'''Houses the shared dataclasses'''


class Termination(str, enum.Enum):
    EARLY_STOP = "early_stop"
    EXHAUSTED = "exhausted"
    CAP_HIT = "cap_hit"


class DecoderKind(str, enum.Enum):
    GND = "gnd"
    GCD = "gcd"
    OSD_GCD = "osd"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    p: Optional[float] = None
    snr_db: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind == "bsc":
            if self.p is None or not 0.0 < self.p < 0.5:
                raise ValueError(f"bsc crossover probability must lie in (0, 1/2), got {self.p}")
        elif self.kind == "awgn":
            if self.snr_db is None or not math.isfinite(self.snr_db):
                raise ValueError(f"awgn channel needs a finite snr_db, got {self.snr_db}")
        else:
            raise ValueError(f"Unknown channel kind '{self.kind}'")

    @property
    def param(self) -> float:
        return self.p if self.kind == "bsc" else self.snr_db


@dataclass(frozen=True)
class DecoderConfig:
    decoder_kind: DecoderKind = DecoderKind.GCD
    max_guesses: Optional[int] = None  # None = unlimited

    def __post_init__(self):
        if self.max_guesses is not None and self.max_guesses < 1:
            raise ValueError(f"max_guesses must be >= 1, got {self.max_guesses}")


@dataclass(frozen=True)
class DecodeOutcome:
    codeword: "BitVector"
    tep: "BitVector"
    soft_weight: float
    guesses: int
    termination: Termination
    ml_certified: bool
    # Column XORs on packed (N-K)-bit words; the oracle counts generator-row XORs.
    operations: int = 0
    # Only the oracle checks uniqueness of the minimum.
    ties: Optional[int] = None

    def describe(self) -> str:
        return (
            f"codeword={self.codeword} tep={self.tep} soft_weight={self.soft_weight:.6g} "
            f"guesses={self.guesses} termination={self.termination.value} "
            f"ml_certified={str(self.ml_certified).lower()} operations={self.operations}"
        )


@dataclass(frozen=True)
class CodeSpec:
    name: str
    m: Optional[int] = None
    r: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None
    code_seed: Optional[int] = None
    matrix: Optional[str] = None


@dataclass(frozen=True)
class SimConfig:
    code: CodeSpec
    channel: ChannelSpec
    decoders: tuple
    frames: int
    seed: int
    max_guesses: Optional[int] = None
    target_fer: Optional[float] = None
    stop_at_errors: Optional[int] = None
    check_dominance: bool = False
    check_ml_agreement: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.frames < 1:
            raise ValueError(f"frames must be >= 1, got {self.frames}")
        if self.target_fer is not None and not 0.0 < self.target_fer < 1.0:
            raise ValueError(f"target_fer must lie in (0, 1), got {self.target_fer}")
        if not self.decoders:
            raise ValueError("at least one decoder is required")
        if self.stop_at_errors is not None and self.stop_at_errors < 1:
            raise ValueError(f"stop_at_errors must be >= 1, got {self.stop_at_errors}")


@dataclass
class DecoderStats:
    decoder: str
    frames_run: int = 0
    errors: int = 0
    total_guesses: int = 0
    total_operations: int = 0
    max_guesses_observed: int = 0
    certified: int = 0
    guess_histogram: dict = field(default_factory=dict)
    fer: float = 0.0
    fer_ci95: float = 0.0

    @property
    def avg_guesses(self) -> float:
        return self.total_guesses / self.frames_run if self.frames_run else 0.0

    @property
    def avg_operations(self) -> float:
        return self.total_operations / self.frames_run if self.frames_run else 0.0

    @property
    def ml_certified_fraction(self) -> float:
        return self.certified / self.frames_run if self.frames_run else 0.0


@dataclass
class SimResult:
    code_name: str
    n: int
    k: int
    channel: ChannelSpec
    seed: int
    stats: dict
    frames_run: int = 0
    dominance_violations: int = 0
    ml_disagreements: int = 0
    wall_time: float = 0.0

    def to_rows(self) -> list[dict]:
        rows = []
        for name, st in self.stats.items():
            rows.append({
                "code": self.code_name,
                "n": self.n,
                "k": self.k,
                "channel": self.channel.kind,
                "param": float(self.channel.param),
                "decoder": name,
                "frames": st.frames_run,
                "errors": st.errors,
                "fer": st.fer,
                "fer_ci95": st.fer_ci95,
                "avg_guesses": st.avg_guesses,
                "max_guesses": st.max_guesses_observed,
                "ml_certified_frac": st.ml_certified_fraction,
                "seed": self.seed,
            })
        return rows


@dataclass
class FrameChunkRequest:
    index: int
    start: int
    stop: int
    future: asyncio.Future
