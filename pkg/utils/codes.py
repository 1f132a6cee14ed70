import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from pathlib import Path

import numpy as np

from .data_types import CodeSpec
from .gf2 import BitMatrix, BitVector, SystematicParity, matvec_t, null_space, parse_matrix_text, rank, systematize

'''Builds, loads and caches the binary linear codes.'''

# Codes are immutable, so entries never expire.
code_cache = {}


@dataclass(frozen=True, eq=False)
class LinearCode:
    n: int
    k: int
    generator: BitMatrix
    parity: BitMatrix
    name: str
    systematic: SystematicParity = field(init=False, repr=False)

    def __post_init__(self):
        if (self.generator.rows, self.generator.cols) != (self.k, self.n) or self.parity.cols != self.n:
            raise ValueError(
                f"{self.name}: generator must be {self.k}x{self.n} and parity must have {self.n} columns"
            )
        if self.parity.rows != self.n - self.k:
            raise ValueError(f"{self.name}: parity must have {self.n - self.k} rows, got {self.parity.rows}")
        if rank(self.generator) != self.k:
            raise ValueError(f"{self.name}: generator rank is below k={self.k}")
        if np.any((self.generator @ self.parity.T).entries):
            raise ValueError(f"{self.name}: generator rows are not annihilated by the parity-check matrix")
        # Offline GE, once per code.
        object.__setattr__(self, "systematic", systematize(self.parity))

    @property
    def rate(self) -> float:
        return self.k / self.n

    @cached_property
    def parity_columns(self) -> list[int]:
        """Columns of H packed as ints, for syndrome checks by XOR."""
        return self.parity.column_ints()

    @cached_property
    def p_columns(self) -> list[int]:
        return self.systematic.p.column_ints()

    def encode(self, u: BitVector) -> BitVector:
        if u.length != self.k:
            raise ValueError(f"Information word must have length {self.k}, got {u.length}")
        return matvec_t(self.generator.T, u)

    def syndrome(self, v: BitVector) -> BitVector:
        return matvec_t(self.parity, v)

    def is_codeword(self, v: BitVector) -> bool:
        return not self.syndrome(v).bits.any()


def _from_generator(generator: BitMatrix, name: str) -> LinearCode:
    k, n = generator.rows, generator.cols
    return LinearCode(n=n, k=k, generator=generator, parity=null_space(generator), name=name)


def _from_parity(parity: BitMatrix, name: str) -> LinearCode:
    # Rank deficiency surfaces here with the failing pivot row.
    systematize(parity)
    generator = null_space(parity)
    n = parity.cols
    return LinearCode(n=n, k=generator.rows, generator=generator, parity=parity, name=name)


def hamming_7_4() -> LinearCode:
    """
    [7,4] Hamming code. H columns: the three weight-1 columns first, then
    the remaining nonzero 3-bit columns in increasing value (row 0 is the MSB).
    """
    values = [4, 2, 1, 3, 5, 6, 7]
    h = np.array([[(v >> (2 - row)) & 1 for v in values] for row in range(3)], dtype=np.uint8)
    return _from_parity(BitMatrix(h), "hamming74")


def reed_muller(r: int, m: int) -> LinearCode:
    """RM(r, m) from evaluations of all monomials of degree <= r over F_2^m."""
    if not (isinstance(r, int) and isinstance(m, int)) or m < 0 or not 0 <= r <= m:
        raise ValueError(f"Reed-Muller parameters need 0 <= r <= m, got r={r}, m={m}")
    n = 2 ** m
    points = np.array([[(i >> j) & 1 for j in range(m)] for i in range(n)], dtype=np.uint8).reshape(n, m)
    rows = []
    for degree in range(r + 1):
        for variables in itertools.combinations(range(m), degree):
            row = np.ones(n, dtype=np.uint8)
            for v in variables:
                row &= points[:, v]
            rows.append(row)
    code = _from_generator(BitMatrix(np.array(rows, dtype=np.uint8)), f"rm-r{r}-m{m}")
    assert code.k == sum(comb(m, i) for i in range(r + 1))
    return code


def random_code(n: int, k: int, seed: int) -> LinearCode:
    """Uniform full-rank K x N generator, resampled until full rank."""
    if not 0 < k < n:
        raise ValueError(f"Random code needs 0 < k < n, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    while True:
        g = BitMatrix(rng.integers(0, 2, size=(k, n), dtype=np.uint8))
        if rank(g) == k:
            return _from_generator(g, f"random-n{n}-k{k}-s{seed}")


def repetition(n: int) -> LinearCode:
    if n < 2:
        raise ValueError(f"Repetition code needs n >= 2, got {n}")
    return _from_generator(BitMatrix(np.ones((1, n), dtype=np.uint8)), f"repetition{n}")


def single_parity(n: int) -> LinearCode:
    if n < 2:
        raise ValueError(f"Single-parity code needs n >= 2, got {n}")
    return _from_parity(BitMatrix(np.ones((1, n), dtype=np.uint8)), f"spc{n}")


def load_code(path) -> LinearCode:
    """Read a parity-check matrix in the `rows cols` + 0/1 rows text format."""
    path = Path(path)
    parity = parse_matrix_text(path.read_text())
    return _from_parity(parity, f"file-{path.stem}")


def codewords(code: LinearCode) -> np.ndarray:
    """All 2^K codewords as rows, indexed by information word (bit j of the index is u_j)."""
    if code.k > 20:
        raise ValueError(f"Refusing to enumerate 2^{code.k} codewords")
    idx = np.arange(2 ** code.k, dtype=np.int64)
    info = ((idx[:, None] >> np.arange(code.k)) & 1).astype(np.int64)
    return ((info @ code.generator.entries.astype(np.int64)) & 1).astype(np.uint8)


def minimum_distance(code: LinearCode) -> int:
    weights = codewords(code).sum(axis=1)
    nonzero = weights[weights > 0]
    return int(nonzero.min()) if nonzero.size else 0


def build_code(spec: CodeSpec) -> LinearCode:
    if spec.name == "hamming74":
        return hamming_7_4()
    if spec.name == "rm":
        if spec.r is None or spec.m is None:
            raise ValueError("rm code needs --r and --m")
        return reed_muller(spec.r, spec.m)
    if spec.name == "random":
        if spec.n is None or spec.k is None:
            raise ValueError("random code needs --n and --k")
        return random_code(spec.n, spec.k, spec.code_seed or 0)
    if spec.name == "repetition":
        if spec.n is None:
            raise ValueError("repetition code needs --n")
        return repetition(spec.n)
    if spec.name == "file":
        if not spec.matrix:
            raise ValueError("file code needs --matrix PATH")
        return load_code(spec.matrix)
    raise ValueError(f"Unknown code '{spec.name}'")


def resolve_code(spec: CodeSpec) -> LinearCode:
    """Cached build_code."""
    if spec in code_cache:
        logging.info(f"CODE CACHE HIT: {spec.name}")
        return code_cache[spec]
    logging.info(f"CODE CACHE MISS: {spec.name}")
    code = build_code(spec)
    code_cache[spec] = code
    return code
