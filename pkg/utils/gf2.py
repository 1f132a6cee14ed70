from dataclasses import dataclass
from typing import Iterable

import numpy as np

'''Dense GF(2) vectors and matrices, Gaussian elimination and the matrix text format.'''


def _frozen(a) -> np.ndarray:
    arr = (np.array(a, dtype=np.uint8) & 1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BitVector:
    bits: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.bits)
        if arr.ndim != 1:
            raise ValueError(f"BitVector needs a 1-D array, got shape {arr.shape}")
        object.__setattr__(self, "bits", arr)

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BitVector":
        v = np.zeros(n, dtype=np.uint8)
        v[list(positions)] = 1
        return cls(v)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"Bit string may only contain 0 and 1, got '{text}'")
        return cls(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"))

    @property
    def length(self) -> int:
        return int(self.bits.size)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i):
        return int(self.bits[i])

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"Length mismatch: {self.length} vs {other.length}")
        return BitVector(self.bits ^ other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVector) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def weight(self) -> int:
        return int(self.bits.sum())

    def support(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(self.bits))

    def permuted(self, perm) -> "BitVector":
        """Entry i of the result is entry perm[i] of self."""
        return BitVector(self.bits[np.asarray(perm)])


@dataclass(frozen=True, eq=False)
class BitMatrix:
    entries: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.entries)
        if arr.ndim == 1 and arr.size == 0:
            arr = _frozen(np.zeros((0, 0), dtype=np.uint8))
        if arr.ndim != 2:
            raise ValueError(f"BitMatrix needs a 2-D array, got shape {arr.shape}")
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix(self.entries.T)

    def __eq__(self, other) -> bool:
        return isinstance(other, BitMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.entries.tobytes()))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        prod = self.entries.astype(np.int64) @ other.entries.astype(np.int64)
        return BitMatrix(prod & 1)

    def column_ints(self) -> list[int]:
        """Each column packed into an int, row i at bit i."""
        return [sum(1 << int(i) for i in np.flatnonzero(self.entries[:, j])) for j in range(self.cols)]

    def permute_columns(self, perm) -> "BitMatrix":
        return BitMatrix(self.entries[:, np.asarray(perm)])


@dataclass(frozen=True, eq=False)
class SystematicParity:
    p: BitMatrix
    column_perm: np.ndarray
    n: int
    k: int

    def __post_init__(self):
        perm = np.array(self.column_perm, dtype=np.int64)
        perm.setflags(write=False)
        object.__setattr__(self, "column_perm", perm)

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def as_matrix(self) -> BitMatrix:
        """[I | P] in systematic column order."""
        m = self.redundancy
        return BitMatrix(np.concatenate([np.eye(m, dtype=np.uint8), self.p.entries], axis=1))


def matvec_t(m: BitMatrix, v: BitVector) -> BitVector:
    """m · v^T over GF(2)."""
    if v.length != m.cols:
        raise ValueError(f"Dimension mismatch: matrix has {m.cols} columns, vector has length {v.length}")
    prod = m.entries.astype(np.int64) @ v.bits.astype(np.int64)
    return BitVector(prod & 1)


def _eliminate(a: np.ndarray) -> list[int]:
    """
    In-place Gauss-Jordan elimination, scanning columns left to right.
    Returns the list of pivot columns.
    """
    rows, cols = a.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        candidates = np.flatnonzero(a[row:, col])
        if candidates.size == 0:
            continue
        piv = row + int(candidates[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        ones = np.flatnonzero(a[:, col])
        for r in ones:
            if r != row:
                a[r] ^= a[row]
        pivots.append(col)
        row += 1
    return pivots


def rank(m: BitMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    a = m.entries.copy()
    return len(_eliminate(a))


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    a = m.entries.copy()
    pivots = _eliminate(a)
    return BitMatrix(a[:len(pivots)]), pivots


def null_space(m: BitMatrix) -> BitMatrix:
    """Rows form a basis of {x : m x^T = 0}."""
    n = m.cols
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free_cols), n), dtype=np.uint8)
    for i, free in enumerate(free_cols):
        basis[i, free] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = reduced.entries[row, free]
    return BitMatrix(basis.reshape(len(free_cols), n))


def systematize(h: BitMatrix) -> SystematicParity:
    """
    Row-reduce h to [I | P] over a column permutation.

    Pivot row i takes column i when possible. Otherwise column i is swapped with
    the smallest-index later column holding a 1 at or below row i. Afterwards each
    block is put back in ascending original-column order (rows of I follow the left
    block), so the permutation stays the identity whenever no swap was needed.
    """
    a = h.entries.copy()
    m, n = a.shape
    if m > n:
        raise ValueError(f"Parity-check matrix is rank deficient: {m} rows exceed {n} columns")
    perm = np.arange(n, dtype=np.int64)

    for i in range(m):
        candidates = np.flatnonzero(a[i:, i])
        if candidates.size == 0:
            rest = np.flatnonzero(a[i:, i + 1:].any(axis=0))
            if rest.size == 0:
                raise ValueError(f"Parity-check matrix is rank deficient: no pivot for row {i}")
            j = i + 1 + int(rest[0])
            a[:, [i, j]] = a[:, [j, i]]
            perm[[i, j]] = perm[[j, i]]
            candidates = np.flatnonzero(a[i:, i])
        piv = i + int(candidates[0])
        if piv != i:
            a[[i, piv]] = a[[piv, i]]
        for r in np.flatnonzero(a[:, i]):
            if r != i:
                a[r] ^= a[i]

    left = np.argsort(perm[:m], kind="stable")
    right = np.argsort(perm[m:], kind="stable")
    p = a[left][:, m + right]
    perm = np.concatenate([perm[:m][left], perm[m:][right]])
    return SystematicParity(p=BitMatrix(p.reshape(m, n - m)), column_perm=perm, n=n, k=n - m)


def parse_matrix_text(text: str) -> BitMatrix:
    """Parse `rows cols` followed by rows of 0/1 characters."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise ValueError("Matrix text is empty")
    header = lines[0].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise ValueError(f"Line 1: expected 'rows cols', got '{lines[0]}'")
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"Expected {rows} matrix rows, found {len(body)}")
    entries = np.zeros((rows, cols), dtype=np.uint8)
    for i, line in enumerate(body):
        bad = [ch for ch in line if ch not in "01"]
        if bad:
            raise ValueError(f"Line {i + 2}: invalid character '{bad[0]}'")
        if len(line) != cols:
            raise ValueError(f"Line {i + 2}: expected {cols} characters, got {len(line)}")
        entries[i] = np.frombuffer(line.encode(), dtype=np.uint8) - ord("0")
    return BitMatrix(entries)


def format_matrix_text(m: BitMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += ["".join("1" if b else "0" for b in row) for row in m.entries]
    return "\n".join(lines) + "\n"
