"""Index representation and implicit Hadamard sensing matrices.

A fragment of ``T`` bits selects one column of a ``Q x 2^T`` matrix whose
rows are Sylvester-Hadamard rows (the all-ones row 0 excluded), scaled by
the layer amplitude.  Entry ``(r, c)`` of the full Hadamard matrix is
``(-1) ** popcount(r & c)``, so both ``A m`` and ``A^T z`` reduce to one
fast Walsh-Hadamard transform of length ``2^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def fwht_inplace(x):
    """Unnormalised Walsh-Hadamard transform in natural (Sylvester) order."""
    n = x.shape[0]
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                a = x[j]
                b = x[j + h]
                x[j] = a + b
                x[j + h] = a - b
        h *= 2


def fwht(x: np.ndarray) -> np.ndarray:
    out = np.array(x, dtype=np.float64, copy=True)
    if out.ndim != 1 or out.size & (out.size - 1):
        raise ValueError("fwht needs a 1-d array of power-of-two length")
    fwht_inplace(out)
    return out


# -- be2i / i2be -------------------------------------------------------------

def _as_bits(fragment) -> np.ndarray:
    if isinstance(fragment, str):
        if set(fragment) - {"0", "1"}:
            raise ValueError(f"not a bit string: {fragment!r}")
        return np.frombuffer(fragment.encode(), dtype=np.uint8) - ord("0")
    return np.asarray(fragment, dtype=np.uint8)


def be2i(fragment, T: int | None = None) -> int:
    """Column index of a bit string, most significant bit first."""
    bits = _as_bits(fragment)
    if T is not None and bits.size != T:
        raise ValueError(f"fragment has {bits.size} bits, expected {T}")
    value = 0
    for b in bits.tolist():
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        value = (value << 1) | b
    return value


def i2be(index: int, T: int) -> str:
    if not 0 <= index < 2**T:
        raise ValueError(f"index {index} out of range for T={T}")
    return format(index, f"0{T}b") if T else ""


@dataclass(frozen=True)
class IndexVector:
    """Sparse ``{0,1,2,...}^(2^T)`` vector: distinct indices with multiplicities."""

    indices: np.ndarray
    counts: np.ndarray

    @classmethod
    def from_indices(cls, indices) -> "IndexVector":
        idx, cnt = np.unique(np.asarray(indices, dtype=np.int64), return_counts=True)
        return cls(idx, cnt.astype(np.float64))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def to_dense(self, T: int) -> np.ndarray:
        out = np.zeros(2**T)
        out[self.indices] = self.counts
        return out


# -- sensing matrix ------------------------------------------------------------

def sample_rows(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` distinct integers from ``[1, n-1]`` by partial Fisher-Yates.

    Swaps are kept in a dict so the cost is ``O(k)`` regardless of ``n``.
    """
    population = n - 1
    if not 0 <= k <= population:
        raise ValueError(f"cannot draw {k} rows from {population}")
    swapped: dict[int, int] = {}
    out = np.empty(k, dtype=np.int64)
    draws = rng.integers(0, population - np.arange(k))
    for i in range(k):
        j = i + int(draws[i])
        out[i] = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
    return out + 1


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    T: int
    rows: np.ndarray
    amplitude: float
    seed: int | None = None

    @property
    def Q(self) -> int:
        return int(self.rows.size)

    @property
    def n_columns(self) -> int:
        return 1 << self.T

    @property
    def column_energy(self) -> float:
        return self.Q * self.amplitude**2

    def to_dense(self) -> np.ndarray:
        """Explicit ``Q x 2^T`` matrix; meant for small ``T`` in tests."""
        cols = np.arange(self.n_columns, dtype=np.int64)
        parity = np.bitwise_count(self.rows[:, None] & cols[None, :]) & 1
        return self.amplitude * (1.0 - 2.0 * parity)

    def scaled(self, amplitude: float) -> "SensingMatrix":
        return SensingMatrix(self.T, self.rows, float(amplitude), self.seed)


def build_sensing_matrix(T: int, Q: int, power: float, seed: int | None) -> SensingMatrix:
    if not 1 <= Q <= 2**T - 1:
        raise ValueError(f"Q={Q} outside [1, 2^T - 1] for T={T}")
    if power < 0:
        raise ValueError("power must be non-negative")
    rng = np.random.default_rng(seed)
    rows = sample_rows(1 << T, Q, rng)
    rows.setflags(write=False)
    return SensingMatrix(T, rows, float(np.sqrt(power)), seed)


def _column_signs(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * (np.bitwise_count(rows[:, None] & cols[None, :]) & 1)


def forward(A: SensingMatrix, m) -> np.ndarray:
    """``A m`` for an :class:`IndexVector` or a dense length-``2^T`` vector."""
    if isinstance(m, IndexVector):
        idx, cnt = m.indices, m.counts
        if idx.size and (idx.min() < 0 or idx.max() >= A.n_columns):
            raise ValueError("index out of range")
        if not idx.size:
            return np.zeros(A.Q)
        return A.amplitude * (_column_signs(A.rows, idx) @ cnt)
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (A.n_columns,):
        raise ValueError(f"expected length {A.n_columns}, got {m.shape}")
    nz = np.flatnonzero(m)
    if nz.size * A.Q < A.n_columns * A.T:
        return A.amplitude * (_column_signs(A.rows, nz) @ m[nz])
    buf = m.copy()
    fwht_inplace(buf)
    return A.amplitude * buf[A.rows]


def transpose_apply(A: SensingMatrix, z, out: np.ndarray | None = None) -> np.ndarray:
    """``A^T z`` via scatter into the row positions and one FWHT."""
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (A.Q,):
        raise ValueError(f"expected length {A.Q}, got {z.shape}")
    if out is None:
        out = np.zeros(A.n_columns)
    else:
        out[:] = 0.0
    out[A.rows] = z
    fwht_inplace(out)
    out *= A.amplitude
    return out


__all__ = [
    "IndexVector",
    "SensingMatrix",
    "be2i",
    "i2be",
    "build_sensing_matrix",
    "forward",
    "transpose_apply",
    "fwht",
    "fwht_inplace",
    "sample_rows",
]
