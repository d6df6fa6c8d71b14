"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numbers

import numpy as np


def check_bits(X, n_bits: int | None = None, name: str = "X") -> np.ndarray:
    """2-d array of 0/1 values as ``uint8``; bit strings are accepted too."""
    if isinstance(X, str):
        X = [X]
    X = list(X) if not isinstance(X, np.ndarray) else X
    if len(X) and isinstance(X[0], str):
        if any(set(s) - {"0", "1"} for s in X):
            raise ValueError(f"{name} contains non-binary characters")
        if len({len(s) for s in X}) > 1:
            raise ValueError(f"{name} rows have different lengths")
        X = np.array([[c == "1" for c in s] for s in X], dtype=np.uint8)
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0 and 1")
    if n_bits is not None and arr.shape[1] != n_bits:
        raise ValueError(f"{name} has {arr.shape[1]} bits per row, expected {n_bits}")
    return arr.astype(np.uint8)


def check_signal(y, length: int | None = None, name: str = "y") -> np.ndarray:
    """Finite float array with the given trailing length."""
    arr = np.asarray(y, dtype=np.float64)
    if arr.ndim not in (1, 2):
        raise ValueError(f"{name} must be 1-d or 2-d, got shape {arr.shape}")
    if length is not None and arr.shape[-1] != length:
        raise ValueError(f"{name} has length {arr.shape[-1]}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinity")
    return arr


def check_positive_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_random_state_seed(random_state) -> int:
    """Integer seed from ``None`` or an int, for the hashing seed scheme."""
    if random_state is None:
        return 0
    if isinstance(random_state, numbers.Integral) and random_state >= 0:
        return int(random_state)
    raise ValueError("random_state must be None or a non-negative integer")
