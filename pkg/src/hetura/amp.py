"""Approximate message passing for per-slot support recovery.

The recursion runs on the column-normalised dictionary ``A / sqrt(Q a^2)``,
so a transmitted column shows up in the estimate with value
``sqrt(Q a^2)`` times its multiplicity.  Residual and estimate follow::

    s      = A^T z_t + m_t
    m_t+1  = eta_t(s)
    z_t+1  = y - A m_t+1 + (z_t / Q) * div eta_t(s)

starting from ``m_0 = 0`` and ``z_0 = y``.  The effective noise level is
estimated from the residual as ``tau_t = ||z_t|| / sqrt(Q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import math

import numba
import numpy as np

from .cs_codec import SensingMatrix, forward, fwht_inplace, transpose_apply

DENOISERS = ("pme", "soft")
_TAU_FLOOR = 1e-12


@numba.njit(cache=True, nogil=True)
def _pme_kernel(s, amplitude, tau2, log_odds, out):
    slope = amplitude / tau2
    offset = log_odds - 0.5 * amplitude * slope
    acc = 0.0
    for i in range(s.shape[0]):
        llr = slope * s[i] + offset
        if llr >= 0.0:
            post = 1.0 / (1.0 + math.exp(-llr))
        else:
            e = math.exp(llr)
            post = e / (1.0 + e)
        out[i] = amplitude * post
        acc += post * (1.0 - post)
    return acc * amplitude * slope


def denoise(
    s: np.ndarray,
    tau: float,
    sparsity: float,
    mode: str = "pme",
    *,
    amplitude: float = 1.0,
    threshold: float = 1.5,
) -> tuple[np.ndarray, float]:
    """Apply the denoiser entrywise; return ``(eta(s), sum of eta'(s))``.

    ``pme`` is the posterior mean under a prior putting mass
    ``sparsity / len(s)`` on ``amplitude`` and the rest on 0.  ``soft`` is
    soft thresholding at ``threshold * tau``.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    s = np.asarray(s, dtype=np.float64)
    if mode == "soft":
        cut = threshold * tau
        mag = np.abs(s) - cut
        active = mag > 0
        return np.where(active, np.sign(s) * mag, 0.0), float(np.count_nonzero(active))
    if mode != "pme":
        raise ValueError(f"unknown denoiser {mode!r}")
    p = float(np.clip(sparsity / s.size, 1e-300, 1 - 1e-12))
    out = np.empty_like(s)
    div = _pme_kernel(s, float(amplitude), float(tau) ** 2, math.log(p / (1 - p)), out)
    return out, float(div)


@dataclass(frozen=True, eq=False)
class AmpState:
    estimate: np.ndarray
    residual: np.ndarray
    iteration: int
    tau: float
    divergence: float = 0.0
    diverged: bool = False


def init_state(y: np.ndarray, n_columns: int) -> AmpState:
    y = np.asarray(y, dtype=np.float64)
    return AmpState(
        estimate=np.zeros(n_columns),
        residual=y.copy(),
        iteration=0,
        tau=float(np.linalg.norm(y) / np.sqrt(y.size)),
    )


def normalized(A: SensingMatrix) -> SensingMatrix:
    """Same rows, amplitude ``1/sqrt(Q)`` (unit-norm columns)."""
    return A.scaled(1.0 / np.sqrt(A.Q))


def amp_step(
    state: AmpState,
    y: np.ndarray,
    A: SensingMatrix,
    K: float,
    mode: str = "pme",
    *,
    threshold: float = 1.5,
    onsager: bool = True,
    _unit: SensingMatrix | None = None,
) -> AmpState:
    """One estimate/residual update.  Overflow marks the state diverged."""
    unit = _unit if _unit is not None else normalized(A)
    Q = A.Q
    z = state.residual
    tau = max(float(np.linalg.norm(z)) / np.sqrt(Q), _TAU_FLOOR * max(1.0, np.sqrt(A.column_energy)))
    with np.errstate(all="ignore"):
        s = transpose_apply(unit, z) + state.estimate
        m, div = denoise(
            s, tau, K, mode, amplitude=np.sqrt(A.column_energy), threshold=threshold
        )
        if mode == "pme":
            buf = m.copy()
            fwht_inplace(buf)
            z_new = y - unit.amplitude * buf[unit.rows]
        else:
            z_new = y - forward(unit, m)
        if onsager:
            z_new = z_new + (z / Q) * div
    ok = np.isfinite(div) and np.all(np.isfinite(m)) and np.all(np.isfinite(z_new))
    if not ok:
        return replace(state, diverged=True)
    return AmpState(m, z_new, state.iteration + 1, tau, div)


@dataclass(frozen=True, eq=False)
class SupportEstimate:
    indices: np.ndarray
    scores: np.ndarray
    diverged: bool
    state: AmpState
    residual_norms: tuple[float, ...] = ()


def top_k(values: np.ndarray, K: int) -> np.ndarray:
    """Indices of the ``K`` largest magnitudes; ties go to the lower index."""
    mag = np.abs(values)
    K = min(K, mag.size)
    if K <= 0:
        return np.zeros(0, dtype=np.int64)
    cand = np.argpartition(-mag, K - 1)[:K]
    kth = mag[cand].min()
    pool = np.flatnonzero(mag >= kth)
    order = np.lexsort((pool, -mag[pool]))
    return pool[order[:K]].astype(np.int64)


def run_amp(
    y: np.ndarray,
    A: SensingMatrix,
    K: float,
    iterations: int = 10,
    mode: str = "pme",
    *,
    threshold: float = 1.5,
    onsager: bool = True,
) -> tuple[AmpState, list[float]]:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (A.Q,):
        raise ValueError(f"observation length {y.shape} does not match Q={A.Q}")
    unit = normalized(A)
    state = init_state(y, A.n_columns)
    norms = [float(np.linalg.norm(state.residual))]
    for _ in range(iterations):
        nxt = amp_step(state, y, A, K, mode, threshold=threshold, onsager=onsager, _unit=unit)
        if nxt.diverged:
            return nxt, norms
        state = nxt
        norms.append(float(np.linalg.norm(state.residual)))
    return state, norms


def recover_support(
    y_slot: np.ndarray,
    A: SensingMatrix,
    K: int,
    iterations: int = 10,
    mode: str = "pme",
    *,
    threshold: float = 1.5,
    onsager: bool = True,
) -> SupportEstimate:
    """Run AMP from the zero start and keep the ``K`` strongest columns.

    Scores are in multiplicity units (estimate divided by the column norm).
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    state, norms = run_amp(
        y_slot, A, K, iterations, mode, threshold=threshold, onsager=onsager
    )
    est = state.estimate
    if not np.all(np.isfinite(est)):
        est = np.nan_to_num(est, nan=0.0, posinf=0.0, neginf=0.0)
    idx = top_k(est, K)
    scale = np.sqrt(A.column_energy) or 1.0
    return SupportEstimate(idx, est[idx] / scale, state.diverged, state, tuple(norms))


__all__ = [
    "AmpState",
    "SupportEstimate",
    "denoise",
    "init_state",
    "amp_step",
    "run_amp",
    "recover_support",
    "top_k",
    "DENOISERS",
]
