"""Transmit-signal assembly and the real AWGN multiple-access channel."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cs_codec import IndexVector, SensingMatrix, forward


@dataclass(frozen=True, eq=False)
class TransmitSignal:
    samples: np.ndarray
    owner: tuple[int, int] | None = None

    def __len__(self) -> int:
        return self.samples.size

    @property
    def energy(self) -> float:
        return float(self.samples @ self.samples)


@dataclass(frozen=True, eq=False)
class ReceivedSignal:
    samples: np.ndarray
    section_length: int

    @property
    def fragments(self) -> int:
        return self.samples.size // self.section_length

    def section(self, j: int) -> np.ndarray:
        Q = self.section_length
        return self.samples[j * Q:(j + 1) * Q]

    def sections(self) -> np.ndarray:
        return self.samples.reshape(self.fragments, self.section_length)


def assemble(slot_signals: Sequence[np.ndarray], owner=None) -> TransmitSignal:
    """Concatenate per-slot signals in slot order."""
    slots = [np.asarray(s, dtype=np.float64) for s in slot_signals]
    if not slots:
        raise ValueError("no slots to assemble")
    Q = slots[0].shape
    if any(s.ndim != 1 or s.shape != Q for s in slots):
        raise ValueError("all slot signals must be 1-d with the same length")
    return TransmitSignal(np.concatenate(slots), owner)


def superpose(bottom: TransmitSignal, top: TransmitSignal) -> TransmitSignal:
    if len(bottom) != len(top):
        raise ValueError("layer lengths differ")
    return TransmitSignal(bottom.samples + top.samples, bottom.owner)


def encode_user(A: SensingMatrix, fragment_indices: Sequence[int], owner=None) -> TransmitSignal:
    """Map one user's J column indices to its concatenated channel input."""
    return assemble(
        [forward(A, IndexVector.from_indices([int(c)])) for c in fragment_indices], owner
    )


def transmit(
    signals: Sequence[TransmitSignal],
    noise_seed,
    length: int | None = None,
    section_length: int | None = None,
    noise_variance: float = 1.0,
) -> ReceivedSignal:
    """Sum all user signals and add i.i.d. Gaussian noise."""
    if signals:
        n = len(signals[0])
        if any(len(s) != n for s in signals):
            raise ValueError("signal lengths differ")
    elif length is None:
        raise ValueError("length is required when there are no users")
    else:
        n = length
    y = np.zeros(n)
    for s in signals:
        y += s.samples
    if noise_variance > 0:
        y += np.sqrt(noise_variance) * np.random.default_rng(noise_seed).standard_normal(n)
    return ReceivedSignal(y, section_length or n)


def aggregate_slots(indices: np.ndarray) -> list[IndexVector]:
    """Per-slot aggregate index vectors from a ``(n_users, J)`` index table."""
    indices = np.atleast_2d(indices)
    return [IndexVector.from_indices(indices[:, j]) for j in range(indices.shape[1])]


def observe(
    layers: Sequence[tuple[SensingMatrix, np.ndarray]],
    noise_seed,
    noise_variance: float = 1.0,
) -> ReceivedSignal:
    """Aggregate form of the channel: ``y_j = sum_l A_l m_lj + z_j``.

    ``layers`` pairs each sensing matrix with the ``(n_users, J)`` table of
    column indices it carries; equal to summing :func:`encode_user` outputs.
    """
    J = layers[0][1].shape[1] if layers else 0
    Q = layers[0][0].Q
    y = np.zeros(J * Q)
    for A, idx in layers:
        if A.Q != Q or idx.shape[1] != J:
            raise ValueError("layer geometry mismatch")
        if idx.shape[0] == 0:
            continue
        for j, m in enumerate(aggregate_slots(idx)):
            y[j * Q:(j + 1) * Q] += forward(A, m)
    if noise_variance > 0:
        y += np.sqrt(noise_variance) * np.random.default_rng(noise_seed).standard_normal(J * Q)
    return ReceivedSignal(y, Q)


__all__ = [
    "TransmitSignal",
    "ReceivedSignal",
    "assemble",
    "superpose",
    "encode_user",
    "transmit",
    "aggregate_slots",
    "observe",
]
