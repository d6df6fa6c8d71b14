"""Two-phase receiver: top layer first, cancel, then the merged bottom layer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .amp import recover_support
from .channel import ReceivedSignal
from .config import SystemConfig, derive_seed
from .cs_codec import IndexVector, SensingMatrix, forward
from .tree_code import (
    CrossLayerParity,
    ParityMatrixSet,
    StitchStats,
    TreeDecodeStats,
    gen_cross_parity,
    gen_parity_matrices,
    stitch_layers,
    tree_decode,
)


@dataclass(frozen=True, eq=False)
class CodeBook:
    """Outer-code randomness shared by every device and the receiver."""

    bottom: ParityMatrixSet
    top: ParityMatrixSet
    cross: CrossLayerParity


def make_codebook(config: SystemConfig, index: int = 0) -> CodeBook:
    return CodeBook(
        bottom=gen_parity_matrices(
            derive_seed(config, "tree-bottom", index),
            config.cluster1.info_allocation,
            config.fragment_bits,
        ),
        top=gen_parity_matrices(
            derive_seed(config, "tree-top", index),
            config.cluster2_top.info_allocation,
            config.top_bits,
        ),
        cross=gen_cross_parity(
            derive_seed(config, "cross", index),
            config.cluster2_bottom.payload_bits,
            config.cross_parity_bits,
        ),
    )


@dataclass
class SlotDiagnostics:
    top_indices: np.ndarray
    bottom_indices: np.ndarray
    residual_energy: float
    top_diverged: bool
    bottom_diverged: bool


@dataclass
class DecodedLists:
    W1: set[str]
    W2: set[str]
    slots: list[SlotDiagnostics] = field(default_factory=list)
    top_tree: TreeDecodeStats | None = None
    bottom_tree: TreeDecodeStats | None = None
    stitch: StitchStats | None = None

    @property
    def diverged(self) -> bool:
        return any(s.top_diverged or s.bottom_diverged for s in self.slots)

    def support_errors(self, top_truth: np.ndarray, bottom_truth: np.ndarray) -> tuple[list[int], list[int]]:
        """Per-slot count of transmitted columns missing from each phase's list."""
        top_err, bottom_err = [], []
        for j, s in enumerate(self.slots):
            top_err.append(int(np.count_nonzero(~np.isin(top_truth[:, j], s.top_indices))))
            bottom_err.append(int(np.count_nonzero(~np.isin(bottom_truth[:, j], s.bottom_indices))))
        return top_err, bottom_err

    def diagnostics(self) -> dict:
        return {
            "residual_energy": [s.residual_energy for s in self.slots],
            "diverged": self.diverged,
            "top_tree": self.top_tree.to_dict() if self.top_tree else None,
            "bottom_tree": self.bottom_tree.to_dict() if self.bottom_tree else None,
            "stitch": self.stitch.to_dict() if self.stitch else None,
        }


def decode_two_phase(
    y: ReceivedSignal,
    A1: SensingMatrix,
    A2: SensingMatrix,
    config: SystemConfig,
    codebook: CodeBook | None = None,
    genie_top: np.ndarray | None = None,
) -> DecodedLists:
    """Recover both clusters' message lists from one received block.

    ``genie_top`` (the true ``(M2, J)`` top-layer column table) replaces the
    first phase with perfect recovery.
    """
    if codebook is None:
        codebook = make_codebook(config)
    J, Q = config.fragments, config.section_length
    if A1.Q != Q or A2.Q != Q or y.samples.size != J * Q:
        raise ValueError("sensing matrices or observation do not match the config")
    M1, M2 = config.cluster1.active_count, config.cluster2_bottom.active_count
    opts = dict(iterations=config.amp_iterations, mode=config.denoiser, threshold=config.threshold)

    slots: list[SlotDiagnostics] = []
    for j in range(J):
        yj = y.section(j)
        if genie_top is not None:
            cancel = IndexVector.from_indices(genie_top[:, j])
            top_idx, top_div = cancel.indices, False
        else:
            est = recover_support(yj, A2, M2, **opts)
            top_idx, top_div = np.sort(est.indices), est.diverged
            cancel = IndexVector(top_idx, np.ones(top_idx.size))
        residual = yj - forward(A2, cancel)
        est1 = recover_support(residual, A1, M1 + M2, **opts)
        slots.append(
            SlotDiagnostics(
                top_idx,
                np.sort(est1.indices),
                float(residual @ residual),
                top_div,
                est1.diverged,
            )
        )

    tops, top_stats = tree_decode(
        [s.top_indices for s in slots], codebook.top, M2, beam_limit=config.beam_limit
    )
    bottoms, bottom_stats = tree_decode(
        [s.bottom_indices for s in slots], codebook.bottom, M1 + M2, beam_limit=config.beam_limit
    )
    messages, paired, stitch = stitch_layers(bottoms, tops, codebook.cross)
    k = codebook.cross.n_bits
    W2 = {b + (t[: len(t) - k] if k else t) for b, t in messages}
    W1 = set(bottoms) - paired
    return DecodedLists(W1, W2, slots, top_stats, bottom_stats, stitch)


def per_user_error(
    sent_1: Sequence[str],
    sent_2: Sequence[str],
    decoded: DecodedLists | tuple[Iterable[str], Iterable[str]],
) -> float:
    """Worst-cluster fraction of sent messages absent from the decoded list."""
    if not len(sent_1) or not len(sent_2):
        raise ValueError("sent lists must be nonempty")
    if isinstance(decoded, DecodedLists):
        W1, W2 = decoded.W1, decoded.W2
    else:
        W1, W2 = (set(w) for w in decoded)
    miss1 = sum(w not in W1 for w in sent_1) / len(sent_1)
    miss2 = sum(w not in W2 for w in sent_2) / len(sent_2)
    return max(miss1, miss2)


__all__ = [
    "CodeBook",
    "DecodedLists",
    "SlotDiagnostics",
    "make_codebook",
    "decode_two_phase",
    "per_user_error",
]
