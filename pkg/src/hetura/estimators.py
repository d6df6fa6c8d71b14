"""Estimator-style wrappers around the encoder and the two-phase receiver."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bits, check_positive_int, check_random_state_seed, check_signal
from .amp import DENOISERS, recover_support
from .channel import ReceivedSignal, observe
from .config import SystemConfig, derive_seed, parity_profile, tree_allocation, validate
from .cs_codec import build_sensing_matrix, forward, IndexVector
from .sic_pipeline import decode_two_phase, make_codebook, per_user_error
from .tree_code import attach_cross_parity, bits_to_str, encode_batch, gen_parity_matrices


class CCSEncoder(TransformerMixin, BaseEstimator):
    """Tree-encode payload rows and map them to channel inputs.

    ``fit`` draws the parity matrices and the sensing matrix; ``transform``
    returns one row of ``fragments * section_length`` samples per payload.
    """

    def __init__(self, fragments=11, fragment_bits=15, section_length=200, power=1.0,
                 parity=None, random_state=None):
        self.fragments = fragments
        self.fragment_bits = fragment_bits
        self.section_length = section_length
        self.power = power
        self.parity = parity
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_bits(X)
        J = check_positive_int(self.fragments, "fragments")
        T = check_positive_int(self.fragment_bits, "fragment_bits")
        Q = check_positive_int(self.section_length, "section_length")
        seed = check_random_state_seed(self.random_state)
        parity = parity_profile(J) if self.parity is None else tuple(self.parity)
        self.allocation_ = tree_allocation(X.shape[1], T, parity)
        self.parity_ = gen_parity_matrices(derive_seed(seed, "tree-bottom"), self.allocation_, T)
        self.matrix_ = build_sensing_matrix(T, Q, float(self.power), derive_seed(seed, "A1"))
        self.n_features_in_ = X.shape[1]
        return self

    def indices(self, X) -> np.ndarray:
        check_is_fitted(self, "parity_")
        return encode_batch(check_bits(X, self.n_features_in_), self.parity_)

    def transform(self, X) -> np.ndarray:
        idx = self.indices(X)
        out = np.empty((idx.shape[0], idx.shape[1] * self.matrix_.Q))
        Q = self.matrix_.Q
        for u, row in enumerate(idx):
            for j, c in enumerate(row):
                out[u, j * Q:(j + 1) * Q] = forward(self.matrix_, IndexVector.from_indices([c]))
        return out


class AMPSupportRecovery(BaseEstimator):
    """Per-slot support recovery for a fixed sensing matrix."""

    def __init__(self, matrix=None, n_active=1, iterations=10, denoiser="pme", threshold=1.5):
        self.matrix = matrix
        self.n_active = n_active
        self.iterations = iterations
        self.denoiser = denoiser
        self.threshold = threshold

    def fit(self, X=None, y=None):
        if self.matrix is None:
            raise ValueError("matrix must be set before fitting")
        if self.denoiser not in DENOISERS:
            raise ValueError(f"denoiser must be one of {DENOISERS}")
        check_positive_int(self.n_active, "n_active")
        check_positive_int(self.iterations, "iterations")
        self.n_features_in_ = self.matrix.Q
        return self

    def predict(self, Y) -> np.ndarray:
        """``(n, n_active)`` column indices, one row per slot observation."""
        check_is_fitted(self, "n_features_in_")
        Y = np.atleast_2d(check_signal(Y, self.matrix.Q, "Y"))
        return np.stack([
            recover_support(y, self.matrix, self.n_active, self.iterations, self.denoiser,
                            threshold=self.threshold).indices
            for y in Y
        ])


class HetURAReceiver(BaseEstimator):
    """Two-cluster receiver.  ``predict`` maps received blocks to message lists."""

    def __init__(self, config: SystemConfig | None = None, genie=False, random_state=None):
        self.config = config
        self.genie = genie
        self.random_state = random_state

    def fit(self, X=None, y=None):
        if self.config is None:
            raise ValueError("config is required")
        report = validate(self.config)
        if not report:
            raise ValueError(str(report))
        seed = check_random_state_seed(self.random_state)
        cfg = self.config
        c1, c2 = cfg.cluster1, cfg.cluster2_bottom
        self.codebook_ = make_codebook(cfg)
        self.A1_ = build_sensing_matrix(cfg.fragment_bits, cfg.section_length, c1.power, derive_seed(seed, "A1"))
        self.A2_ = build_sensing_matrix(cfg.top_bits, cfg.section_length, c2.power - c1.power, derive_seed(seed, "A2"))
        self.n_features_in_ = cfg.block_length
        return self

    def transmit(self, payloads1, payloads2, noise_seed=None) -> np.ndarray:
        """Channel output for the given payloads.

        ``payloads2`` rows hold the bottom bits followed by the top message.
        """
        check_is_fitted(self, "codebook_")
        cfg = self.config
        b1 = check_bits(payloads1, cfg.cluster1.payload_bits, "payloads1")
        nb = cfg.cluster2_bottom.payload_bits
        b2 = check_bits(payloads2, cfg.message_bits_cluster2, "payloads2")
        bottom = encode_batch(np.vstack([b1, b2[:, :nb]]), self.codebook_.bottom)
        top = encode_batch(attach_cross_parity(b2[:, nb:], b2[:, :nb], self.codebook_.cross), self.codebook_.top)
        self._last_top = top
        return observe([(self.A1_, bottom), (self.A2_, top)], noise_seed, cfg.noise_variance).samples

    def predict(self, Y) -> list:
        check_is_fitted(self, "codebook_")
        Y = np.atleast_2d(check_signal(Y, self.n_features_in_, "Y"))
        genie = getattr(self, "_last_top", None) if self.genie else None
        return [
            decode_two_phase(ReceivedSignal(y, self.config.section_length), self.A1_, self.A2_,
                             self.config, self.codebook_, genie)
            for y in Y
        ]

    def score(self, Y, sent) -> float:
        """One minus the mean PUE; ``sent`` holds one ``(payloads1, payloads2)`` pair per block."""
        decoded = self.predict(Y)
        pues = []
        for d, (s1, s2) in zip(decoded, sent):
            s1 = [bits_to_str(r) for r in check_bits(s1)]
            s2 = [bits_to_str(r) for r in check_bits(s2)]
            pues.append(per_user_error(s1, s2, d))
        return 1.0 - float(np.mean(pues))


__all__ = ["CCSEncoder", "AMPSupportRecovery", "HetURAReceiver"]
