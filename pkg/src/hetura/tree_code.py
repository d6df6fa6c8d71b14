"""Outer tree code: fragmenting, random linear parity and list stitching.

Fragments are systematic: ``alloc[j]`` info bits followed by
``T - alloc[j]`` parity bits, where the parity of fragment ``j+1`` is a
random binary matrix applied (mod 2) to all info bits of fragments
``1..j``.  As integers, a fragment is ``info << n_parity | parity``, which
is exactly its column index under MSB-first :func:`hetura.cs_codec.be2i`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


def bits_from_str(s: str) -> np.ndarray:
    if set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return (np.frombuffer(s.encode(), dtype=np.uint8) - ord("0")).astype(np.uint8)


def bits_to_str(bits) -> str:
    return (np.asarray(bits, dtype=np.uint8) + ord("0")).tobytes().decode()


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """MSB-first integer value of each row of a 2-d bit array."""
    bits = np.asarray(bits)
    if bits.shape[1] == 0:
        return np.zeros(bits.shape[0], dtype=np.int64)
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64))
    return bits.astype(np.int64) @ weights


def unpack_ints(values: np.ndarray, width: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def fragment(payload, allocation: Sequence[int]) -> list[str]:
    """Split a payload into consecutive sub-blocks of the given sizes."""
    s = payload if isinstance(payload, str) else bits_to_str(payload)
    if sum(allocation) != len(s):
        raise ValueError(f"allocation sums to {sum(allocation)}, payload has {len(s)} bits")
    out, pos = [], 0
    for size in allocation:
        if size < 0:
            raise ValueError("negative fragment size")
        out.append(s[pos:pos + size])
        pos += size
    return out


@dataclass(frozen=True, eq=False)
class ParityMatrixSet:
    """``matrices[j]`` produces the parity of fragment ``j+2`` (1-based)."""

    T: int
    info_allocation: tuple[int, ...]
    matrices: tuple[np.ndarray, ...]
    seed: int | None = None

    @property
    def fragments(self) -> int:
        return len(self.info_allocation)

    @property
    def payload_bits(self) -> int:
        return sum(self.info_allocation)

    def parity_bits(self, j: int) -> int:
        return self.T - self.info_allocation[j]

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.info_allocation)


def _check_allocation(info_allocation: Sequence[int], T: int) -> None:
    if any(b < 0 or b > T for b in info_allocation):
        raise ValueError(f"allocation {list(info_allocation)} exceeds T={T}")


def gen_parity_matrices(seed, info_allocation: Sequence[int], T: int) -> ParityMatrixSet:
    info_allocation = tuple(int(b) for b in info_allocation)
    _check_allocation(info_allocation, T)
    rng = np.random.default_rng(seed)
    cum = np.cumsum(info_allocation)
    mats = []
    for j in range(len(info_allocation) - 1):
        g = rng.integers(0, 2, size=(T - info_allocation[j + 1], int(cum[j])), dtype=np.uint8)
        g.setflags(write=False)
        mats.append(g)
    return ParityMatrixSet(T, info_allocation, tuple(mats), seed)


def zero_parity(info_allocation: Sequence[int], T: int) -> ParityMatrixSet:
    info_allocation = tuple(info_allocation)
    _check_allocation(info_allocation, T)
    cum = np.cumsum(info_allocation)
    mats = tuple(
        np.zeros((T - info_allocation[j + 1], int(cum[j])), dtype=np.uint8)
        for j in range(len(info_allocation) - 1)
    )
    return ParityMatrixSet(T, info_allocation, mats)


def encode_batch(payloads: np.ndarray, parity: ParityMatrixSet) -> np.ndarray:
    """Tree-encode many payloads at once.

    ``payloads`` is an ``(n_users, B)`` bit array; returns the ``(n_users, J)``
    integer fragment values (column indices).
    """
    payloads = np.atleast_2d(np.asarray(payloads, dtype=np.uint8))
    if payloads.shape[1] != parity.payload_bits:
        raise ValueError(
            f"payload has {payloads.shape[1]} bits, allocation expects {parity.payload_bits}"
        )
    alloc, cum = parity.info_allocation, parity.cumulative
    out = np.empty((payloads.shape[0], parity.fragments), dtype=np.int64)
    start = 0
    for j, size in enumerate(alloc):
        info = pack_rows(payloads[:, start:start + size])
        n_par = parity.T - size
        if j == 0:
            par = np.zeros(payloads.shape[0], dtype=np.int64)
            if n_par:
                raise ValueError("first fragment must not carry parity")
        else:
            g = parity.matrices[j - 1]
            par_bits = (payloads[:, : cum[j - 1]].astype(np.int64) @ g.T.astype(np.int64)) & 1
            par = pack_rows(par_bits)
        out[:, j] = (info << n_par) | par
        start += size
    return out


def tree_encode(info_fragments: Sequence, parity: ParityMatrixSet) -> list[str]:
    """Encode one user's info fragments into ``J`` strings of ``T`` bits."""
    frags = [f if isinstance(f, str) else bits_to_str(f) for f in info_fragments]
    if len(frags) != parity.fragments:
        raise ValueError(f"expected {parity.fragments} fragments, got {len(frags)}")
    for j, (f, size) in enumerate(zip(frags, parity.info_allocation)):
        if len(f) != size:
            raise ValueError(f"fragment {j} has {len(f)} bits, allocation says {size}")
    payload = bits_from_str("".join(frags))[None, :]
    values = encode_batch(payload, parity)[0]
    return [format(int(v), f"0{parity.T}b") for v in values]


@dataclass
class TreeDecodeStats:
    stage_paths: list[int] = field(default_factory=list)
    dropped_paths: int = 0
    beam_exceeded: bool = False
    excess_payloads: int = 0

    def to_dict(self) -> dict:
        return {
            "stage_paths": list(self.stage_paths),
            "dropped_paths": self.dropped_paths,
            "beam_exceeded": self.beam_exceeded,
            "excess_payloads": self.excess_payloads,
        }


def _as_index_array(entries: Iterable, T: int) -> np.ndarray:
    vals = [int(e, 2) if isinstance(e, str) else int(e) for e in entries]
    arr = np.unique(np.asarray(vals, dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= 1 << T):
        raise ValueError("list entry outside [0, 2^T)")
    return arr


def tree_decode(
    lists: Sequence[Iterable],
    parity: ParityMatrixSet,
    target_count: int | None = None,
    beam_limit: int = 100_000,
) -> tuple[set[str], TreeDecodeStats]:
    """Return every payload whose fragments pass all parity checks.

    Paths are extended slot by slot; when more than ``beam_limit`` paths
    survive a stage the surplus is dropped and counted.
    """
    stats = TreeDecodeStats()
    if len(lists) != parity.fragments:
        raise ValueError(f"expected {parity.fragments} lists, got {len(lists)}")
    T, alloc = parity.T, parity.info_allocation
    first = _as_index_array(lists[0], T)
    paths = unpack_ints(first >> (T - alloc[0]), alloc[0])
    stats.stage_paths.append(paths.shape[0])
    for j in range(1, parity.fragments):
        cands = _as_index_array(lists[j], T)
        n_par = T - alloc[j]
        if paths.shape[0] == 0 or cands.size == 0:
            paths = np.zeros((0, paths.shape[1] + alloc[j]), dtype=np.uint8)
            stats.stage_paths.append(0)
            continue
        g = parity.matrices[j - 1].astype(np.int64)
        expected = pack_rows((paths.astype(np.int64) @ g.T) & 1)
        cand_par = cands & ((1 << n_par) - 1)
        cand_info = cands >> n_par
        pi, ci = np.nonzero(expected[:, None] == cand_par[None, :])
        if pi.size > beam_limit:
            stats.dropped_paths += int(pi.size - beam_limit)
            stats.beam_exceeded = True
            pi, ci = pi[:beam_limit], ci[:beam_limit]
        paths = np.concatenate([paths[pi], unpack_ints(cand_info[ci], alloc[j])], axis=1)
        stats.stage_paths.append(paths.shape[0])
    payloads = {bits_to_str(row) for row in paths}
    if target_count is not None:
        stats.excess_payloads = max(0, len(payloads) - target_count)
    return payloads, stats


# -- cross-layer stitching --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CrossLayerParity:
    """Random ``(n_bits x bottom_bits)`` matrix tying a top payload to its bottom."""

    matrix: np.ndarray
    seed: int | None = None

    @property
    def n_bits(self) -> int:
        return self.matrix.shape[0]

    def check_bits(self, bottom_bits: np.ndarray) -> np.ndarray:
        bottom_bits = np.atleast_2d(np.asarray(bottom_bits, dtype=np.int64))
        return ((bottom_bits @ self.matrix.T.astype(np.int64)) & 1).astype(np.uint8)


def gen_cross_parity(seed, bottom_bits: int, n_bits: int) -> CrossLayerParity:
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 2, size=(n_bits, bottom_bits), dtype=np.uint8)
    m.setflags(write=False)
    return CrossLayerParity(m, seed)


def attach_cross_parity(top_messages: np.ndarray, bottom_payloads: np.ndarray, cross: CrossLayerParity) -> np.ndarray:
    """Append the cross-layer check bits of each bottom payload to its top message."""
    return np.concatenate([np.atleast_2d(top_messages), cross.check_bits(bottom_payloads)], axis=1).astype(np.uint8)


@dataclass
class StitchStats:
    paired: int = 0
    unmatched: int = 0
    ambiguous: int = 0

    @property
    def errors(self) -> int:
        return self.unmatched + self.ambiguous

    def to_dict(self) -> dict:
        return {"paired": self.paired, "unmatched": self.unmatched, "ambiguous": self.ambiguous}


def stitch_layers(
    bottom_payloads: Iterable[str],
    top_payloads: Iterable[str],
    cross: CrossLayerParity,
) -> tuple[set[tuple[str, str]], set[str], StitchStats]:
    """Pair each top payload with the unique bottom payload its check bits accept.

    Returns ``(messages, paired_bottoms, stats)``; a message is the
    ``(bottom, top)`` pair.  Tops accepting zero or several bottoms are dropped.
    """
    stats = StitchStats()
    bottoms = sorted(set(bottom_payloads))
    tops = sorted(set(top_payloads))
    k = cross.n_bits
    messages: set[tuple[str, str]] = set()
    paired: set[str] = set()
    if not tops:
        return messages, paired, stats
    if not bottoms:
        stats.unmatched = len(tops)
        return messages, paired, stats
    bottom_checks = pack_rows(cross.check_bits(np.stack([bits_from_str(b) for b in bottoms])))
    for top in tops:
        if len(top) < k:
            raise ValueError("top payload shorter than its check field")
        want = int(top[len(top) - k:], 2) if k else 0
        hits = np.flatnonzero(bottom_checks == want)
        if hits.size == 1:
            b = bottoms[int(hits[0])]
            messages.add((b, top))
            paired.add(b)
            stats.paired += 1
        elif hits.size == 0:
            stats.unmatched += 1
        else:
            stats.ambiguous += 1
    return messages, paired, stats


__all__ = [
    "ParityMatrixSet",
    "CrossLayerParity",
    "TreeDecodeStats",
    "StitchStats",
    "fragment",
    "gen_parity_matrices",
    "zero_parity",
    "tree_encode",
    "encode_batch",
    "tree_decode",
    "gen_cross_parity",
    "attach_cross_parity",
    "stitch_layers",
    "bits_from_str",
    "bits_to_str",
    "pack_rows",
    "unpack_ints",
]
