"""Scheme parameters, consistency checks and seed derivation.

Powers are linear, per channel use, relative to unit-variance noise.  The
dB conventions used by the experiment driver live in :mod:`hetura.harness`.
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

DEFAULT_FRAGMENTS = 11
DEFAULT_FRAGMENT_BITS = 15
DEFAULT_SECTION_LENGTH = 200
DEFAULT_CROSS_PARITY_BITS = 20


def parity_profile(fragments: int, middle: int = 5, last: int = 9) -> tuple[int, ...]:
    """Per-fragment parity counts ``[0, middle, ..., middle, last]``."""
    if fragments < 1:
        raise ValueError("need at least one fragment")
    if fragments == 1:
        return (0,)
    return (0,) + (middle,) * (fragments - 2) + (last,)


def tree_allocation(
    payload_bits: int,
    fragment_bits: int,
    parity: tuple[int, ...] | list[int],
) -> tuple[int, ...]:
    """Info bits per fragment for a payload, given a parity profile.

    Capacity is ``fragment_bits - parity[j]`` per fragment.  Surplus capacity
    is removed from the last fragments first, so trimmed bits become extra
    parity where the tree decoder needs it most.
    """
    capacity = [fragment_bits - p for p in parity]
    if any(c < 0 for c in capacity):
        raise ValueError("parity exceeds fragment size")
    excess = sum(capacity) - payload_bits
    if excess < 0:
        raise ValueError(
            f"payload of {payload_bits} bits exceeds tree-code capacity {sum(capacity)}"
        )
    alloc = list(capacity)
    for j in range(len(alloc) - 1, 0, -1):
        take = min(excess, alloc[j])
        alloc[j] -= take
        excess -= take
        if not excess:
            break
    if excess:
        raise ValueError("cannot trim allocation without touching the first fragment")
    return tuple(alloc)


@dataclass(frozen=True)
class ClusterSpec:
    """Active users, power and payload of one cluster (or one layer)."""

    active_count: int
    power: float
    payload_bits: int
    info_allocation: tuple[int, ...]


@dataclass(frozen=True)
class LayerAllocation:
    """Payload split of the top layer of the high-energy cluster.

    ``payload_bits`` counts everything carried by the layer, including the
    cross-layer parity bits appended to the top message.
    """

    payload_bits: int
    info_allocation: tuple[int, ...]


@dataclass(frozen=True)
class SystemConfig:
    cluster1: ClusterSpec
    cluster2_bottom: ClusterSpec
    cluster2_top: LayerAllocation
    fragments: int = DEFAULT_FRAGMENTS
    fragment_bits: int = DEFAULT_FRAGMENT_BITS
    section_length: int = DEFAULT_SECTION_LENGTH
    top_fragment_bits: int | None = None
    cross_parity_bits: int = DEFAULT_CROSS_PARITY_BITS
    noise_variance: float = 1.0
    master_seed: int = 0
    amp_iterations: int = 10
    denoiser: str = "pme"
    threshold: float = 1.5
    beam_limit: int = 100_000

    @property
    def top_bits(self) -> int:
        return self.fragment_bits if self.top_fragment_bits is None else self.top_fragment_bits

    @property
    def block_length(self) -> int:
        return self.fragments * self.section_length

    @property
    def payload_bits_cluster2(self) -> int:
        return self.cluster2_bottom.payload_bits + self.cluster2_top.payload_bits

    @property
    def message_bits_cluster2(self) -> int:
        """Cluster-2 bits excluding the cross-layer check bits."""
        return self.payload_bits_cluster2 - self.cross_parity_bits

    @property
    def rate1(self) -> float:
        return self.cluster1.payload_bits / self.block_length

    @property
    def rate2(self) -> float:
        return self.payload_bits_cluster2 / self.block_length

    @property
    def fragment_rate(self) -> float:
        """Coded bits per channel use within one slot, ``T / Q``."""
        return self.fragment_bits / self.section_length

    def with_powers(self, p1: float, p2: float) -> "SystemConfig":
        return replace(
            self,
            cluster1=replace(self.cluster1, power=p1),
            cluster2_bottom=replace(self.cluster2_bottom, power=p2),
        )


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "pass" if self.ok else "; ".join(self.violations)


def _check_allocation(name: str, alloc: tuple[int, ...], payload: int, J: int, T: int) -> list[str]:
    out = []
    if len(alloc) != J:
        out.append(f"{name}: allocation has {len(alloc)} entries, expected J={J}")
    if sum(alloc) != payload:
        out.append(f"{name}: allocation sums to {sum(alloc)}, payload is {payload}")
    if any(b < 0 for b in alloc):
        out.append(f"{name}: negative fragment size")
    if any(b > T for b in alloc):
        out.append(f"{name}: T >= B_kj violated (max {max(alloc)} > T={T})")
    if alloc and alloc[0] != T:
        out.append(f"{name}: first fragment must carry T={T} info bits, has {alloc[0]}")
    return out


def validate(config: SystemConfig) -> ValidationReport:
    """Check every invariant; never raises."""
    report = ValidationReport()
    v = report.violations
    try:
        J, T, Q = config.fragments, config.fragment_bits, config.section_length
        T2 = config.top_bits
        c1, c2, top = config.cluster1, config.cluster2_bottom, config.cluster2_top
        if J < 1:
            v.append("J >= 1 violated")
        if T < 1 or T2 < 1:
            v.append("fragment bits must be positive")
        if Q < 1:
            v.append("Q >= 1 violated")
        if Q > 2**T - 1 or Q > 2**T2 - 1:
            v.append(f"Q <= 2^T - 1 violated (Q={Q})")
        for name, c in (("cluster1", c1), ("cluster2", c2)):
            if c.active_count < 1:
                v.append(f"{name}: M_k >= 1 violated")
            if not c.power > 0:
                v.append(f"{name}: P_k > 0 violated")
        if not c2.power > 2 * c1.power:
            v.append("P2 > 2·P1 violated")
        v.extend(_check_allocation("cluster1", c1.info_allocation, c1.payload_bits, J, T))
        v.extend(_check_allocation("cluster2 bottom", c2.info_allocation, c2.payload_bits, J, T))
        v.extend(_check_allocation("cluster2 top", top.info_allocation, top.payload_bits, J, T2))
        if tuple(c2.info_allocation) != tuple(c1.info_allocation):
            v.append("cluster2 bottom layer must share the cluster-1 allocation")
        if not 0 <= config.cross_parity_bits <= top.payload_bits:
            v.append("cross-layer parity bits must fit in the top payload")
        if config.cross_parity_bits > 0 and c2.payload_bits == 0:
            v.append("cross-layer parity needs bottom-layer bits")
        if not config.noise_variance >= 0:
            v.append("noise variance must be non-negative")
        if config.amp_iterations < 1:
            v.append("AMP iterations >= 1 violated")
        if config.denoiser not in ("pme", "soft"):
            v.append(f"unknown denoiser {config.denoiser!r}")
        if config.beam_limit < 1:
            v.append("beam limit >= 1 violated")
    except Exception as exc:  # malformed field types
        v.append(f"malformed config: {exc}")
    return report


def derive_seed(config: SystemConfig | int, component_label: str, index: int = 0) -> int:
    """64-bit seed for ``(master_seed, label, index)``."""
    master = config if isinstance(config, int) else config.master_seed
    digest = hashlib.blake2b(
        f"{master}\x1f{component_label}\x1f{index}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def make_config(
    *,
    fragments: int = DEFAULT_FRAGMENTS,
    fragment_bits: int = DEFAULT_FRAGMENT_BITS,
    section_length: int = DEFAULT_SECTION_LENGTH,
    m1: int = 10,
    m2: int = 5,
    p1: float = 1.0,
    p2: float | None = None,
    alpha: float = 6.0,
    payload1: int = 100,
    top_payload: int = 100,
    top_fragment_bits: int | None = None,
    parity: tuple[int, ...] | None = None,
    top_parity: tuple[int, ...] | None = None,
    **extra: Any,
) -> SystemConfig:
    """Build a config with tree allocations derived from parity profiles."""
    T2 = fragment_bits if top_fragment_bits is None else top_fragment_bits
    parity = parity_profile(fragments) if parity is None else tuple(parity)
    top_parity = parity_profile(fragments) if top_parity is None else tuple(top_parity)
    alloc1 = tree_allocation(payload1, fragment_bits, parity)
    alloc_top = tree_allocation(top_payload, T2, top_parity)
    p2 = alpha * p1 if p2 is None else p2
    return SystemConfig(
        cluster1=ClusterSpec(m1, p1, payload1, alloc1),
        cluster2_bottom=ClusterSpec(m2, p2, payload1, alloc1),
        cluster2_top=LayerAllocation(top_payload, alloc_top),
        fragments=fragments,
        fragment_bits=fragment_bits,
        section_length=section_length,
        top_fragment_bits=top_fragment_bits,
        **extra,
    )


def table2_config(p1: float = 1.0, alpha: float = 6.0, **extra: Any) -> SystemConfig:
    """J=11, M1=10, M2=5, B1=100, T=15, Q=200."""
    return make_config(p1=p1, alpha=alpha, **extra)


# -- flat key/value config files -------------------------------------------

_INT_KEYS = {
    "fragments", "fragment_bits", "section_length", "m1", "m2", "payload1",
    "top_payload", "top_fragment_bits", "cross_parity_bits", "master_seed",
    "amp_iterations", "beam_limit",
}
_FLOAT_KEYS = {"p1", "p2", "alpha", "noise_variance", "threshold"}
_LIST_KEYS = {"parity", "top_parity"}
_STR_KEYS = {"denoiser"}
CONFIG_KEYS = _INT_KEYS | _FLOAT_KEYS | _LIST_KEYS | _STR_KEYS


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment, lists use commas."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        out[key] = coerce_value(key, value)
    return out


def coerce_value(key: str, value: Any) -> Any:
    if key in _LIST_KEYS:
        if isinstance(value, str):
            return tuple(int(v) for v in value.split(",") if v.strip())
        return tuple(int(v) for v in value)
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    return str(value)


def load_config_file(path: str | Path) -> dict[str, Any]:
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def config_from_mapping(values: Mapping[str, Any]) -> SystemConfig:
    return make_config(**dict(values))


def config_to_dict(config: SystemConfig) -> dict[str, Any]:
    d = asdict(config)
    d["rate1"] = config.rate1
    d["rate2"] = config.rate2
    d["fragment_rate"] = config.fragment_rate
    return d


__all__ = [
    "ClusterSpec",
    "LayerAllocation",
    "SystemConfig",
    "ValidationReport",
    "validate",
    "derive_seed",
    "make_config",
    "table2_config",
    "tree_allocation",
    "parity_profile",
    "parse_config_text",
    "load_config_file",
    "config_from_mapping",
    "config_to_dict",
]
