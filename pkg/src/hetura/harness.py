"""Monte Carlo experiments: PUE curves, achieved-rate searches, references.

Powers on the command line and in every sweep are in dB.  They map to a
linear per-channel-use power (unit noise variance) through

    P = 10 ** ((dB - DB_REFERENCE) / 10)

so the per-slot column energy of a user is ``Q * P``.  ``DB_REFERENCE`` is a
fixed calibration constant of the dB axis.

Fragment-level experiments simulate one slot: ``T``-bit fragments, ``Q``
channel uses, coded fragment rate ``T / Q``.  Rates on the baseline grid map
to section lengths ``Q = round(T / R)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .amp import recover_support
from .channel import observe
from .config import SystemConfig, config_to_dict, derive_seed, validate
from .cs_codec import IndexVector, build_sensing_matrix, forward
from .sic_pipeline import CodeBook, decode_two_phase, make_codebook, per_user_error
from .tree_code import attach_cross_parity, bits_to_str, encode_batch

DB_REFERENCE = 26.25
MODES = ("baseline-ura", "hetura", "tdma", "ian", "block")
BASELINE_RATES = (0.03, 0.04, 0.05, 0.06, 0.07, 0.075, 0.08)
TABLE_RATES = tuple(round(0.03 + 0.01 * i, 3) for i in range(18))
HETURA_RATES = tuple(r for r in TABLE_RATES if r <= 0.12)
LAMBDAS = tuple(round(0.05 * i, 2) for i in range(1, 20))
CSV_COLUMNS = ("p1_db", "rate_or_pue", "value", "stderr", "trials")
_CHUNK = 25


def db_to_power(db: float) -> float:
    return 10.0 ** ((db - DB_REFERENCE) / 10.0)


def power_to_db(power: float) -> float:
    return 10.0 * math.log10(power) + DB_REFERENCE if power > 0 else -math.inf


def section_for_rate(rate: float, fragment_bits: int = 15) -> int:
    if not rate > 0:
        raise ValueError("rate must be positive")
    return int(round(fragment_bits / rate))


def resolve_threads(threads: int | None = None) -> int:
    """``HETURA_THREADS`` wins over the argument; default is one worker."""
    env = os.environ.get("HETURA_THREADS", "").strip()
    if env:
        threads = int(env)
    return max(1, int(threads or 1))


_POOLS: dict[int, ProcessPoolExecutor] = {}


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    pool = _POOLS.get(threads)
    if pool is None:
        pool = _POOLS[threads] = ProcessPoolExecutor(max_workers=threads)
    return list(pool.map(fn, items))


# -- counters -----------------------------------------------------------------

@dataclass
class Tally:
    """Mergeable miss counters for one operating point."""

    trials: int = 0
    miss1: int = 0
    sent1: int = 0
    miss2: int = 0
    sent2: int = 0
    diverged: int = 0

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(*(a + b for a, b in zip(astuple_(self), astuple_(other))))

    def _rates(self) -> list[tuple[float, int]]:
        out = []
        if self.sent1:
            out.append((self.miss1 / self.sent1, self.sent1))
        if self.sent2:
            out.append((self.miss2 / self.sent2, self.sent2))
        return out

    @property
    def pue(self) -> float:
        rates = self._rates()
        return max(r for r, _ in rates) if rates else 1.0

    @property
    def stderr(self) -> float:
        rates = self._rates()
        if not rates:
            return 0.0
        p, n = max(rates)
        return math.sqrt(p * (1 - p) / n)

    def achieves(self, target: float) -> bool:
        return self.pue <= target - self.stderr

    def hopeless(self, target: float) -> bool:
        return self.trials >= _CHUNK and self.pue - 3 * self.stderr > target


def astuple_(t: Tally) -> tuple[int, ...]:
    return (t.trials, t.miss1, t.sent1, t.miss2, t.sent2, t.diverged)


# -- fragment-level trials ------------------------------------------------------

@dataclass(frozen=True)
class FragmentSetup:
    """One slot of the scheme.  ``top_bits=None`` is the single-layer baseline."""

    fragment_bits: int
    section_length: int
    users1: int
    users2: int
    power: float
    top_bits: int | None = None
    top_power: float = 0.0
    iterations: int = 10
    denoiser: str = "pme"
    threshold: float = 1.5
    genie: bool = False

    @property
    def seed_label(self) -> str:
        # power and genie are left out so sweeps share random draws
        return f"frag:{self.fragment_bits}:{self.section_length}:{self.users1}:{self.users2}:{self.top_bits}"


def fragment_trial(setup: FragmentSetup, seed: int) -> Tally:
    s_rows1, s_rows2, s_msg, s_noise = np.random.SeedSequence(seed).spawn(4)
    T, Q = setup.fragment_bits, setup.section_length
    K = setup.users1 + setup.users2
    opts = dict(iterations=setup.iterations, mode=setup.denoiser, threshold=setup.threshold)
    A1 = build_sensing_matrix(T, Q, setup.power, s_rows1)
    msg = np.random.default_rng(s_msg)
    bottom = msg.integers(0, 1 << T, K)
    y = forward(A1, IndexVector.from_indices(bottom))
    if setup.top_bits is not None:
        A2 = build_sensing_matrix(setup.top_bits, Q, setup.top_power, s_rows2)
        top = msg.integers(0, 1 << setup.top_bits, setup.users2)
        y = y + forward(A2, IndexVector.from_indices(top))
    y = y + np.random.default_rng(s_noise).standard_normal(Q)

    diverged = False
    if setup.top_bits is None:
        est = recover_support(y, A1, K, **opts)
        found = np.isin(bottom, est.indices)
        return Tally(1, int(np.count_nonzero(~found)), K, 0, 0, int(est.diverged))

    if setup.genie:
        cancel = IndexVector.from_indices(top)
        top_found = np.ones(setup.users2, dtype=bool)
    else:
        est2 = recover_support(y, A2, setup.users2, **opts)
        diverged |= est2.diverged
        cancel = IndexVector(np.sort(est2.indices), np.ones(est2.indices.size))
        top_found = np.isin(top, est2.indices)
    est1 = recover_support(y - forward(A2, cancel), A1, K, **opts)
    diverged |= est1.diverged
    found = np.isin(bottom, est1.indices)
    ok2 = found[setup.users1:] & top_found
    return Tally(
        1,
        int(np.count_nonzero(~found[: setup.users1])),
        setup.users1,
        int(np.count_nonzero(~ok2)),
        setup.users2,
        int(diverged),
    )


def _fragment_chunk(args) -> Tally:
    setup, master, start, stop = args
    total = Tally()
    for t in range(start, stop):
        total = total + fragment_trial(setup, derive_seed(master, setup.seed_label, t))
    return total


def estimate_pue(
    setup: FragmentSetup,
    trials: int,
    master_seed: int = 0,
    threads: int = 1,
    stop_above: float | None = None,
) -> Tally:
    """Run up to ``trials`` fragment trials.

    With ``stop_above`` set, the run ends early once the PUE is more than
    three standard errors above that level.
    """
    total = Tally()
    done = 0
    while done < trials:
        batch = []
        for _ in range(threads):
            if done >= trials:
                break
            stop = min(trials, done + _CHUNK)
            batch.append((setup, master_seed, done, stop))
            done = stop
        for part in _map(_fragment_chunk, batch, threads):
            total = total + part
        if stop_above is not None and total.hopeless(stop_above):
            break
    return total


# -- specs and results --------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentSpec:
    base: SystemConfig
    mode: str = "baseline-ura"
    p1_db: tuple[float, ...] = (13.0, 14.0, 15.0, 16.0, 17.0, 18.0, 19.0, 20.0, 21.0, 22.0, 23.0)
    alpha: float = 6.0
    trials: int = 500
    target: float = 0.05
    rates: tuple[float, ...] = BASELINE_RATES
    genie: bool = False
    table_trials: int | None = None
    top_bits_max: int = 16
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 < self.target < 1:
            raise ValueError("target PUE must lie in (0, 1)")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.alpha > 2:
            raise ValueError("alpha must exceed 2")

    @property
    def master_seed(self) -> int:
        return self.base.master_seed

    @property
    def users(self) -> tuple[int, int]:
        return self.base.cluster1.active_count, self.base.cluster2_bottom.active_count

    def fragment_setup(self, section_length: int, p1_db: float, top_bits: int | None = None, users=None) -> FragmentSetup:
        b = self.base
        m1, m2 = self.users if users is None else users
        p1 = db_to_power(p1_db)
        return FragmentSetup(
            fragment_bits=b.fragment_bits,
            section_length=section_length,
            users1=m1 if top_bits is not None else m1 + m2,
            users2=m2 if top_bits is not None else 0,
            power=p1,
            top_bits=top_bits,
            top_power=(self.alpha - 1.0) * p1,
            iterations=b.amp_iterations,
            denoiser=b.denoiser,
            threshold=b.threshold,
            genie=self.genie,
        )


@dataclass
class CurvePoint:
    p1_db: float
    series: str
    value: float
    stderr: float
    trials: int
    diagnostics: dict = field(default_factory=dict)

    def csv_row(self) -> list[str]:
        return [repr(float(self.p1_db)), self.series, repr(float(self.value)), repr(float(self.stderr)), str(self.trials)]


def _pue_point(db: float, series: str, tally: Tally, **diag) -> CurvePoint:
    return CurvePoint(
        db, series, tally.pue, tally.stderr, tally.trials,
        {"miss1": tally.miss1, "sent1": tally.sent1, "miss2": tally.miss2,
         "sent2": tally.sent2, "diverged": tally.diverged, **diag},
    )


# -- full-block trials ----------------------------------------------------------------

@dataclass
class TrialRecord:
    pue: float
    top_support_errors: list[int]
    bottom_support_errors: list[int]
    diverged: bool
    stitch: dict

    def to_dict(self) -> dict:
        return asdict(self)


def run_trial(
    config: SystemConfig,
    trial_seed: int,
    codebook: CodeBook | None = None,
    genie: bool = False,
) -> TrialRecord:
    """Draw payloads, encode, send through the channel, decode and score."""
    report = validate(config)
    if not report:
        raise ValueError(str(report))
    codebook = codebook or make_codebook(config)
    s_a1, s_a2, s_msg, s_noise = np.random.SeedSequence(trial_seed).spawn(4)
    T, T2, Q = config.fragment_bits, config.top_bits, config.section_length
    c1, c2 = config.cluster1, config.cluster2_bottom
    A1 = build_sensing_matrix(T, Q, c1.power, s_a1)
    A2 = build_sensing_matrix(T2, Q, c2.power - c1.power, s_a2)
    rng = np.random.default_rng(s_msg)
    k = config.cross_parity_bits
    b1 = rng.integers(0, 2, (c1.active_count, c1.payload_bits), dtype=np.uint8)
    b2 = rng.integers(0, 2, (c2.active_count, c2.payload_bits), dtype=np.uint8)
    top_msg = rng.integers(0, 2, (c2.active_count, config.cluster2_top.payload_bits - k), dtype=np.uint8)
    idx_bottom = encode_batch(np.vstack([b1, b2]), codebook.bottom)
    idx_top = encode_batch(attach_cross_parity(top_msg, b2, codebook.cross), codebook.top)
    y = observe([(A1, idx_bottom), (A2, idx_top)], s_noise, config.noise_variance)
    decoded = decode_two_phase(y, A1, A2, config, codebook, genie_top=idx_top if genie else None)
    sent1 = [bits_to_str(r) for r in b1]
    sent2 = [bits_to_str(np.concatenate([a, b])) for a, b in zip(b2, top_msg)]
    top_err, bottom_err = decoded.support_errors(idx_top, idx_bottom)
    return TrialRecord(
        per_user_error(sent1, sent2, decoded),
        top_err,
        bottom_err,
        decoded.diverged,
        decoded.stitch.to_dict() if decoded.stitch else {},
    )


def _block_chunk(args) -> list[float]:
    config, genie, start, stop = args
    codebook = make_codebook(config)
    return [
        run_trial(config, derive_seed(config, "block", t), codebook, genie).pue
        for t in range(start, stop)
    ]


def sweep_block(spec: ExperimentSpec) -> list[CurvePoint]:
    """Full-block PUE (tree code and stitching included) against ``P_1``."""
    out = []
    for db in spec.p1_db:
        p1 = db_to_power(db)
        cfg = spec.base.with_powers(p1, spec.alpha * p1)
        chunks = [(cfg, spec.genie, s, min(spec.trials, s + _CHUNK)) for s in range(0, spec.trials, _CHUNK)]
        pues = [p for part in _map(_block_chunk, chunks, spec.threads) for p in part]
        mean = float(np.mean(pues))
        se = float(np.std(pues, ddof=1) / math.sqrt(len(pues))) if len(pues) > 1 else 0.0
        out.append(CurvePoint(db, "pue_block", mean, se, len(pues), {"worst": float(max(pues))}))
    return out


# -- baseline sweeps and rate tables ------------------------------------------------------

def sweep_baseline(spec: ExperimentSpec) -> list[CurvePoint]:
    """Fragment PUE of the single-layer scheme on the ``(rate, P_1)`` grid."""
    T = spec.base.fragment_bits
    out = []
    for rate in spec.rates:
        Q = section_for_rate(rate, T)
        for db in spec.p1_db:
            tally = estimate_pue(spec.fragment_setup(Q, db), spec.trials, spec.master_seed, spec.threads)
            out.append(_pue_point(db, f"pue@R={rate:g}", tally, rate=rate, section_length=Q))
    return out


@dataclass(frozen=True)
class RateTable:
    """Achievable rate against power, from per-rate threshold powers in dB."""

    users: int
    rates: tuple[float, ...]
    thresholds_db: tuple[float, ...]

    def envelope(self) -> list[tuple[float, float]]:
        pts, best = [], math.inf
        for r, thr in sorted(zip(self.rates, self.thresholds_db), reverse=True):
            best = min(best, thr)
            if math.isfinite(best):
                pts.append((best, r))
        pts.reverse()
        return pts

    def rate_at(self, db: float) -> float:
        """Largest achievable rate at ``db``, linear between grid rates."""
        pts = self.envelope()
        if not pts or db < pts[0][0]:
            return 0.0
        for (d0, r0), (d1, r1) in zip(pts, pts[1:]):
            if db < d1:
                return r0 if d1 == d0 else r0 + (r1 - r0) * (db - d0) / (d1 - d0)
        return pts[-1][1]


def threshold_db(
    spec: ExperimentSpec,
    users: int,
    rate: float,
    lo: float = -10.0,
    hi: float = 60.0,
    tol: float = 0.25,
    trials: int | None = None,
    guess: float | None = None,
) -> float:
    """Smallest ``P_1`` (dB) at which ``users`` baseline users meet the target.

    Bisection on the dB axis; ``guess`` narrows the starting bracket.
    Returns ``inf`` when even ``hi`` does not reach the target.
    """
    trials = trials or spec.table_trials or spec.trials
    T = spec.base.fragment_bits
    Q = section_for_rate(rate, T)
    if Q > 2**T - 1:
        return math.inf

    def ok(db):
        setup = spec.fragment_setup(Q, db, users=(users, 0))
        return estimate_pue(setup, trials, spec.master_seed, spec.threads, stop_above=spec.target).achieves(spec.target)

    a, b = lo, hi
    if guess is not None and lo < guess < hi:
        a, b = max(lo, guess - 1.0), min(hi, guess + 6.0)
    if not ok(b):
        if b >= hi or not ok(hi):
            return math.inf
        a, b = b, hi
    if ok(a):
        if a <= lo or ok(lo):
            return lo
        a, b = lo, a
    while b - a > tol:
        mid = 0.5 * (a + b)
        a, b = (a, mid) if ok(mid) else (mid, b)
    return b


def rate_table(spec: ExperimentSpec, users: int, rates: Sequence[float] = TABLE_RATES, hi: float = 60.0) -> RateTable:
    """Threshold power for every rate on the grid, lowest rate first.

    Once a rate is out of reach at ``hi``, higher rates are not tried.
    """
    thresholds: list[float] = []
    for r in sorted(rates):
        if thresholds and math.isinf(thresholds[-1]):
            thresholds.append(math.inf)
            continue
        guess = thresholds[-1] if thresholds else None
        thresholds.append(threshold_db(spec, users, r, hi=hi, guess=guess))
    return RateTable(users, tuple(sorted(rates)), tuple(thresholds))


# -- two-layer sweeps ----------------------------------------------------------------

@dataclass
class HeturaPoint:
    p1_db: float
    rate1: float
    rate2: float
    section_length: int
    top_bits: int
    tally: Tally

    @property
    def top_rate(self) -> float:
        return self.rate2 - self.rate1


def _largest_top(spec: ExperimentSpec, Q: int, db: float) -> tuple[int, Tally | None]:
    """Largest top fragment size meeting the target at section length ``Q``."""
    t_min = max(1, math.ceil(math.log2(Q + 1)))
    best, best_tally = 0, None
    lo, hi = t_min, spec.top_bits_max
    if lo > hi:
        return 0, None
    while lo <= hi:
        mid = (lo + hi) // 2
        tally = estimate_pue(
            spec.fragment_setup(Q, db, top_bits=mid), spec.trials, spec.master_seed,
            spec.threads, stop_above=spec.target,
        )
        if tally.achieves(spec.target):
            best, best_tally, lo = mid, tally, mid + 1
        else:
            hi = mid - 1
    return best, best_tally


def hetura_point(spec: ExperimentSpec, db: float, rates: Sequence[float] = HETURA_RATES) -> HeturaPoint:
    """Highest bottom rate that still admits a top layer, then the largest top layer."""
    T = spec.base.fragment_bits
    for rate in sorted(rates, reverse=True):
        Q = section_for_rate(rate, T)
        t2, tally = _largest_top(spec, Q, db)
        if t2:
            return HeturaPoint(db, T / Q, (T + t2) / Q, Q, t2, tally)
    return HeturaPoint(db, 0.0, 0.0, 0, 0, Tally())


def sweep_hetura(spec: ExperimentSpec) -> list[HeturaPoint]:
    return [hetura_point(spec, db) for db in spec.p1_db]


def hetura_curves(points: Iterable[HeturaPoint], trials: int) -> list[CurvePoint]:
    out = []
    for p in points:
        diag = {"section_length": p.section_length, "top_bits": p.top_bits, "pue": p.tally.pue}
        se = p.tally.stderr
        out.append(CurvePoint(p.p1_db, "R_1", p.rate1, se, p.tally.trials, diag))
        out.append(CurvePoint(p.p1_db, "R_2", p.rate2, se, p.tally.trials, diag))
    return out


def split_power(p1: float, p2: float, lam: float) -> tuple[float, float]:
    """Phase powers ``(P1/lam, (P2 - lam P1) / (1 - lam))`` of the time-shared scheme."""
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    return p1 / lam, (p2 - lam * p1) / (1.0 - lam)


@dataclass
class TdmaPoint:
    p1_db: float
    lam: float
    rate1: float
    rate2: float
    p1_phase: float
    p2_phase: float


def tdma_reference(
    spec: ExperimentSpec,
    table_low: RateTable,
    table_high: RateTable,
    matched_rate1: Sequence[float] | None = None,
    lambdas: Sequence[float] = LAMBDAS,
) -> list[TdmaPoint]:
    """Best time-sharing split per ``P_1`` whose low-cluster rate reaches the match."""
    out = []
    for i, db in enumerate(spec.p1_db):
        p1 = db_to_power(db)
        p2 = spec.alpha * p1
        need = matched_rate1[i] if matched_rate1 is not None else 0.0
        base = table_low.rate_at(db)
        # lambda -> 1 degenerates to the baseline for everybody
        cands = [TdmaPoint(db, 1.0, base, base, p1, p2)]
        for lam in lambdas:
            q1, q2 = split_power(p1, p2, lam)
            r1 = lam * table_low.rate_at(power_to_db(q1))
            r2 = r1 + (1 - lam) * table_high.rate_at(power_to_db(q2))
            cands.append(TdmaPoint(db, lam, r1, r2, q1, q2))
        matched = [c for c in cands if c.rate1 >= need - 1e-12]
        if matched:
            out.append(max(matched, key=lambda c: (c.rate2, c.lam)))
        else:
            out.append(max(cands, key=lambda c: (c.rate1, c.rate2)))
    return out


def ian_power(p1: float, p2: float, users_total: int) -> float:
    """Top-layer SNR with the bottom layer treated as Gaussian noise."""
    return (p2 - p1) / (1.0 + users_total * p1)


def ian_prediction(spec: ExperimentSpec, table_top: RateTable) -> list[CurvePoint]:
    m1, m2 = spec.users
    out = []
    for db in spec.p1_db:
        p1 = db_to_power(db)
        eff = ian_power(p1, spec.alpha * p1, m1 + m2)
        out.append(CurvePoint(db, "R2-R1_ian_prediction", table_top.rate_at(power_to_db(eff)), 0.0, 0,
                              {"effective_power": eff}))
    return out


# -- top-level driver ---------------------------------------------------------------------

def run_experiment(spec: ExperimentSpec) -> list[CurvePoint]:
    m1, m2 = spec.users
    if spec.mode == "baseline-ura":
        return sweep_baseline(spec)
    if spec.mode == "block":
        return sweep_block(spec)
    points = sweep_hetura(spec)
    out = hetura_curves(points, spec.trials)
    if spec.mode == "tdma":
        low = rate_table(spec, m1 + m2)
        high = rate_table(spec, m2)
        for db in spec.p1_db:
            out.append(CurvePoint(db, "R_1_baseline", low.rate_at(db), 0.0, 0, {}))
        for t in tdma_reference(spec, low, high, [p.rate1 for p in points]):
            diag = {"lambda": t.lam, "p1_phase": t.p1_phase, "p2_phase": t.p2_phase}
            out.append(CurvePoint(t.p1_db, "R_1_tdma", t.rate1, 0.0, 0, diag))
            out.append(CurvePoint(t.p1_db, "R_2_tdma", t.rate2, 0.0, 0, diag))
    elif spec.mode == "ian":
        for p in points:
            out.append(CurvePoint(p.p1_db, "R2-R1", p.top_rate, p.tally.stderr, p.tally.trials,
                                  {"top_bits": p.top_bits, "section_length": p.section_length}))
        out.extend(ian_prediction(spec, rate_table(spec, m2)))
    return out


def emit(results: Sequence[CurvePoint], fmt: str, path, spec: ExperimentSpec | None = None) -> Path:
    """Write CSV (one row per point) or JSON (points with diagnostics)."""
    if not results:
        raise ValueError("nothing to emit")
    path = Path(path)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for p in results:
            w.writerow(p.csv_row())
        text = buf.getvalue()
    elif fmt == "json":
        doc = {
            "columns": list(CSV_COLUMNS),
            "db_reference": DB_REFERENCE,
            "points": [asdict(p) for p in results],
        }
        if spec is not None:
            doc.update(
                mode=spec.mode, master_seed=spec.master_seed, alpha=spec.alpha,
                trials=spec.trials, target=spec.target, genie=spec.genie,
                config=config_to_dict(spec.base),
            )
        text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path.write_text(text, encoding="utf-8")
    return path


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (tuple, set)):
        return list(obj)
    raise TypeError(type(obj).__name__)


def read_csv(path) -> list[CurvePoint]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [
        CurvePoint(float(r["p1_db"]), r["rate_or_pue"], float(r["value"]), float(r["stderr"]), int(r["trials"]))
        for r in rows
    ]


__all__ = [
    "DB_REFERENCE",
    "MODES",
    "ExperimentSpec",
    "CurvePoint",
    "FragmentSetup",
    "Tally",
    "RateTable",
    "HeturaPoint",
    "TdmaPoint",
    "TrialRecord",
    "db_to_power",
    "power_to_db",
    "section_for_rate",
    "resolve_threads",
    "fragment_trial",
    "estimate_pue",
    "run_trial",
    "sweep_block",
    "sweep_baseline",
    "threshold_db",
    "rate_table",
    "hetura_point",
    "sweep_hetura",
    "hetura_curves",
    "split_power",
    "tdma_reference",
    "ian_power",
    "ian_prediction",
    "run_experiment",
    "emit",
    "read_csv",
]
