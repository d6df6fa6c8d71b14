import itertools

import numpy as np
import pytest

from hetura.channel import ReceivedSignal, observe
from hetura.config import table2_config
from hetura.cs_codec import IndexVector, build_sensing_matrix, forward
from hetura.harness import ExperimentSpec, estimate_pue, run_trial
from hetura.sic_pipeline import DecodedLists, decode_two_phase, make_codebook, per_user_error
from hetura.tree_code import attach_cross_parity, encode_batch


def _block(cfg, seed):
    rng = np.random.default_rng(seed)
    cb = make_codebook(cfg)
    A1 = build_sensing_matrix(15, cfg.section_length, cfg.cluster1.power, seed)
    A2 = build_sensing_matrix(cfg.top_bits, cfg.section_length,
                              cfg.cluster2_bottom.power - cfg.cluster1.power, seed + 1)
    b = rng.integers(0, 2, (15, 100), dtype=np.uint8)
    top = attach_cross_parity(rng.integers(0, 2, (5, 80), dtype=np.uint8), b[10:], cb.cross)
    return cb, A1, A2, encode_batch(b, cb.bottom), encode_batch(top, cb.top)


def test_noiseless_block_recovers_everyone():
    cfg = table2_config(p1=0.3, noise_variance=0.0)
    for seed in range(3):
        assert run_trial(cfg, seed).pue == 0.0


def test_cancellation_is_exact_with_a_perfect_first_phase():
    # amplitudes 1 and 2 keep every sample an exact small integer
    cfg = table2_config(p1=1.0, p2=5.0, noise_variance=0.0)
    cb, A1, A2, bottom, top = _block(cfg, 4)
    y = observe([(A1, bottom), (A2, top)], 0, 0.0)
    decoded = decode_two_phase(y, A1, A2, cfg, cb, genie_top=top)
    for j, slot in enumerate(decoded.slots):
        want = forward(A1, IndexVector.from_indices(bottom[:, j]))
        assert slot.residual_energy == want @ want
        residual = y.section(j) - forward(A2, IndexVector.from_indices(top[:, j]))
        assert np.array_equal(residual, want)


def test_decoding_garbage_does_not_raise():
    cfg = table2_config(p1=0.2)
    cb, A1, A2, _, _ = _block(cfg, 1)
    d = decode_two_phase(ReceivedSignal(np.zeros(2200), 200), A1, A2, cfg, cb)
    assert isinstance(d, DecodedLists)
    assert all(len(w) == 100 for w in d.W1)
    assert all(len(w) == cfg.message_bits_cluster2 for w in d.W2)


def test_mismatched_geometry_is_rejected():
    cfg = table2_config()
    A = build_sensing_matrix(15, 100, 1.0, 0)
    with pytest.raises(ValueError):
        decode_two_phase(ReceivedSignal(np.zeros(2200), 200), A, A, cfg)


def test_pue_counts():
    s1 = [f"{i:04b}" for i in range(10)]
    s2 = [f"{i:05b}" for i in range(5)]
    assert per_user_error(s1, s2, (s1 + ["1111"], s2)) == 0.0
    assert per_user_error(s1, s2, (s1[:9], s2)) == pytest.approx(0.1)
    assert per_user_error(s1, s2, (s1, s2[:3])) == pytest.approx(0.4)
    assert per_user_error(s1, s2, (set(), set())) == 1.0
    with pytest.raises(ValueError):
        per_user_error([], s2, (s1, s2))


def test_pue_ignores_user_order():
    s1, s2 = ["00", "01", "10"], ["111", "000"]
    decoded = ({"01", "10"}, {"000"})
    values = {per_user_error(list(a), list(b), decoded)
              for a in itertools.permutations(s1) for b in itertools.permutations(s2)}
    assert values == {0.5}


@pytest.mark.parametrize("db", [15.0, 17.0, 19.0])
def test_perfect_first_phase_never_hurts(db):
    spec = ExperimentSpec(base=table2_config(), mode="hetura", trials=150)
    setup = spec.fragment_setup(250, db, top_bits=12)
    actual = estimate_pue(setup, 150)
    genie = estimate_pue(ExperimentSpec(base=table2_config(), mode="hetura", trials=150, genie=True)
                         .fragment_setup(250, db, top_bits=12), 150)
    assert genie.pue <= actual.pue
