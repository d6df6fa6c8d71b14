import time

import numpy as np
import pytest

from hetura.amp import amp_step, denoise, init_state, recover_support, run_amp, top_k
from hetura.cs_codec import IndexVector, SensingMatrix, build_sensing_matrix, forward


def test_soft_threshold_zero_input():
    out, div = denoise(np.zeros(8), 1.0, 1, "soft")
    assert not out.any() and div == 0


def test_soft_threshold_linear_region():
    s = np.array([3.0, -4.0, 5.0])
    out, div = denoise(s, 1.0, 1, "soft", threshold=1.5)
    np.testing.assert_allclose(out, [1.5, -2.5, 3.5])
    assert div / s.size == 1.0


def test_denoiser_rejects_bad_input():
    with pytest.raises(ValueError):
        denoise(np.ones(3), 0.0, 1)
    with pytest.raises(ValueError):
        denoise(np.ones(3), 1.0, 1, "hard")


@pytest.mark.parametrize("mode", ["pme", "soft"])
def test_divergence_matches_finite_differences(mode):
    rng = np.random.default_rng(3)
    amp, tau, h = 4.0, 1.3, 1e-6
    s = rng.normal(amp / 2, 2.0, 20)
    if mode == "soft":
        s = s[np.abs(np.abs(s) - 1.5 * tau) > 1e-3]
    _, div = denoise(s, tau, 2, mode, amplitude=amp)
    fd = 0.0
    for i in range(s.size):
        up, dn = s.copy(), s.copy()
        up[i] += h
        dn[i] -= h
        fd += (denoise(up, tau, 2, mode, amplitude=amp)[0][i] - denoise(dn, tau, 2, mode, amplitude=amp)[0][i]) / (2 * h)
    assert abs(div - fd) / abs(fd) < 1e-4


def test_first_residual_is_the_observation():
    y = np.random.default_rng(0).standard_normal(30)
    st = init_state(y, 256)
    np.testing.assert_array_equal(st.residual, y)
    assert not st.estimate.any() and st.iteration == 0


def test_single_atom_recovery_and_monotone_residual():
    A = build_sensing_matrix(10, 60, 1.0, seed=2)
    y = forward(A, IndexVector.from_indices([700]))
    state, norms = run_amp(y, A, 1, iterations=10)
    assert int(np.argmax(state.estimate)) == 700
    diffs = np.diff(norms[1:])
    assert np.all(diffs <= 1e-9)


def test_noiseless_separable_support():
    A = build_sensing_matrix(12, 120, 1.0, seed=3)
    truth = [5, 900, 2048, 4000]
    est = recover_support(forward(A, IndexVector.from_indices(truth)), A, 4)
    assert sorted(est.indices.tolist()) == truth
    assert np.all(np.diff(np.abs(est.scores)) <= 0)


def _onsager_ab(seeds=100):
    res_on, res_off, hit_on, hit_off = [], [], [], []
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        A = build_sensing_matrix(11, 150, 0.1, seed=seed)
        truth = rng.integers(0, 2048, 8)
        y = forward(A, IndexVector.from_indices(truth)) + rng.standard_normal(150)
        on = recover_support(y, A, 8, onsager=True)
        off = recover_support(y, A, 8, onsager=False)
        res_on.append(on.residual_norms[-1])
        res_off.append(off.residual_norms[-1])
        hit_on.append(np.isin(truth, on.indices).mean())
        hit_off.append(np.isin(truth, off.indices).mean())
    return np.mean(res_on), np.mean(res_off), np.mean(hit_on), np.mean(hit_off)


def test_onsager_correction_lowers_the_final_residual():
    res_on, res_off, _, _ = _onsager_ab()
    assert res_on <= res_off


def test_onsager_correction_improves_recovery():
    _, _, hit_on, hit_off = _onsager_ab()
    assert hit_on >= hit_off


def test_agreement_with_exhaustive_matched_filter(frozen):
    o = frozen["matched_filter_T6"]
    agree = 0
    for case in o["cases"]:
        A = SensingMatrix(o["T"], np.array(case["rows"]), o["amplitude"])
        est = recover_support(np.array(case["y"]), A, 2)
        agree += sorted(est.indices.tolist()) == case["best"]
    assert agree >= 95


def test_soft_threshold_support_is_scale_covariant():
    rng = np.random.default_rng(5)
    A = build_sensing_matrix(9, 80, 1.0, seed=5)
    y = forward(A, IndexVector.from_indices([3, 70, 400])) + 0.1 * rng.standard_normal(80)
    a = recover_support(y, A, 3, mode="soft")
    b = recover_support(7.0 * y, A.scaled(7.0), 3, mode="soft")
    assert sorted(a.indices.tolist()) == sorted(b.indices.tolist())


def test_top_k_prefers_lower_index_on_ties():
    assert top_k(np.array([1.0, 3.0, 3.0, -3.0, 0.5]), 2).tolist() == [1, 2]
    assert top_k(np.array([2.0, -2.0]), 1).tolist() == [0]


def test_overflow_is_flagged_not_raised():
    A = build_sensing_matrix(6, 20, 1.0, seed=0)
    st = init_state(np.full(20, np.inf), 64)
    nxt = amp_step(st, np.full(20, np.inf), A, 1)
    assert nxt.diverged
    est = recover_support(np.full(20, 1e308), A, 2)
    assert est.indices.size == 2


def test_observation_length_checked():
    A = build_sensing_matrix(6, 20, 1.0, seed=0)
    with pytest.raises(ValueError):
        recover_support(np.zeros(19), A, 1)
    with pytest.raises(ValueError):
        recover_support(np.zeros(20), A, 0)


def test_ten_iterations_at_full_width_are_fast():
    A = build_sensing_matrix(15, 200, 0.05, seed=1)
    y = forward(A, IndexVector.from_indices(range(0, 15000, 1000))) + np.random.default_rng(0).standard_normal(200)
    recover_support(y, A, 15)
    t0 = time.perf_counter()
    recover_support(y, A, 15)
    assert time.perf_counter() - t0 < 1.0
