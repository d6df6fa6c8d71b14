import numpy as np
import pytest

from hetura.channel import (
    ReceivedSignal,
    aggregate_slots,
    assemble,
    encode_user,
    observe,
    superpose,
    transmit,
)
from hetura.cs_codec import build_sensing_matrix


def test_assemble_concatenates_in_slot_order():
    x = assemble([np.array([1.0, 2, 3]), np.array([4.0, 5, 6])])
    assert x.samples.tolist() == [1, 2, 3, 4, 5, 6]
    assert not assemble([np.zeros(3)] * 4).samples.any()
    with pytest.raises(ValueError):
        assemble([np.zeros(3), np.zeros(2)])


def test_slot_energy_adds_up():
    A = build_sensing_matrix(8, 30, 0.4, seed=1)
    x = encode_user(A, [3, 100, 255])
    assert x.energy == pytest.approx(3 * 30 * 0.4)


def test_superpose_identity_and_mismatch():
    A = build_sensing_matrix(8, 30, 1.0, seed=1)
    b = encode_user(A, [1, 2])
    zero = assemble([np.zeros(30)] * 2)
    np.testing.assert_array_equal(superpose(b, zero).samples, b.samples)
    with pytest.raises(ValueError):
        superpose(b, assemble([np.zeros(30)]))


def test_superposition_gives_a_four_point_alphabet():
    p1, p2 = 1.0, 6.0
    A1 = build_sensing_matrix(8, 40, p1, seed=1)
    A2 = build_sensing_matrix(8, 40, p2 - p1, seed=2)
    x = superpose(encode_user(A1, [5, 9]), encode_user(A2, [77, 3])).samples
    a, b = np.sqrt(p1), np.sqrt(p2 - p1)
    alphabet = sorted({round(s1 * a + s2 * b, 9) for s1 in (-1, 1) for s2 in (-1, 1)})
    assert set(np.round(x, 9)) <= set(alphabet)
    assert alphabet == sorted(-v for v in alphabet)


def test_noise_only_channel():
    y = transmit([], noise_seed=3, length=2200)
    assert abs(y.samples.var() - 1.0) < 0.05
    with pytest.raises(ValueError):
        transmit([], noise_seed=3)


def test_noiseless_passthrough():
    A = build_sensing_matrix(8, 30, 1.0, seed=1)
    x = encode_user(A, [1, 2, 3])
    y = transmit([x], noise_seed=0, noise_variance=0.0, section_length=30)
    np.testing.assert_array_equal(y.samples, x.samples)
    assert y.fragments == 3 and y.section(1).size == 30


def test_aggregate_observation_matches_dense_model():
    rng = np.random.default_rng(4)
    T, Q, J = 6, 24, 3
    A1 = build_sensing_matrix(T, Q, 1.5, seed=5)
    A2 = build_sensing_matrix(T, Q, 7.5, seed=6)
    bottom = rng.integers(0, 2**T, (6, J))
    top = rng.integers(0, 2**T, (2, J))
    y = observe([(A1, bottom), (A2, top)], noise_seed=9)
    noise = np.random.default_rng(9).standard_normal(J * Q)
    D1, D2 = A1.to_dense(), A2.to_dense()
    for j in range(J):
        m1 = np.bincount(bottom[:, j], minlength=2**T)
        m2 = np.bincount(top[:, j], minlength=2**T)
        want = D1 @ m1 + D2 @ m2 + noise[j * Q:(j + 1) * Q]
        np.testing.assert_allclose(y.section(j), want, rtol=1e-12, atol=1e-12)


def test_aggregate_equals_sum_of_users():
    rng = np.random.default_rng(1)
    A1 = build_sensing_matrix(8, 20, 1.0, seed=1)
    idx = rng.integers(0, 256, (4, 5))
    users = [encode_user(A1, row) for row in idx]
    a = transmit(users, noise_seed=2, section_length=20)
    b = observe([(A1, idx)], noise_seed=2)
    np.testing.assert_allclose(a.samples, b.samples, atol=1e-12)


def test_sparsity_accounting():
    idx = np.random.default_rng(0).integers(0, 8, (15, 11))
    slots = aggregate_slots(idx)
    assert sum(s.total for s in slots) == 11 * 15


def test_received_sections_reshape():
    y = ReceivedSignal(np.arange(12.0), 4)
    assert y.sections().shape == (3, 4)
