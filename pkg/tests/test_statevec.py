import numpy as np
import pytest

from hidsym.errors import ResourceError
from hidsym.instances import ShorInstance, gen_shor, gen_simon
from hidsym.rng import make_rng
from hidsym.statevec import (StateVector, apply_xor_oracle, full_distribution,
                             hadamard_register, prepare_oracle_state, qft_register,
                             sample_measurement)
from hidsym.transforms import OpCounter, fwht, qft

from conftest import dft_matrix, hadamard_matrix


@pytest.mark.parametrize("m", range(1, 13))
def test_fwht_matches_matrix(m, rng):
    N = 1 << m
    x = rng.normal(size=N) + 1j * rng.normal(size=N)
    if N <= 1 << 12:
        ref = hadamard_matrix(N) @ x
        assert np.max(np.abs(fwht(x) - ref)) <= 1e-9


@pytest.mark.parametrize("m", range(1, 13))
def test_qft_matches_dft(m, rng):
    N = 1 << m
    x = rng.normal(size=N) + 1j * rng.normal(size=N)
    assert np.max(np.abs(qft(x) - dft_matrix(N) @ x)) <= 1e-9
    assert np.max(np.abs(qft(x, inverse=True) - dft_matrix(N, -1) @ x)) <= 1e-9


def test_transform_counter_is_n_log_n():
    for m in (8, 12):
        c = OpCounter()
        qft(np.ones(1 << m), counter=c)
        assert c.butterflies == m * (1 << m) // 2


def test_qft_basis_examples():
    e0 = np.array([1, 0, 0, 0], dtype=complex)
    e1 = np.array([0, 1, 0, 0], dtype=complex)
    assert np.allclose(qft(e0), [0.5, 0.5, 0.5, 0.5])
    assert np.allclose(qft(e1), [0.5, 0.5j, -0.5, -0.5j])


def test_prepare_trivial():
    s = prepare_oracle_state(np.zeros(2, dtype=int), 1)
    assert np.allclose(s.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0])


def test_prepare_identity_function():
    s = prepare_oracle_state(np.arange(4), 2)
    nz = np.flatnonzero(np.abs(s.amplitudes) > 0)
    assert sorted(nz) == [x + (x << 2) for x in range(4)]
    assert np.allclose(np.abs(s.amplitudes[nz]), 0.5)


def test_prepare_norm_random(rng):
    s = prepare_oracle_state(rng.integers(0, 32, size=32), 5)
    assert abs(s.norm() - 1) <= 1e-12


def test_resource_cap():
    with pytest.raises(ResourceError):
        StateVector.basis(14, 0, 0)


def test_xor_oracle():
    n = 3
    table = np.array([0, 1, 2, 3, 4, 6, 7, 7])
    s = StateVector.basis(n, 5, 3)
    out = apply_xor_oracle(s, table)
    assert abs(out.amplitudes[5 + (5 << n)]) == 1.0
    assert np.allclose(apply_xor_oracle(out, table).amplitudes, s.amplitudes)
    assert np.allclose(apply_xor_oracle(s, np.zeros(8, dtype=int)).amplitudes, s.amplitudes)


def test_hadamard_examples():
    n = 2
    s = hadamard_register(StateVector.basis(n, 0, 0))
    assert np.allclose(s.amplitudes, 1 / 4)
    assert np.max(np.abs(hadamard_register(s).amplitudes - StateVector.basis(n, 0, 0).amplitudes)) <= 1e-12


def test_simon_n1_hand_computation():
    s = hadamard_register(prepare_oracle_state(np.zeros(2, dtype=int), 1))
    # outcome indices y1 + 2 * y2: (0,0) -> 0, (0,1) -> 2
    assert np.allclose(s.amplitudes, [1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])
    assert np.allclose(full_distribution(s), [0.5, 0, 0.5, 0])


def test_qft_register_roundtrip(rng):
    amps = rng.normal(size=64) + 1j * rng.normal(size=64)
    s = StateVector(3, amps / np.linalg.norm(amps))
    for reg in ("X", "F", "both"):
        back = qft_register(qft_register(s, reg), reg, inverse=True)
        assert np.max(np.abs(back.amplitudes - s.amplitudes)) <= 1e-12


def test_norm_preserved_through_sequence(rng):
    table = rng.integers(0, 16, size=16)
    s = prepare_oracle_state(table, 4)
    s = hadamard_register(s, "X")
    s = apply_xor_oracle(s, table)
    s = qft_register(s, "F")
    s = hadamard_register(s, "both")
    s = qft_register(s, "X", inverse=True)
    assert abs(s.norm() - 1) <= 1e-9


def test_distribution_examples():
    assert np.array_equal(full_distribution(StateVector.basis(2, 1, 2)),
                          np.eye(16)[1 + (2 << 2)])
    u = hadamard_register(StateVector.basis(2, 0, 0))
    assert np.allclose(full_distribution(u), 1 / 16)


def test_sampling_point_mass_and_determinism():
    s = StateVector.basis(2, 3, 1)
    r = make_rng(0)
    assert all(sample_measurement(s, r) == 3 + (1 << 2) for _ in range(20))
    u = hadamard_register(StateVector.basis(2, 0, 0))
    a = [sample_measurement(u, make_rng(7)) for _ in range(3)]
    r1, r2 = make_rng(9), make_rng(9)
    assert [sample_measurement(u, r1) for _ in range(50)] == [sample_measurement(u, r2) for _ in range(50)]
    assert len(set(a)) == 1


def test_sampling_frequencies_n1():
    s = hadamard_register(prepare_oracle_state(np.zeros(2, dtype=int), 1))
    r = make_rng(3)
    draws = np.array([sample_measurement(s, r) for _ in range(1000)])
    assert set(np.unique(draws)) <= {0, 2}
    assert abs(np.mean(draws == 0) - 0.5) <= 0.05


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_simon_support_constraint(n):
    N = 1 << n
    r = make_rng(n)
    inst = gen_simon(n, int(r.integers(1, N)), int(r.integers(0, N)), seed=n,
                     require_unique=n > 2)
    probs = full_distribution(hadamard_register(prepare_oracle_state(inst.table, n)))
    Y = np.arange(N * N)
    viol = np.array([bin(inst.R & int(y)).count("1") & 1 for y in Y], dtype=bool)
    assert probs[viol].sum() <= 1e-12


def _shor_dense(inst):
    N = inst.N
    return full_distribution(qft_register(prepare_oracle_state(inst.table, inst.n), "both")).reshape(N, N)


@pytest.mark.parametrize("n, p, q", [(3, 2, 1), (6, 4, 2), (6, 8, 3), (8, 4, 3)])
def test_shor_resonance_support_exact_on_commensurate_ky(n, p, q):
    # With p | N the l-sum vanishes off resonance only when q*k_y = 0 (mod p);
    # on that slice of k_y the support is exactly the resonance set.
    N = 1 << n
    inst = (ShorInstance.from_base(n, p, q, [0] * p) if q < 2
            else gen_shor(n, p, q, seed=1, epsilon=1.0))
    assert N % p == 0
    probs = _shor_dense(inst)
    ky, kx = np.indices((N, N))
    off = (p * kx + q * ky) % N != 0
    commensurate = (q * ky) % p == 0
    assert probs[off & commensurate].sum() <= 1e-12


def test_shor_resonance_leaks_off_commensurate_ky():
    inst = gen_shor(6, 4, 2, seed=1, epsilon=1.0)
    probs = _shor_dense(inst)
    ky, kx = np.indices((64, 64))
    off = (4 * kx + 2 * ky) % 64 != 0
    assert probs[off & (ky % 2 == 1)].sum() > 0.1


def test_x_unitary_leaves_f_marginal(rng):
    for n in range(1, 6):
        amps = rng.normal(size=4 ** n) + 1j * rng.normal(size=4 ** n)
        s = StateVector(n, amps / np.linalg.norm(amps))
        before = full_distribution(s).reshape(1 << n, 1 << n).sum(axis=1)
        after = full_distribution(hadamard_register(s, "X")).reshape(1 << n, 1 << n).sum(axis=1)
        assert np.max(np.abs(before - after)) <= 1e-12
