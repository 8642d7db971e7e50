import numpy as np
import pytest

from vqattack.entangle import Bipartition, concurrence, entanglement_entropy, reduced_density
from vqattack.qsim import apply_ry, init_uniform


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    state = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return state / np.linalg.norm(state)


def bell_like_state():
    """(|00000,00000> + |11111,11111>)/sqrt(2) on 10 qubits."""
    state = np.zeros(1024, dtype=complex)
    state[0] = state[-1] = 1.0 / np.sqrt(2.0)
    return state


def five_bell_pairs():
    """Qubit i maximally entangled with qubit i+5; rho_A is maximally mixed."""
    state = np.zeros(1024, dtype=complex)
    for a in range(32):
        state[(a << 5) | a] = 2.0 ** (-5.0 / 2.0)
    return state


def product_state(seed):
    rng = np.random.default_rng(seed)
    state = init_uniform(10)
    for q in range(10):
        apply_ry(state, q, float(rng.uniform(0, 2 * np.pi)))
    return state


class TestBipartition:
    def test_default_halves(self):
        cut = Bipartition.halves(10)
        assert cut.part_a == (0, 1, 2, 3, 4)
        assert cut.part_b == (5, 6, 7, 8, 9)

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            Bipartition((0, 1), (1, 2))

    def test_rejects_non_covering(self):
        with pytest.raises(ValueError):
            reduced_density(random_state(4, 0), Bipartition((0, 1), (2,)))


class TestReducedDensity:
    def test_basis_state_projector(self):
        state = np.zeros(1024, dtype=complex)
        state[0b1101000000] = 1.0
        rho = reduced_density(state)
        expected = np.zeros((32, 32), dtype=complex)
        expected[0b11010, 0b11010] = 1.0
        np.testing.assert_allclose(rho, expected)

    def test_bell_like_schmidt_weights(self):
        rho = reduced_density(bell_like_state())
        expected = np.zeros((32, 32), dtype=complex)
        expected[0, 0] = expected[31, 31] = 0.5
        np.testing.assert_allclose(rho, expected, atol=1e-12)

    def test_unit_trace_and_hermitian(self):
        for seed in range(5):
            rho = reduced_density(random_state(10, seed))
            assert abs(np.trace(rho).real - 1.0) < 1e-10
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)

    def test_positive_semidefinite(self):
        rho = reduced_density(random_state(10, 99))
        assert np.linalg.eigvalsh(rho).min() > -1e-12

    def test_non_contiguous_partition(self):
        # Bell pair between qubits 0 and 3 of a 4-qubit register.
        state = np.zeros(16, dtype=complex)
        state[0b0000] = state[0b1001] = 1.0 / np.sqrt(2.0)
        rho = reduced_density(state, Bipartition((0,), (1, 2, 3)))
        np.testing.assert_allclose(rho, np.eye(2) / 2.0, atol=1e-12)


class TestEntropy:
    def test_product_states_have_zero_entropy(self):
        for seed in range(5):
            assert entanglement_entropy(product_state(seed)) < 1e-8

    def test_bell_like_state_is_one_bit(self):
        assert entanglement_entropy(bell_like_state()) == pytest.approx(1.0, abs=1e-10)

    def test_uniform_state_is_zero(self):
        assert entanglement_entropy(init_uniform(10)) == pytest.approx(0.0, abs=1e-10)

    def test_five_bell_pairs_max_out(self):
        assert entanglement_entropy(five_bell_pairs()) == pytest.approx(5.0, abs=1e-10)

    def test_equal_from_either_side(self):
        for seed in range(10):
            state = random_state(10, seed + 50)
            a = entanglement_entropy(state, Bipartition(tuple(range(5)), tuple(range(5, 10))))
            b = entanglement_entropy(state, Bipartition(tuple(range(5, 10)), tuple(range(5))))
            assert a == pytest.approx(b, abs=1e-8)

    def test_bounds(self):
        for seed in range(5):
            value = entanglement_entropy(random_state(10, seed + 300))
            assert 0.0 <= value <= 5.0


class TestConcurrence:
    def test_product_state_is_zero(self):
        for seed in range(5):
            assert concurrence(product_state(seed + 10)) < 1e-8

    def test_bell_like_state(self):
        assert concurrence(bell_like_state()) == pytest.approx(1.0, abs=1e-10)

    def test_maximally_mixed_reduction(self):
        expected = np.sqrt(2.0 * (1.0 - 1.0 / 32.0))
        assert concurrence(five_bell_pairs()) == pytest.approx(expected, abs=1e-10)

    def test_upper_clamp(self):
        bound = np.sqrt(2.0 * (1.0 - 1.0 / 32.0))
        for seed in range(5):
            assert 0.0 <= concurrence(random_state(10, seed + 400)) <= bound

    def test_zero_iff_entropy_zero(self):
        for seed in range(10):
            state = random_state(10, seed + 500)
            entropy = entanglement_entropy(state)
            conc = concurrence(state)
            assert (entropy < 1e-8) == (conc < 1e-8)
        assert concurrence(product_state(3)) < 1e-8 and entanglement_entropy(product_state(3)) < 1e-8


class TestLocalUnitaryInvariance:
    def test_single_qubit_rotation_changes_nothing(self):
        state = random_state(10, 77)
        base_entropy = entanglement_entropy(state)
        base_conc = concurrence(state)
        for qubit in (0, 4, 5, 9):
            rotated = apply_ry(state.copy(), qubit, 1.234)
            assert entanglement_entropy(rotated) == pytest.approx(base_entropy, abs=1e-8)
            assert concurrence(rotated) == pytest.approx(base_conc, abs=1e-8)
