import numpy as np
import pytest

from vqattack.hamiltonian import (
    THREE_REGULAR_EDGES,
    RegularGraph,
    build_graph,
    build_hamiltonian,
    energy,
    spectrum,
)
from vqattack.sdes import BitBlock


def brute_energy(edges, cipher_bits, state_bits):
    """Independent per-term accounting: explicit loops, no numpy."""
    total = 0.0
    for i, j in edges:
        w = 1.0 if cipher_bits[i] != cipher_bits[j] else -1.0
        zi = 1.0 if state_bits[i] == 0 else -1.0
        zj = 1.0 if state_bits[j] == 0 else -1.0
        total += w * zi * zj
    for i in range(8):
        t = 0.5 if cipher_bits[i] == 1 else -0.5
        z = 1.0 if state_bits[i] == 0 else -1.0
        total += t * z
    return total


def brute_diagonal(edges, cipher_bits):
    out = []
    for s in range(256):
        state_bits = [(s >> (7 - i)) & 1 for i in range(8)]
        out.append(brute_energy(edges, cipher_bits, state_bits))
    return np.array(out)


class TestBuildGraph:
    def test_degree_three_is_the_fixed_layout(self):
        graph = build_graph(3)
        assert graph.edges == THREE_REGULAR_EDGES
        assert len(graph.edges) == 12
        neighbours = {j for i, j in graph.edges if i == 0} | {i for i, j in graph.edges if j == 0}
        assert neighbours == {1, 6, 7}

    def test_degree_one_is_a_perfect_matching(self):
        graph = build_graph(1)
        assert graph.edges == frozenset({(0, 4), (1, 5), (2, 6), (3, 7)})

    def test_degree_seven_is_complete(self):
        graph = build_graph(7)
        assert len(graph.edges) == 28

    @pytest.mark.parametrize("degree", range(1, 8))
    def test_regularity(self, degree):
        graph = build_graph(degree)
        counts = [0] * 8
        for i, j in graph.edges:
            counts[i] += 1
            counts[j] += 1
        assert counts == [degree] * 8
        assert len(graph.edges) == 4 * degree

    def test_rejects_bad_degree(self):
        for degree in (0, 8, -1):
            with pytest.raises(ValueError):
                build_graph(degree)

    def test_graph_validation(self):
        with pytest.raises(ValueError):
            RegularGraph(1, frozenset({(0, 0), (1, 5), (2, 6), (3, 7)}))
        with pytest.raises(ValueError):
            RegularGraph(2, frozenset({(0, 4), (1, 5), (2, 6), (3, 7)}))


class TestBuildHamiltonian:
    def test_all_zero_ciphertext_coefficients(self):
        h = build_hamiltonian(build_graph(3), BitBlock.from_str("00000000"))
        assert all(w == -1.0 for w in h.edge_weights.values())
        assert all(t == -0.5 for t in h.node_weights.values())
        assert energy(h, BitBlock.from_str("00000000")) == -16.0
        assert energy(h, BitBlock.from_str("10000000")) == -9.0

    def test_coefficient_rules(self):
        cipher = BitBlock.from_str("10110010")
        h = build_hamiltonian(build_graph(3), cipher)
        for (i, j), w in h.edge_weights.items():
            assert w == (1.0 if cipher.bits[i] != cipher.bits[j] else -1.0)
        for i, t in h.node_weights.items():
            assert t == (0.5 if cipher.bits[i] == 1 else -0.5)

    @pytest.mark.parametrize("degree", range(1, 8))
    def test_ciphertext_energy_is_minus_4n_minus_4(self, degree):
        rng = np.random.default_rng(degree)
        graph = build_graph(degree)
        for _ in range(10):
            cipher = BitBlock.from_int(int(rng.integers(0, 256)), 8)
            h = build_hamiltonian(graph, cipher)
            assert energy(h, cipher) == -4.0 * degree - 4.0

    def test_diagonal_matches_brute_force(self):
        rng = np.random.default_rng(42)
        for degree in (1, 3, 5, 7):
            graph = build_graph(degree)
            for _ in range(3):
                cipher = BitBlock.from_int(int(rng.integers(0, 256)), 8)
                h = build_hamiltonian(graph, cipher)
                expected = brute_diagonal(sorted(graph.edges), cipher.bits)
                np.testing.assert_array_equal(h.diagonal, expected)

    def test_rejects_wrong_width(self):
        with pytest.raises(ValueError):
            build_hamiltonian(build_graph(3), BitBlock.from_str("0000"))


class TestEnergy:
    def test_energy_reads_the_diagonal(self):
        h = build_hamiltonian(build_graph(3), BitBlock.from_str("01101100"))
        rng = np.random.default_rng(1)
        for _ in range(30):
            state = BitBlock.from_int(int(rng.integers(0, 256)), 8)
            assert energy(h, state) == h.diagonal[state.to_int()]

    def test_total_energy_is_ciphertext_invariant(self):
        graph = build_graph(3)
        totals = set()
        for cipher_value in (0, 35, 255, 170):
            h = build_hamiltonian(graph, BitBlock.from_int(cipher_value, 8))
            totals.add(float(np.sum(h.diagonal)))
        assert len(totals) == 1


class TestSpectrum:
    def test_three_regular_summary(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            cipher = BitBlock.from_int(int(rng.integers(0, 256)), 8)
            summary, levels = spectrum(build_hamiltonian(build_graph(3), cipher))
            assert summary.ground == -16.0
            assert summary.first_excited == -9.0
            assert summary.highest == 8.0
            assert summary.ratio == pytest.approx(7.0 / 24.0, abs=0)
            assert levels.size == 256 and np.all(np.diff(levels) >= 0)

    def test_degree_one_and_seven_envelopes(self):
        cipher = BitBlock.from_str("01011010")
        s1, _ = spectrum(build_hamiltonian(build_graph(1), cipher))
        assert (s1.ground, s1.highest) == (-8.0, 4.0)
        s7, _ = spectrum(build_hamiltonian(build_graph(7), cipher))
        assert (s7.ground, s7.highest) == (-32.0, 4.0)

    @pytest.mark.parametrize("degree", range(1, 8))
    def test_ground_state_unique_and_at_ciphertext(self, degree):
        rng = np.random.default_rng(degree + 100)
        graph = build_graph(degree)
        for _ in range(20):
            cipher = BitBlock.from_int(int(rng.integers(0, 256)), 8)
            h = build_hamiltonian(graph, cipher)
            assert int(np.argmin(h.diagonal)) == cipher.to_int()
            assert np.sum(h.diagonal == h.diagonal.min()) == 1

    @pytest.mark.parametrize("degree", range(1, 8))
    def test_sorted_spectrum_is_ciphertext_invariant(self, degree):
        graph = build_graph(degree)
        rng = np.random.default_rng(degree + 200)
        _, baseline = spectrum(build_hamiltonian(graph, BitBlock.from_int(0, 8)))
        for _ in range(5):
            cipher = BitBlock.from_int(int(rng.integers(0, 256)), 8)
            _, levels = spectrum(build_hamiltonian(graph, cipher))
            np.testing.assert_array_equal(levels, baseline)
