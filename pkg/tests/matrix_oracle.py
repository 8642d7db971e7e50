"""Brute-force dense-matrix circuit oracle for cross-checking the simulator.

Builds every gate as a full 2^n x 2^n unitary via Kronecker products (qubit 0
is the left-most factor) and applies it by plain matrix-vector products.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def kron_chain(factors) -> np.ndarray:
    out = np.array([[1.0]], dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def single_qubit_unitary(n: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    return kron_chain([gate if q == qubit else I2 for q in range(n)])


def controlled_unitary(n: int, control: int, target: int, gate: np.ndarray) -> np.ndarray:
    off = [I2] * n
    off[control] = P0
    on = [I2] * n
    on[control] = P1
    on[target] = gate
    return kron_chain(off) + kron_chain(on)


def oracle_ansatz_state(family: str, variant: str, layers: int, n: int, params) -> np.ndarray:
    axis = {"ycx": "x", "ycy": "y", "ycz": "z"}[family]
    state = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=complex)
    params = np.asarray(params, dtype=float)
    for layer in range(layers):
        for q in range(n):
            state = single_qubit_unitary(n, q, ry_matrix(params[layer * n + q])) @ state
        for q in range(n - 1):
            state = controlled_unitary(n, q, q + 1, PAULI[axis]) @ state
        if variant == "A":
            state = controlled_unitary(n, n - 1, 0, PAULI[axis]) @ state
    return state
