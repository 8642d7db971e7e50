"""Exact dense statevector simulation of the parameterised key-register circuits.

States are 1-D complex arrays of length 2**n with qubit 0 as the left-most
(most significant) index bit. Gates mutate the array in place via reshaped
views; at 10 qubits this is exact and fast enough that no sparse machinery is
warranted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sdes import BitBlock

FAMILIES = ("ycx", "ycy", "ycz")
VARIANTS = ("A", "B")

_FAMILY_AXIS = {"ycx": "x", "ycy": "y", "ycz": "z"}

MAX_QUBITS = 16


def normalize_family(family: str) -> str:
    """Canonical family token: 'Y-Cx', 'y-cx' and 'ycx' all map to 'ycx'."""
    token = family.lower().replace("-", "").replace("_", "")
    if token not in FAMILIES:
        raise ValueError(f"unknown ansatz family {family!r}; expected one of {FAMILIES}")
    return token


def _num_qubits(state: np.ndarray) -> int:
    n = int(np.log2(state.size))
    if 1 << n != state.size:
        raise ValueError(f"state length {state.size} is not a power of two")
    return n


def init_uniform(qubit_count: int) -> np.ndarray:
    """Uniform superposition over all basis states (Hadamard layer on |0...0>)."""
    if not 1 <= qubit_count <= MAX_QUBITS:
        raise ValueError(f"qubit_count must be in [1, {MAX_QUBITS}], got {qubit_count}")
    return np.full(1 << qubit_count, 2.0 ** (-qubit_count / 2.0), dtype=complex)


def apply_ry(state: np.ndarray, qubit: int, theta: float) -> np.ndarray:
    """In-place Y rotation: rows (cos t/2, -sin t/2) and (sin t/2, cos t/2)."""
    n = _num_qubits(state)
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    v = state.reshape(1 << qubit, 2, -1)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = c * a - s * b
    v[:, 1, :] = s * a + c * b
    return state


def apply_controlled(state: np.ndarray, control: int, target: int, axis: str) -> np.ndarray:
    """In-place controlled Pauli gate on `target` within the control=1 subspace."""
    n = _num_qubits(state)
    if not 0 <= control < n:
        raise ValueError(f"control {control} out of range for {n} qubits")
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range for {n} qubits")
    if control == target:
        raise ValueError("control and target must differ")
    axis = axis.lower()
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")

    view = state.reshape((2,) * n)
    sel0: list = [slice(None)] * n
    sel0[control] = 1
    sel1 = list(sel0)
    sel0[target] = 0
    sel1[target] = 1
    i0, i1 = tuple(sel0), tuple(sel1)
    if axis == "x":
        a = view[i0].copy()
        view[i0] = view[i1]
        view[i1] = a
    elif axis == "y":
        a = view[i0].copy()
        view[i0] = -1j * view[i1]
        view[i1] = 1j * a
    else:
        view[i1] *= -1.0
    return state


@dataclass(frozen=True)
class AnsatzSpec:
    """Circuit family (entangler axis) x variant (open chain or closed ring) x layers."""

    family: str
    variant: str
    layers: int = 1
    qubit_count: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", normalize_family(self.family))
        object.__setattr__(self, "variant", self.variant.upper())
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be 'A' or 'B', got {self.variant!r}")
        if self.layers < 1:
            raise ValueError("layers must be positive")
        if not 1 <= self.qubit_count <= MAX_QUBITS:
            raise ValueError(f"qubit_count must be in [1, {MAX_QUBITS}]")
        if self.variant == "A" and self.qubit_count < 2:
            raise ValueError("variant A needs at least 2 qubits for the closing gate")

    @property
    def param_count(self) -> int:
        return self.layers * self.qubit_count

    @property
    def axis(self) -> str:
        return _FAMILY_AXIS[self.family]


def ansatz_gates(spec: AnsatzSpec) -> list[tuple]:
    """Gate sequence applied after the uniform-superposition preparation.

    Per layer: one Y rotation per qubit (entries ("ry", qubit, param_index)),
    then the entangling chain qubit i -> i+1 (entries ("c", control, target)),
    and for variant A the closing gate from the last qubit back to qubit 0.
    """
    n = spec.qubit_count
    gates: list[tuple] = []
    for layer in range(spec.layers):
        for q in range(n):
            gates.append(("ry", q, layer * n + q))
        for q in range(n - 1):
            gates.append(("c", q, q + 1))
        if spec.variant == "A":
            gates.append(("c", n - 1, 0))
    return gates


def circuit_depth(spec: AnsatzSpec) -> int:
    """Sequential depth, counting the preparation layer as 1 and the rotation layer as 1."""
    per_layer = 1 + (spec.qubit_count - 1) + (1 if spec.variant == "A" else 0)
    return 1 + spec.layers * per_layer


def build_ansatz_state(spec: AnsatzSpec, params: np.ndarray) -> np.ndarray:
    """Run the circuit on the uniform initial state and return the statevector."""
    params = np.asarray(params, dtype=float)
    if params.shape != (spec.param_count,):
        raise ValueError(f"expected {spec.param_count} parameters, got shape {params.shape}")
    if not np.all(np.isfinite(params)):
        raise ValueError("parameters must be finite")
    state = init_uniform(spec.qubit_count)
    axis = spec.axis
    for gate in ansatz_gates(spec):
        if gate[0] == "ry":
            _, q, idx = gate
            apply_ry(state, q, params[idx])
        else:
            _, cq, tq = gate
            apply_controlled(state, cq, tq, axis)
    return state


def probabilities(state: np.ndarray) -> np.ndarray:
    """Born-rule readout: |amplitude|^2 per basis state."""
    return np.abs(state) ** 2


def sample_keys(state: np.ndarray, count: int, seed) -> list[BitBlock]:
    """Draw i.i.d. basis-state measurements; identical seeds give identical sequences."""
    if count < 1:
        raise ValueError("count must be at least 1")
    n = _num_qubits(state)
    p = probabilities(state)
    total = p.sum()
    if not np.isclose(total, 1.0, atol=1e-6):
        raise ValueError(f"state is not normalized (sum of probabilities {total})")
    rng = np.random.default_rng(seed)
    draws = rng.choice(p.size, size=count, p=p / total)
    return [BitBlock.from_int(int(d), n) for d in draws]
