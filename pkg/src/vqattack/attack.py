"""End-to-end key recovery: objective construction, optimisation, measurement.

The Hamiltonian is diagonal, so the expectation never needs a joint
key-and-data register: the cipher is applied classically to every basis key
once, giving a 1024-entry energy table, and the cost of a parameter vector is
the dot product of that table with the circuit's output distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entangle import Bipartition, concurrence, entanglement_entropy
from .hamiltonian import GraphHamiltonian, build_graph, build_hamiltonian, spectrum
from .optim import GDConfig, NMConfig, OptimizerOutcome, gd_minimize, nm_minimize
from .qsim import AnsatzSpec, build_ansatz_state, probabilities, sample_keys
from .sdes import BitBlock, encrypt

OPTIMIZERS = ("gd", "nm")


@dataclass(frozen=True)
class AttackProblem:
    """One known-plaintext instance. The generating key is never stored here."""

    plaintext: BitBlock
    ciphertext: BitBlock
    hamiltonian: GraphHamiltonian
    spec: AnsatzSpec
    cutoff: float
    measurement_budget: int = 1024


def build_problem(
    plaintext: BitBlock,
    key: BitBlock,
    degree: int = 3,
    family: str = "ycz",
    variant: str = "A",
    layers: int = 1,
    cutoff: float | None = None,
    measurement_budget: int = 1024,
) -> AttackProblem:
    """Assemble a problem from its secrets; cutoff defaults to the first excited energy."""
    ciphertext = encrypt(plaintext, key)
    h = build_hamiltonian(build_graph(degree), ciphertext)
    if cutoff is None:
        cutoff = spectrum(h)[0].first_excited
    spec = AnsatzSpec(family=family, variant=variant, layers=layers)
    return AttackProblem(plaintext, ciphertext, h, spec, cutoff, measurement_budget)


def _cipher_ints(problem: AttackProblem) -> np.ndarray:
    """encrypt(plaintext, k) as an integer, for every basis key k."""
    width = problem.spec.qubit_count
    p = problem.plaintext
    return np.array(
        [encrypt(p, BitBlock.from_int(k, width)).to_int() for k in range(1 << width)],
        dtype=np.int64,
    )


def cipher_energy_table(problem: AttackProblem) -> np.ndarray:
    """Energy of the ciphertext each key produces; computed once per attack."""
    table = problem.hamiltonian.diagonal[_cipher_ints(problem)]
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class CostEvaluation:
    value: float
    evaluation_index: int


class CostFunction:
    """Counting objective mapping ansatz parameters to the Hamiltonian expectation."""

    def __init__(self, problem: AttackProblem):
        self.problem = problem
        self.cipher_ints = _cipher_ints(problem)
        self.table = problem.hamiltonian.diagonal[self.cipher_ints]
        self.ground_mask = self.cipher_ints == problem.ciphertext.to_int()
        self.evaluations = 0

    def state(self, params: np.ndarray) -> np.ndarray:
        return build_ansatz_state(self.problem.spec, params)

    def evaluate(self, params: np.ndarray) -> CostEvaluation:
        value = float(probabilities(self.state(params)) @ self.table)
        self.evaluations += 1
        return CostEvaluation(value, self.evaluations)

    def __call__(self, params: np.ndarray) -> float:
        return self.evaluate(params).value

    def ground_probability(self, params: np.ndarray) -> float:
        return float(probabilities(self.state(params))[self.ground_mask].sum())


def expected_energy(probs: np.ndarray, table: np.ndarray) -> float:
    """Plain expectation of an energy table under a probability vector."""
    return float(np.dot(probs, table))


def ground_probability(params: np.ndarray, problem: AttackProblem) -> float:
    """Probability mass on keys that reproduce the known ciphertext."""
    return CostFunction(problem).ground_probability(params)


def verify_key(candidate: BitBlock, problem: AttackProblem) -> bool:
    """True iff the candidate encrypts the known plaintext to the known ciphertext."""
    return encrypt(problem.plaintext, candidate) == problem.ciphertext


@dataclass
class TraceRecord:
    iteration: int
    evaluations: int
    cost: float
    entropy: float
    concurrence: float
    restarted: bool
    ground_prob: float


@dataclass
class AttackTrace:
    """Per-iteration records plus the terminal outcome of one attack run."""

    records: list[TraceRecord]
    success: bool
    found_key: BitBlock | None
    reached_cutoff: bool
    iterations: int
    evaluations: int
    samples_drawn: int
    restarts: int
    best_cost: float
    snapshot_energies: np.ndarray
    snapshot_probs: np.ndarray
    metadata: dict = field(default_factory=dict)


def _resolve_config(problem, optimizer, gd_config, nm_config):
    family, variant = problem.spec.family, problem.spec.variant
    if optimizer == "gd":
        return gd_config or GDConfig.for_ansatz(
            family, variant, cutoff=problem.cutoff, budget=problem.measurement_budget
        )
    if optimizer == "nm":
        return nm_config or NMConfig.for_ansatz(
            family, variant, cutoff=problem.cutoff, budget=problem.measurement_budget
        )
    raise ValueError(f"optimizer must be one of {OPTIMIZERS}, got {optimizer!r}")


def eigenstate_snapshot(objective: CostFunction, params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Probability per data-register basis state at `params`, ordered by ascending energy."""
    key_probs = probabilities(objective.state(params))
    diag = objective.problem.hamiltonian.diagonal
    aggregated = np.bincount(objective.cipher_ints, weights=key_probs, minlength=diag.size)
    order = np.lexsort((np.arange(diag.size), diag))
    return diag[order].copy(), aggregated[order]


def run_attack(
    problem: AttackProblem,
    optimizer: str = "gd",
    seed=0,
    x0: np.ndarray | None = None,
    gd_config: GDConfig | None = None,
    nm_config: NMConfig | None = None,
) -> AttackTrace:
    """Optimise the expectation below the cutoff, then measure and verify keys.

    The optimizer runs until its value crosses the cutoff or the shared budget
    is spent. On a crossing, basis keys are sampled from the best state found
    and each draw is verified against the known ciphertext; the draws are
    charged against the residual budget. Failure to verify within budget is an
    outcome, not an error. Identical (seed, config) pairs give identical traces.
    """
    seed_seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    init_seed, optimizer_seed, sampler_seed = seed_seq.spawn(3)

    config = _resolve_config(problem, optimizer, gd_config, nm_config)
    objective = CostFunction(problem)
    if x0 is None:
        x0 = np.random.default_rng(init_seed).uniform(0.0, 2.0 * np.pi, problem.spec.param_count)

    cut = Bipartition.halves(problem.spec.qubit_count)
    records: list[TraceRecord] = []

    def observe(iteration: int, params: np.ndarray, value: float, restarted: bool) -> None:
        # Observer pass over the exact state; not charged to the budget.
        state = objective.state(params)
        records.append(
            TraceRecord(
                iteration=iteration,
                evaluations=objective.evaluations,
                cost=value,
                entropy=entanglement_entropy(state, cut),
                concurrence=concurrence(state, cut),
                restarted=restarted,
                ground_prob=float(probabilities(state)[objective.ground_mask].sum()),
            )
        )

    minimize = gd_minimize if optimizer == "gd" else nm_minimize
    outcome: OptimizerOutcome = minimize(objective, x0, config, seed=optimizer_seed, callback=observe)

    success = False
    found_key: BitBlock | None = None
    samples_drawn = 0
    residual = config.budget - outcome.evaluations
    if outcome.reached_cutoff and residual > 0:
        final_state = objective.state(outcome.best_params)
        for candidate in sample_keys(final_state, residual, sampler_seed):
            samples_drawn += 1
            if verify_key(candidate, problem):
                success = True
                found_key = candidate
                break

    snapshot_energies, snapshot_probs = eigenstate_snapshot(objective, outcome.best_params)
    metadata = {
        "optimizer": optimizer,
        "family": problem.spec.family,
        "variant": problem.spec.variant,
        "layers": problem.spec.layers,
        "degree": problem.hamiltonian.graph.degree,
        "cutoff": config.cutoff,
        "budget": config.budget,
        "entangler": "chain i->i+1" + (", ring closed (n-1)->0" if problem.spec.variant == "A" else ""),
        "step_times_source": "evaluation count",
    }
    if optimizer == "gd":
        metadata["learning_rate"] = config.learning_rate
        metadata["restart_norm"] = config.restart_norm
    else:
        metadata["amplification"] = config.amplification
        metadata["restart_spread"] = config.restart_spread

    return AttackTrace(
        records=records,
        success=success,
        found_key=found_key,
        reached_cutoff=outcome.reached_cutoff,
        iterations=outcome.iterations,
        evaluations=outcome.evaluations,
        samples_drawn=samples_drawn,
        restarts=outcome.restarts,
        best_cost=outcome.best_value,
        snapshot_energies=snapshot_energies,
        snapshot_probs=snapshot_probs,
        metadata=metadata,
    )
