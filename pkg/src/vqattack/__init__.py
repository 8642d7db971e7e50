"""Variational key-recovery experiments against S-DES on an exact statevector simulator."""

from .attack import (
    AttackProblem,
    AttackTrace,
    CostEvaluation,
    CostFunction,
    build_problem,
    cipher_energy_table,
    ground_probability,
    run_attack,
    verify_key,
)
from .entangle import Bipartition, concurrence, entanglement_entropy, reduced_density
from .hamiltonian import (
    GraphHamiltonian,
    RegularGraph,
    SpectrumSummary,
    build_graph,
    build_hamiltonian,
    energy,
    spectrum,
)
from .harness import (
    BatchSummary,
    ExperimentConfig,
    classify_trace,
    export_traces,
    load_traces,
    random_instance,
    run_degree_sweep,
    run_table2,
)
from .optim import GDConfig, NMConfig, OptimizerOutcome, fd_gradient, gd_minimize, nm_minimize
from .qsim import (
    AnsatzSpec,
    apply_controlled,
    apply_ry,
    build_ansatz_state,
    init_uniform,
    probabilities,
    sample_keys,
)
from .sdes import BitBlock, SubKeyPair, decrypt, encrypt, feistel_f, fk, key_schedule, permute

__version__ = "0.1.0"
