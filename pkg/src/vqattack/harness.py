"""Batch experiment drivers with deterministic seeding and structured output.

Every run's randomness derives from (master_seed, stream, sim, ...) tuples fed
to numpy SeedSequence, so results are identical no matter how many workers
execute the batch. Aggregation always folds in run-index order.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .attack import AttackTrace, build_problem, run_attack
from .hamiltonian import build_graph, build_hamiltonian, spectrum
from .optim import GDConfig
from .sdes import BitBlock, encrypt

WORKERS_ENV = "VQATTACK_WORKERS"

TRACE_SCHEMA = "vqattack.trace/1"
SNAPSHOT_SCHEMA = "vqattack.snapshot/1"
SUMMARY_SCHEMA = "vqattack.table2-summary/1"
RUNNING_AVG_SCHEMA = "vqattack.table2-running-average/1"
DEGREE_SCHEMA = "vqattack.degree-sweep/1"

# Degree-sweep hyperparameters (gradient descent, ycz variant A).
DEGREE_LEARNING_RATE = {1: 0.72, 2: 0.84, 3: 1.08, 4: 1.44, 5: 1.92, 6: 2.40, 7: 2.88}
DEGREE_RESTART_NORM = {1: 0.53, 2: 0.62, 3: 0.80, 4: 1.07, 5: 1.42, 6: 1.78, 7: 2.13}

# Reference energy levels (ground, first excited, highest) per graph degree.
# Only degrees 1, 3 and 7 pin the topology used here; the other degrees depend
# on an undisclosed graph choice, so they are reporting targets, not assertions.
REFERENCE_SPECTRA = {
    1: (-8.0, -6.0, 4.0),
    2: (-12.0, -7.0, 8.0),
    3: (-16.0, -9.0, 8.0),
    4: (-20.0, -12.0, 9.0),
    5: (-24.0, -16.0, 12.0),
    6: (-28.0, -20.0, 8.0),
    7: (-32.0, -24.0, 4.0),
}

# A trace counts as scenario (b) when entropy climbs at least this many bits
# above its starting value before the run converges.
ENTROPY_RISE_THRESHOLD = 0.2

# Canonical configuration order; run seeds key off this fixed enumeration so a
# configuration's runs are identical whether it executes alone or in a batch.
CANONICAL_COMBOS = tuple(
    (family, variant, optimizer)
    for family in ("ycx", "ycy", "ycz")
    for variant in ("A", "B")
    for optimizer in ("gd", "nm")
)


@dataclass
class ExperimentConfig:
    """Batch settings; defaults reproduce the standard 30-simulation table."""

    simulations: int = 30
    families: tuple[str, ...] = ("ycx", "ycy", "ycz")
    variants: tuple[str, ...] = ("A", "B")
    optimizers: tuple[str, ...] = ("gd", "nm")
    degree: int = 3
    master_seed: int = 0
    layers: int = 1
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.simulations < 1:
            raise ValueError("simulations must be at least 1")


def _worker_count(config: ExperimentConfig) -> int:
    if config.workers is not None:
        return max(1, config.workers)
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def random_instance(seed) -> tuple[BitBlock, BitBlock, BitBlock]:
    """Uniformly random (plaintext, key, ciphertext) triple."""
    return _draw_instance(np.random.default_rng(seed))


def _draw_instance(rng: np.random.Generator) -> tuple[BitBlock, BitBlock, BitBlock]:
    key = BitBlock.from_int(int(rng.integers(0, 1 << 10)), 10)
    plaintext = BitBlock.from_int(int(rng.integers(0, 1 << 8)), 8)
    return plaintext, key, encrypt(plaintext, key)


def _instance_and_params(master_seed: int, sim: int, param_count: int):
    """Shared per-simulation secrets and initial parameters (same across configs)."""
    rng = np.random.default_rng(np.random.SeedSequence((master_seed, 0, sim)))
    plaintext, key, ciphertext = _draw_instance(rng)
    x0 = rng.uniform(0.0, 2.0 * np.pi, param_count)
    return plaintext, key, ciphertext, x0


@dataclass
class RunResult:
    run_id: str
    sim: int
    family: str
    variant: str
    optimizer: str
    degree: int
    true_key: str
    trace: AttackTrace


def _table2_run(task: tuple) -> RunResult:
    master_seed, sim, family, variant, optimizer, degree, layers = task
    plaintext, key, _, x0 = _instance_and_params(master_seed, sim, 10 * layers)
    problem = build_problem(plaintext, key, degree=degree, family=family, variant=variant, layers=layers)
    stream = CANONICAL_COMBOS.index((family, variant, optimizer))
    trace = run_attack(
        problem,
        optimizer=optimizer,
        seed=np.random.SeedSequence((master_seed, 1, sim, stream)),
        x0=x0,
    )
    return RunResult(
        run_id=f"s{sim:03d}-{family}{variant}-{optimizer}",
        sim=sim,
        family=family,
        variant=variant,
        optimizer=optimizer,
        degree=degree,
        true_key=key.to_str(),
        trace=trace,
    )


def _degree_run(task: tuple) -> RunResult:
    master_seed, sim, degree, layers, budget = task
    plaintext, key, _, x0 = _instance_and_params(master_seed, sim, 10 * layers)
    problem = build_problem(plaintext, key, degree=degree, family="ycz", variant="A", layers=layers)
    config = GDConfig(
        learning_rate=DEGREE_LEARNING_RATE[degree],
        restart_norm=DEGREE_RESTART_NORM[degree],
        budget=budget,
        cutoff=problem.cutoff,
    )
    trace = run_attack(
        problem,
        optimizer="gd",
        seed=np.random.SeedSequence((master_seed, 2, sim, degree)),
        x0=x0,
        gd_config=config,
    )
    return RunResult(
        run_id=f"s{sim:03d}-deg{degree}-gd",
        sim=sim,
        family="ycz",
        variant="A",
        optimizer="gd",
        degree=degree,
        true_key=key.to_str(),
        trace=trace,
    )


def _execute(worker, tasks: list[tuple], workers: int) -> list:
    if workers <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


@dataclass
class BatchSummary:
    family: str
    variant: str
    optimizer: str
    degree: int
    simulations: int
    success_rate: float
    min_iterations: int
    avg_iterations: float
    max_iterations: int
    avg_evaluations: float

    @property
    def label(self) -> str:
        return f"{self.family}{self.variant}-{self.optimizer}"


def _summarize(results: list[RunResult]) -> BatchSummary:
    iterations = [r.trace.iterations for r in results]
    first = results[0]
    return BatchSummary(
        family=first.family,
        variant=first.variant,
        optimizer=first.optimizer,
        degree=first.degree,
        simulations=len(results),
        success_rate=sum(r.trace.success for r in results) / len(results),
        min_iterations=min(iterations),
        avg_iterations=float(np.mean(iterations)),
        max_iterations=max(iterations),
        avg_evaluations=float(np.mean([r.trace.evaluations for r in results])),
    )


@dataclass
class Table2Result:
    config: ExperimentConfig
    summaries: list[BatchSummary]
    running_averages: dict[str, list[float]]
    results: list[RunResult] = field(repr=False)


def run_table2(config: ExperimentConfig) -> Table2Result:
    """Run every (family, variant, optimizer) combination on shared instances.

    All configurations within one simulation index consume the same
    (plaintext, key, x0) triple; summaries and running averages over the first
    1..N simulations are produced per configuration.
    """
    combos = [
        (family, variant, optimizer)
        for family in config.families
        for variant in config.variants
        for optimizer in config.optimizers
    ]
    for combo in combos:
        if combo not in CANONICAL_COMBOS:
            raise ValueError(f"unknown configuration {combo}")
    tasks = [
        (config.master_seed, sim, family, variant, optimizer, config.degree, config.layers)
        for sim in range(config.simulations)
        for family, variant, optimizer in combos
    ]
    results = _execute(_table2_run, tasks, _worker_count(config))

    summaries = []
    running_averages: dict[str, list[float]] = {}
    for family, variant, optimizer in combos:
        group = [
            r
            for r in results
            if (r.family, r.variant, r.optimizer) == (family, variant, optimizer)
        ]
        group.sort(key=lambda r: r.sim)
        summary = _summarize(group)
        summaries.append(summary)
        iteration_counts = [r.trace.iterations for r in group]
        running_averages[summary.label] = [
            float(np.mean(iteration_counts[: n + 1])) for n in range(len(iteration_counts))
        ]
    return Table2Result(config, summaries, running_averages, results)


@dataclass
class DegreeSweepResult:
    config: ExperimentConfig
    summaries: list[BatchSummary]
    measured_spectra: dict[int, tuple[float, float, float]]
    results: list[RunResult] = field(repr=False)


def run_degree_sweep(config: ExperimentConfig, degrees=range(1, 8), budget: int = 1024) -> DegreeSweepResult:
    """Sweep graph degrees with per-degree learning rate, restart norm and cutoff.

    Uses the ycz variant-A ansatz with gradient descent; instances and initial
    parameters are shared across degrees within each simulation index.
    """
    degrees = list(degrees)
    tasks = [
        (config.master_seed, sim, degree, config.layers, budget)
        for degree in degrees
        for sim in range(config.simulations)
    ]
    results = _execute(_degree_run, tasks, _worker_count(config))

    summaries = []
    measured = {}
    for degree in degrees:
        group = sorted((r for r in results if r.degree == degree), key=lambda r: r.sim)
        summaries.append(_summarize(group))
        summary_info, _ = spectrum(build_hamiltonian(build_graph(degree), BitBlock.from_int(0, 8)))
        measured[degree] = (summary_info.ground, summary_info.first_excited, summary_info.highest)
    return DegreeSweepResult(config, summaries, measured, results)


def classify_trace(trace: AttackTrace) -> str:
    """Scenario label: (a) clean convergence, (b) entropy bump then convergence,
    (c) converged after restarts, (d) failure."""
    if not trace.success:
        return "d"
    if trace.restarts > 0:
        return "c"
    entropies = [record.entropy for record in trace.records]
    if entropies and max(entropies) - entropies[0] >= ENTROPY_RISE_THRESHOLD:
        return "b"
    return "a"


def export_traces(results: list[RunResult], out_dir) -> tuple[Path, Path]:
    """Write per-iteration records and terminal snapshots as JSON lines.

    Returns the paths of (traces.jsonl, snapshots.jsonl). Records appear in
    run order; floats use repr so files round-trip exactly.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    traces_path = out / "traces.jsonl"
    snapshots_path = out / "snapshots.jsonl"
    with traces_path.open("w") as trace_file, snapshots_path.open("w") as snapshot_file:
        for result in results:
            trace = result.trace
            for record in trace.records:
                trace_file.write(
                    json.dumps(
                        {
                            "schema": TRACE_SCHEMA,
                            "run_id": result.run_id,
                            "iteration": record.iteration,
                            "evaluations": record.evaluations,
                            "cost": record.cost,
                            "entropy": record.entropy,
                            "concurrence": record.concurrence,
                            "restarted": record.restarted,
                            "ground_prob": record.ground_prob,
                        }
                    )
                    + "\n"
                )
            snapshot_file.write(
                json.dumps(
                    {
                        "schema": SNAPSHOT_SCHEMA,
                        "run_id": result.run_id,
                        "family": result.family,
                        "variant": result.variant,
                        "optimizer": result.optimizer,
                        "degree": result.degree,
                        "scenario": classify_trace(trace),
                        "success": trace.success,
                        "found_key": trace.found_key.to_str() if trace.found_key else None,
                        "reached_cutoff": trace.reached_cutoff,
                        "iterations": trace.iterations,
                        "evaluations": trace.evaluations,
                        "samples_drawn": trace.samples_drawn,
                        "restarts": trace.restarts,
                        "best_cost": trace.best_cost,
                        "energies": trace.snapshot_energies.tolist(),
                        "probabilities": trace.snapshot_probs.tolist(),
                    }
                )
                + "\n"
            )
    return traces_path, snapshots_path


def load_traces(out_dir) -> tuple[list[dict], list[dict]]:
    """Parse files written by :func:`export_traces`."""
    out = Path(out_dir)
    records = [json.loads(line) for line in (out / "traces.jsonl").open()]
    snapshots = [json.loads(line) for line in (out / "snapshots.jsonl").open()]
    return records, snapshots


def _write_lines(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n")


def write_table2_outputs(result: Table2Result, out_dir) -> None:
    """Persist summary.csv, running_averages.csv and the trace files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    lines = [
        f"# schema={SUMMARY_SCHEMA}",
        "family,variant,optimizer,degree,simulations,success_rate,"
        "min_iterations,avg_iterations,max_iterations,avg_evaluations",
    ]
    for s in result.summaries:
        lines.append(
            f"{s.family},{s.variant},{s.optimizer},{s.degree},{s.simulations},"
            f"{s.success_rate!r},{s.min_iterations},{s.avg_iterations!r},"
            f"{s.max_iterations},{s.avg_evaluations!r}"
        )
    _write_lines(out / "summary.csv", lines)

    lines = [
        f"# schema={RUNNING_AVG_SCHEMA}",
        "family,variant,optimizer,simulations,avg_iterations",
    ]
    for summary in result.summaries:
        for n, value in enumerate(result.running_averages[summary.label], start=1):
            lines.append(f"{summary.family},{summary.variant},{summary.optimizer},{n},{value!r}")
    _write_lines(out / "running_averages.csv", lines)

    export_traces(result.results, out)


def write_degree_outputs(result: DegreeSweepResult, out_dir) -> None:
    """Persist degrees.csv (with measured and reference spectra) and trace files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [
        f"# schema={DEGREE_SCHEMA}",
        "degree,learning_rate,restart_norm,cutoff,simulations,success_rate,"
        "min_iterations,avg_iterations,max_iterations,avg_evaluations,"
        "ground,first_excited,highest,ref_ground,ref_first_excited,ref_highest",
    ]
    for s in result.summaries:
        ground, first_excited, highest = result.measured_spectra[s.degree]
        ref = REFERENCE_SPECTRA[s.degree]
        lines.append(
            f"{s.degree},{DEGREE_LEARNING_RATE[s.degree]!r},{DEGREE_RESTART_NORM[s.degree]!r},"
            f"{first_excited!r},{s.simulations},{s.success_rate!r},{s.min_iterations},"
            f"{s.avg_iterations!r},{s.max_iterations},{s.avg_evaluations!r},"
            f"{ground!r},{first_excited!r},{highest!r},{ref[0]!r},{ref[1]!r},{ref[2]!r}"
        )
    _write_lines(out / "degrees.csv", lines)
    export_traces(result.results, out)
