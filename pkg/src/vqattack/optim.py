"""The two classical optimizers driving the attack objective.

Both are budgeted by objective-evaluation count, stop early when the value
crosses a cutoff, and restart from a fresh random point in [0, 2*pi)^d when
their stagnation rule fires. `callback(iteration, params, value, restarted)`
is invoked once per outer iteration with the parameters that iteration was
scored at.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .qsim import normalize_family

# Per-ansatz gradient-descent learning rates, keyed by (family, variant).
GD_LEARNING_RATES = {
    ("ycx", "A"): 0.72,
    ("ycy", "A"): 0.72,
    ("ycz", "A"): 1.08,
    ("ycx", "B"): 0.72,
    ("ycy", "B"): 0.76,
    ("ycz", "B"): 0.94,
}

# Per-ansatz simplex amplification factors, keyed by (family, variant).
NM_AMPLIFICATIONS = {
    ("ycx", "A"): 2.7,
    ("ycy", "A"): 2.7,
    ("ycz", "A"): 2.8,
    ("ycx", "B"): 2.7,
    ("ycy", "B"): 2.7,
    ("ycz", "B"): 2.7,
}

# Guard for the 1/|cost| step factor; cost can in principle reach 0 exactly.
_COST_FLOOR = 1e-9

Objective = Callable[[np.ndarray], float]
Callback = Optional[Callable[[int, np.ndarray, float, bool], None]]


@dataclass
class GDConfig:
    """Finite-difference gradient descent settings."""

    learning_rate: float
    fd_step: float = 0.01
    restart_norm: float = 0.8
    budget: int = 1024
    cutoff: float = -9.0

    @classmethod
    def for_ansatz(cls, family: str, variant: str, **overrides) -> "GDConfig":
        rate = GD_LEARNING_RATES[(normalize_family(family), variant.upper())]
        return cls(learning_rate=overrides.pop("learning_rate", rate), **overrides)


@dataclass
class NMConfig:
    """Nelder-Mead settings: simplex build rule, restart spread, budget."""

    amplification: float
    zero_component_value: float = 0.8
    restart_spread: float = 0.15
    budget: int = 1024
    cutoff: float = -9.0

    @classmethod
    def for_ansatz(cls, family: str, variant: str, **overrides) -> "NMConfig":
        alpha = NM_AMPLIFICATIONS[(normalize_family(family), variant.upper())]
        return cls(amplification=overrides.pop("amplification", alpha), **overrides)


@dataclass
class OptimizerOutcome:
    best_params: np.ndarray
    best_value: float
    iterations: int
    evaluations: int
    restarts: int
    reached_cutoff: bool


def fd_gradient(objective: Objective, x: np.ndarray, base_value: float, step: float = 0.01) -> np.ndarray:
    """Forward-difference gradient; consumes exactly len(x) objective calls."""
    x = np.asarray(x, dtype=float)
    grad = np.empty(x.size)
    for i in range(x.size):
        probe = x.copy()
        probe[i] += step
        grad[i] = (float(objective(probe)) - base_value) / step
    return grad


def gd_minimize(
    objective: Objective,
    x0: np.ndarray,
    config: GDConfig,
    seed=0,
    callback: Callback = None,
) -> OptimizerOutcome:
    """Gradient descent with a stochastic decaying step term and random restarts.

    Each outer iteration costs 1 + d evaluations (value plus forward
    differences). The step is (rate/|cost| + ln(times)/times * u) * grad with
    u ~ U[0,1) and times the running evaluation count. After the update, a
    gradient norm below `restart_norm` reinitialises the point uniformly in
    [0, 2*pi)^d. The run stops when an iteration's value drops below `cutoff`
    or the evaluation budget is exhausted (truncating mid-gradient if needed).
    """
    rng = np.random.default_rng(seed)
    x = np.array(x0, dtype=float)
    d = x.size
    evaluations = 0
    iterations = 0
    restarts = 0
    best_value = np.inf
    best_params = x.copy()
    reached_cutoff = False

    def evaluate(point: np.ndarray) -> float:
        nonlocal evaluations, best_value, best_params
        value = float(objective(point))
        evaluations += 1
        if value < best_value:
            best_value = value
            best_params = point.copy()
        return value

    while evaluations < config.budget:
        iterations += 1
        current = x.copy()
        cost = evaluate(current)
        if cost < config.cutoff:
            reached_cutoff = True
            if callback is not None:
                callback(iterations, current, cost, False)
            break

        grad = np.zeros(d)
        truncated = False
        for i in range(d):
            if evaluations >= config.budget:
                truncated = True
                break
            probe = current.copy()
            probe[i] += config.fd_step
            grad[i] = (evaluate(probe) - cost) / config.fd_step
        if truncated:
            if callback is not None:
                callback(iterations, current, cost, False)
            break

        u = rng.uniform()
        scale = config.learning_rate / max(abs(cost), _COST_FLOOR)
        scale += np.log(evaluations) / evaluations * u
        x = x - scale * grad

        restarted = False
        if np.linalg.norm(grad) < config.restart_norm:
            x = rng.uniform(0.0, 2.0 * np.pi, d)
            restarts += 1
            restarted = True
        if callback is not None:
            callback(iterations, current, cost, restarted)

    return OptimizerOutcome(best_params, best_value, iterations, evaluations, restarts, reached_cutoff)


def initial_simplex(x0: np.ndarray, amplification: float, zero_value: float = 0.8) -> list[np.ndarray]:
    """d+1 points: vertex i scales coordinate i by `amplification`, or sets it
    to `zero_value` when that coordinate is zero."""
    x0 = np.asarray(x0, dtype=float)
    points = [x0.copy()]
    for i in range(x0.size):
        p = x0.copy()
        p[i] = amplification * p[i] if p[i] != 0.0 else zero_value
        points.append(p)
    return points


def nm_minimize(
    objective: Objective,
    x0: np.ndarray,
    config: NMConfig,
    seed=0,
    callback: Callback = None,
) -> OptimizerOutcome:
    """Nelder-Mead with reflect/expand/contract/shrink moves and spread restarts.

    Points are kept sorted ascending by cached value (stable ties). Per pass:
    stop if the best value is <= cutoff; restart from a fresh random point when
    worst - best < `restart_spread`; otherwise reflect the worst point through
    the centroid of the rest and take one branch:

    - accept the reflection if second-best <= f(r) < second-worst,
    - expand (factor 2) if f(r) beats the second-best, keeping the better,
    - contract halfway outside if f(r) sits between the two worst, shrinking
      the whole simplex toward the best point if the contraction fails,
    - contract halfway inside if f(r) is worst of all, shrinking on failure.

    A shrink costs d evaluations, a restart d+1; every evaluation is charged
    against the shared budget and the run truncates the moment it runs out.
    """
    rng = np.random.default_rng(seed)
    start = np.array(x0, dtype=float)
    d = start.size
    evaluations = 0
    iterations = 0
    restarts = 0
    best_value = np.inf
    best_params = start.copy()
    reached_cutoff = False
    exhausted = False

    def evaluate(point: np.ndarray) -> float:
        nonlocal evaluations, best_value, best_params
        value = float(objective(point))
        evaluations += 1
        if value < best_value:
            best_value = value
            best_params = point.copy()
        return value

    def build_simplex(center: np.ndarray) -> tuple[list[np.ndarray], list[float]]:
        nonlocal exhausted
        points = initial_simplex(center, config.amplification, config.zero_component_value)
        values = []
        for p in points:
            if evaluations >= config.budget:
                exhausted = True
                break
            values.append(evaluate(p))
        return points[: len(values)], values

    def guarded(point: np.ndarray) -> float | None:
        nonlocal exhausted
        if evaluations >= config.budget:
            exhausted = True
            return None
        return evaluate(point)

    points, values = build_simplex(start)
    if not exhausted:
        while evaluations < config.budget:
            order = sorted(range(len(points)), key=values.__getitem__)
            points = [points[k] for k in order]
            values = [values[k] for k in order]
            iterations += 1

            if values[0] <= config.cutoff:
                reached_cutoff = True
                if callback is not None:
                    callback(iterations, points[0], values[0], False)
                break

            if values[-1] - values[0] < config.restart_spread:
                if callback is not None:
                    callback(iterations, points[0], values[0], True)
                restarts += 1
                points, values = build_simplex(rng.uniform(0.0, 2.0 * np.pi, d))
                if exhausted:
                    break
                continue

            centroid = np.mean(points[:-1], axis=0)
            worst = points[-1]
            reflect = 2.0 * centroid - worst
            f_r = guarded(reflect)
            if f_r is None:
                if callback is not None:
                    callback(iterations, points[0], values[0], False)
                break

            if values[1] <= f_r < values[-2]:
                points[-1] = reflect
                values[-1] = f_r
            elif f_r < values[1]:
                expand = centroid + 2.0 * (centroid - worst)
                f_s = guarded(expand)
                if f_s is None:
                    if callback is not None:
                        callback(iterations, points[0], values[0], False)
                    break
                if f_s < f_r:
                    points[-1] = expand
                    values[-1] = f_s
                else:
                    points[-1] = reflect
                    values[-1] = f_r
            else:
                if values[-2] <= f_r < values[-1]:
                    contract = centroid + (reflect - centroid) / 2.0
                    threshold = f_r
                else:
                    contract = centroid + (worst - centroid) / 2.0
                    threshold = values[-1]
                f_c = guarded(contract)
                if f_c is None:
                    if callback is not None:
                        callback(iterations, points[0], values[0], False)
                    break
                if f_c < threshold:
                    points[-1] = contract
                    values[-1] = f_c
                else:
                    for i in range(1, len(points)):
                        shrunk = points[0] + (points[i] - points[0]) / 2.0
                        f_v = guarded(shrunk)
                        if f_v is None:
                            break
                        points[i] = shrunk
                        values[i] = f_v
                    if exhausted:
                        if callback is not None:
                            callback(iterations, points[0], values[0], False)
                        break

            if callback is not None:
                callback(iterations, points[0], values[0], False)

    return OptimizerOutcome(best_params, best_value, iterations, evaluations, restarts, reached_cutoff)
