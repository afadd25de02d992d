"""Discrete-time stochastic SIR dynamics on a (partially immunized) graph.

Synchronous update per step, both transitions evaluated from the step-start
state: every infected node tries to infect each susceptible neighbor with
probability alpha (a susceptible with k infected neighbors escapes with
probability (1-alpha)^k), then every node infected at step start recovers
with probability beta. Immunized nodes are outside the dynamics entirely:
they never change state, never transmit, and by default are excluded from
the reported fractions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, NodeMask
from .validation import check_graph, check_mask, check_probability


class SirConfigurationError(ValueError):
    """The run is impossible as configured (no active nodes, bad seed node)."""


@dataclass(frozen=True)
class SirParams:
    """Per-step probabilities and run policy for one SIR simulation.

    ``initial_infected`` pins the index of the seed node; None draws it
    uniformly among active nodes. ``normalization`` selects the denominator
    of the reported fractions: "active" (non-immunized nodes, the default)
    or "total" (all nodes, for cross-immunization-level comparisons).
    """

    alpha: float
    beta: float
    max_steps: int = 1000
    initial_infected: int | None = None
    normalization: str = "active"

    def __post_init__(self):
        check_probability(self.alpha, "alpha")
        check_probability(self.beta, "beta")
        if self.beta <= 0:
            raise ValueError("beta must be positive (recovery never happens otherwise)")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.normalization not in ("active", "total"):
            raise ValueError(
                f"normalization must be 'active' or 'total', got {self.normalization!r}"
            )

    @property
    def spreading_rate(self) -> float:
        """lambda = alpha / beta."""
        return self.alpha / self.beta


@dataclass(frozen=True, eq=False)
class SirTrace:
    """Per-step fractions S(t), I(t), R(t) for one run (t = 0 .. steps)."""

    s: np.ndarray
    i: np.ndarray
    r: np.ndarray
    extinction_step: int | None
    initial_node: int
    active_count: int
    ever_infected: int
    params: SirParams

    @property
    def steps(self) -> int:
        return len(self.s) - 1


def sir_run(
    graph: Graph,
    immunized: NodeMask | None,
    params: SirParams,
    rng: np.random.Generator | int,
) -> SirTrace:
    """Simulate one SIR epidemic and return its trace.

    Starts from exactly one infected node and runs until extinction
    (no infected nodes left) or ``params.max_steps``.
    """
    check_graph(graph)
    mask = check_mask(graph, immunized)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)

    active = ~mask.removed
    n_active = int(active.sum())
    if n_active == 0:
        raise SirConfigurationError("no active nodes: everything is immunized")

    if params.initial_infected is not None:
        seed_node = int(params.initial_infected)
        if not 0 <= seed_node < graph.node_count:
            raise SirConfigurationError(f"initial infected node {seed_node} out of range")
        if not active[seed_node]:
            raise SirConfigurationError(f"initial infected node {seed_node} is immunized")
    else:
        seed_node = int(rng.choice(np.flatnonzero(active)))

    denom = n_active if params.normalization == "active" else graph.node_count
    adjacency = graph.adjacency_matrix()

    susceptible = active.copy()
    susceptible[seed_node] = False
    infected = np.zeros(graph.node_count, dtype=bool)
    infected[seed_node] = True
    recovered = np.zeros(graph.node_count, dtype=bool)

    s_frac = [float(susceptible.sum() / denom)]
    i_frac = [float(infected.sum() / denom)]
    r_frac = [0.0]
    extinction_step: int | None = None
    ever_infected = 1

    for t in range(1, params.max_steps + 1):
        infected_counts = adjacency @ infected.astype(np.int64)
        sus_idx = np.flatnonzero(susceptible)
        p_infect = 1.0 - (1.0 - params.alpha) ** infected_counts[sus_idx]
        newly_infected = sus_idx[rng.random(sus_idx.size) < p_infect]

        inf_idx = np.flatnonzero(infected)
        recovering = inf_idx[rng.random(inf_idx.size) < params.beta]

        susceptible[newly_infected] = False
        infected[newly_infected] = True
        infected[recovering] = False
        recovered[recovering] = True
        ever_infected += len(newly_infected)

        s_frac.append(float(susceptible.sum() / denom))
        i_frac.append(float(infected.sum() / denom))
        r_frac.append(float(recovered.sum() / denom))
        if not infected.any():
            extinction_step = t
            break

    return SirTrace(
        s=np.array(s_frac),
        i=np.array(i_frac),
        r=np.array(r_frac),
        extinction_step=extinction_step,
        initial_node=seed_node,
        active_count=n_active,
        ever_infected=ever_infected,
        params=params,
    )


@dataclass(frozen=True, eq=False)
class SirEnsemble:
    """Per-seed traces plus their per-step mean, padded to the longest run.

    Runs that go extinct early are extended with their terminal state, so the
    mean at time t averages every seed's state at t.
    """

    traces: list[SirTrace]
    seeds: tuple[int, ...]
    mean_s: np.ndarray
    mean_i: np.ndarray
    mean_r: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.mean_s) - 1


def _pad_terminal(values: np.ndarray, length: int) -> np.ndarray:
    if len(values) >= length:
        return values[:length]
    return np.concatenate([values, np.full(length - len(values), values[-1])])


def sir_ensemble(
    graph: Graph,
    immunized: NodeMask | None,
    params: SirParams,
    seeds: list[int],
) -> SirEnsemble:
    """Run one SIR simulation per seed and aggregate the mean trajectory."""
    if not seeds:
        raise ValueError("at least one seed is required")
    traces = [sir_run(graph, immunized, params, seed) for seed in seeds]
    horizon = max(len(t.s) for t in traces)
    stacked = {
        name: np.stack([_pad_terminal(getattr(t, name), horizon) for t in traces])
        for name in ("s", "i", "r")
    }
    return SirEnsemble(
        traces=traces,
        seeds=tuple(int(s) for s in seeds),
        mean_s=stacked["s"].mean(axis=0),
        mean_i=stacked["i"].mean(axis=0),
        mean_r=stacked["r"].mean(axis=0),
    )
