"""Immunization strategies producing node-removal orders.

Each strategy is a small estimator: hyperparameters in ``__init__`` (so
``get_params``/``clone`` work), the removal order computed by ``fit`` and
exposed as the fitted attribute ``order_``. Given the same graph, cover,
parameters, and seed, every strategy is fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from sklearn.base import BaseEstimator

from .cover import CommunityCover
from .graph import Graph, NodeMask
from .validation import check_cover, check_fraction, check_graph, check_seed


@dataclass(frozen=True, eq=False)
class ImmunizationOrder:
    """A strategy's removal sequence plus the metadata to reproduce it."""

    strategy: str
    sequence: np.ndarray
    seed: int
    params: Mapping[str, object] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        seq = np.asarray(self.sequence, dtype=np.int64)
        if len(np.unique(seq)) != len(seq):
            raise ValueError("removal sequence contains duplicate nodes")
        object.__setattr__(self, "sequence", seq)

    def __len__(self) -> int:
        return len(self.sequence)


def apply_order(graph: Graph, order: ImmunizationOrder, fraction: float) -> NodeMask:
    """Mask removing the first ``floor(fraction * N)`` nodes of the order.

    The count is capped at the sequence length, so fractions past the point
    where a strategy ran out of nodes leave the mask unchanged.
    """
    check_graph(graph)
    fraction = check_fraction(fraction)
    if len(order.sequence) and int(order.sequence.max()) >= graph.node_count:
        raise ValueError("order references nodes outside this graph")
    k = min(math.floor(fraction * graph.node_count), len(order.sequence))
    return NodeMask.of(graph.node_count, order.sequence[:k])


class ImmunizationStrategy(BaseEstimator):
    """Base class for removal-order estimators.

    Subclasses implement ``_compute_order`` returning (sequence, flags).
    ``fit(graph, cover)`` validates inputs, runs the strategy with a
    generator seeded from ``self.seed``, and stores ``order_``.
    """

    name: str = ""
    requires_cover = False

    def fit(self, graph: Graph, cover: CommunityCover | None = None):
        check_graph(graph)
        check_seed(self.seed)
        if cover is not None:
            cover = check_cover(graph, cover)
        elif self.requires_cover:
            raise ValueError(f"{self.name} requires a community cover")
        rng = np.random.default_rng(self.seed)
        sequence, flags = self._compute_order(graph, cover, rng)
        self.order_ = ImmunizationOrder(
            strategy=self.name,
            sequence=sequence,
            seed=self.seed,
            params=self._order_params(),
            flags=flags,
        )
        self.n_nodes_ = graph.node_count
        return self

    def _compute_order(self, graph, cover, rng):
        raise NotImplementedError

    def _order_params(self) -> dict:
        params = self.get_params()
        params.pop("seed", None)
        return params

    @property
    def sequence_(self) -> np.ndarray:
        return self.order_.sequence

    def mask(self, fraction: float) -> NodeMask:
        """Removal mask for the fitted order at the given fraction."""
        if not hasattr(self, "order_"):
            raise ValueError("strategy is not fitted; call fit(graph, cover) first")
        fraction = check_fraction(fraction)
        k = min(math.floor(fraction * self.n_nodes_), len(self.order_.sequence))
        return NodeMask.of(self.n_nodes_, self.order_.sequence[:k])


class _MembershipOrdered(ImmunizationStrategy):
    """Shared machinery for the two membership-sorted strategies.

    Orders exactly the nodes with membership >= 1 (the strategies halt once
    community nodes are exhausted). Ties inside an equal-membership block are
    broken by a seeded shuffle, or left in index order with
    ``tie_break="stable"`` for exact reproducibility checks.
    """

    requires_cover = True
    descending = True

    def __init__(self, seed: int = 0, tie_break: str = "shuffle"):
        self.seed = seed
        self.tie_break = tie_break

    def _compute_order(self, graph, cover, rng):
        if self.tie_break not in ("shuffle", "stable"):
            raise ValueError(f"tie_break must be 'shuffle' or 'stable', got {self.tie_break!r}")
        classes = cover.membership_classes()
        if not classes:
            return np.empty(0, dtype=np.int64), ("no_community_nodes",)
        blocks = []
        for m in sorted(classes, reverse=self.descending):
            block = classes[m].copy()
            if self.tie_break == "shuffle":
                rng.shuffle(block)
            blocks.append(block)
        return np.concatenate(blocks), ()


class HighMembershipFirst(_MembershipOrdered):
    """Remove community nodes in decreasing membership-number order."""

    name = "hlmi"
    descending = True


class LowMembershipFirst(_MembershipOrdered):
    """Remove community nodes in increasing membership-number order."""

    name = "lhmi"
    descending = False


class RandomAcquaintance(ImmunizationStrategy):
    """Immunize the random neighbor of a random node once selected n times.

    Repeatedly picks a uniform random node with at least one neighbor, then a
    uniform random neighbor of it; that neighbor's selection counter is
    incremented, and the node is immunized the first time its counter reaches
    ``threshold``. Counters accumulate globally across draws. With
    ``threshold=1`` every selected acquaintance is immunized immediately.
    """

    name = "random_acquaintance"

    def __init__(
        self,
        threshold: int = 1,
        budget: int | None = None,
        seed: int = 0,
        max_draws_factor: int = 1000,
    ):
        self.threshold = threshold
        self.budget = budget
        self.seed = seed
        self.max_draws_factor = max_draws_factor

    def _compute_order(self, graph, cover, rng):
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        n = graph.node_count
        budget = n if self.budget is None else min(int(self.budget), n)
        degrees = graph.degrees()
        pool = np.flatnonzero(degrees > 0)
        if pool.size == 0 or budget == 0:
            flags = ("no_edges",) if pool.size == 0 else ()
            return np.empty(0, dtype=np.int64), flags

        counters = np.zeros(n, dtype=np.int64)
        immunized = np.zeros(n, dtype=bool)
        sequence: list[int] = []
        max_draws = self.max_draws_factor * n
        draws = 0
        while len(sequence) < budget and draws < max_draws:
            draws += 1
            node = pool[rng.integers(pool.size)]
            neighbors = graph.neighbors(node)
            pick = int(neighbors[rng.integers(neighbors.size)])
            counters[pick] += 1
            if counters[pick] >= self.threshold and not immunized[pick]:
                immunized[pick] = True
                sequence.append(pick)
        flags = ("draw_cap_reached",) if len(sequence) < budget else ()
        return np.array(sequence, dtype=np.int64), flags


class CommunityBridgeFinder(ImmunizationStrategy):
    """Random-walk search for nodes that bridge back to one visited node.

    Walks start at a uniform random node and move to a uniform random
    neighbor, never the immediate predecessor unless it is the only option.
    When the walk, after at least two steps, reaches a node it has not
    visited before, that node is checked: if it has exactly one edge into the
    walk's previously visited nodes it is immunized and the walk restarts.
    Revisited nodes are never candidates. Walks restart without immunizing
    when they exceed ``max_walk_steps``; a global step cap bounds the whole
    search.
    """

    name = "cbf"

    def __init__(
        self,
        budget: int | None = None,
        seed: int = 0,
        max_walk_steps: int = 100,
        max_total_steps_factor: int = 1000,
    ):
        self.budget = budget
        self.seed = seed
        self.max_walk_steps = max_walk_steps
        self.max_total_steps_factor = max_total_steps_factor

    def _compute_order(self, graph, cover, rng):
        n = graph.node_count
        budget = n if self.budget is None else min(int(self.budget), n)
        pool = np.flatnonzero(graph.degrees() > 0)
        if pool.size == 0 or budget == 0:
            flags = ("no_edges",) if pool.size == 0 else ()
            return np.empty(0, dtype=np.int64), flags

        immunized = np.zeros(n, dtype=bool)
        sequence: list[int] = []
        step_cap = self.max_total_steps_factor * n
        total_steps = 0
        while len(sequence) < budget and total_steps < step_cap:
            current = int(pool[rng.integers(pool.size)])
            visited = {current}
            previous = -1
            for _ in range(self.max_walk_steps):
                if total_steps >= step_cap:
                    break
                neighbors = graph.neighbors(current)
                if neighbors.size > 1 and previous >= 0:
                    choices = neighbors[neighbors != previous]
                else:
                    choices = neighbors
                if choices.size == 0:
                    break
                nxt = int(choices[rng.integers(choices.size)])
                total_steps += 1
                if nxt not in visited:
                    # len(visited) >= 2 iff the walk has taken >= 2 steps
                    if len(visited) >= 2:
                        links_back = int(np.isin(graph.neighbors(nxt), list(visited)).sum())
                        if links_back == 1:
                            if not immunized[nxt]:
                                immunized[nxt] = True
                                sequence.append(nxt)
                            break
                    visited.add(nxt)
                previous, current = current, nxt
        flags = ("step_cap_reached",) if len(sequence) < budget else ()
        return np.array(sequence, dtype=np.int64), flags


STRATEGY_CLASSES: dict[str, type[ImmunizationStrategy]] = {
    cls.name: cls
    for cls in (
        HighMembershipFirst,
        LowMembershipFirst,
        RandomAcquaintance,
        CommunityBridgeFinder,
    )
}
