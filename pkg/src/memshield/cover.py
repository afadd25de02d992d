"""Overlapping community covers and their summary statistics.

A cover is a list of node sets that may share nodes. Per node we track the
membership number m (how many communities contain it); nodes with m >= 2 form
the overlap region. All statistics are reported as cumulative distributions
p(v) = fraction of observations >= v.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import Graph


class CommunityFileError(ValueError):
    """A community file line referenced an unknown node label (strict mode)."""

    def __init__(self, line_number: int, message: str, source: str | None = None):
        where = f"{source}:{line_number}" if source else f"line {line_number}"
        super().__init__(f"{where}: {message}")
        self.line_number = line_number
        self.message = message


class CommunityCover:
    """Ground-truth overlapping community cover over a graph's node indices.

    Communities are stored as sorted index arrays. ``membership[i]`` counts
    the communities containing node i (0 for nodes outside every community).
    """

    def __init__(self, communities: list[np.ndarray], n_nodes: int, *,
                 dropped_labels: int = 0, discarded_empty: int = 0):
        cleaned: list[np.ndarray] = []
        membership = np.zeros(n_nodes, dtype=np.int64)
        for members in communities:
            arr = np.unique(np.asarray(members, dtype=np.int64))
            if arr.size == 0:
                raise ValueError("communities must be non-empty")
            if arr[0] < 0 or arr[-1] >= n_nodes:
                raise ValueError("community member index out of range")
            membership[arr] += 1
            cleaned.append(arr)
        self.communities: list[np.ndarray] = cleaned
        self.membership: np.ndarray = membership
        self.dropped_labels = dropped_labels
        self.discarded_empty = discarded_empty

    @property
    def community_count(self) -> int:
        return len(self.communities)

    @property
    def overlap_nodes(self) -> np.ndarray:
        """Indices of nodes belonging to at least two communities."""
        return np.flatnonzero(self.membership >= 2)

    @property
    def overlap_node_count(self) -> int:
        return int((self.membership >= 2).sum())

    @property
    def max_membership(self) -> int:
        return int(self.membership.max()) if len(self.membership) else 0

    def membership_number(self, i: int) -> int:
        """Number of communities containing node ``i`` (0 if in none)."""
        return int(self.membership[i])

    def community_size(self, k: int) -> int:
        if not 0 <= k < self.community_count:
            raise IndexError(
                f"community index {k} out of range [0, {self.community_count})"
            )
        return int(len(self.communities[k]))

    def overlap_size(self, i: int, j: int) -> int:
        """Number of nodes shared by communities ``i`` and ``j`` (i != j)."""
        if i == j:
            raise ValueError("overlap size is defined for two distinct communities")
        for k in (i, j):
            if not 0 <= k < self.community_count:
                raise IndexError(
                    f"community index {k} out of range [0, {self.community_count})"
                )
        return int(len(np.intersect1d(self.communities[i], self.communities[j])))

    def membership_classes(self) -> dict[int, np.ndarray]:
        """Disjoint node sets keyed by membership number m >= 1."""
        classes: dict[int, np.ndarray] = {}
        for m in range(1, self.max_membership + 1):
            nodes = np.flatnonzero(self.membership == m)
            if nodes.size:
                classes[m] = nodes
        return classes

    def community_nodes(self) -> np.ndarray:
        """Indices of all nodes appearing in at least one community."""
        return np.flatnonzero(self.membership >= 1)

    def __repr__(self) -> str:
        return (
            f"CommunityCover(communities={self.community_count}, "
            f"overlap_nodes={self.overlap_node_count})"
        )


def parse_community_file(
    lines: Iterable[str], graph: Graph, *, unknown_labels: str = "strict"
) -> CommunityCover:
    """Parse one community per line (whitespace-separated node labels).

    ``unknown_labels`` is "strict" (raise on a label absent from the graph)
    or "drop" (skip the label and count it). A community left empty after
    drops is discarded with a count. Blank and ``#`` comment lines are
    skipped.
    """
    if unknown_labels not in ("strict", "drop"):
        raise ValueError(f"unknown_labels must be 'strict' or 'drop', got {unknown_labels!r}")
    communities: list[np.ndarray] = []
    dropped = 0
    discarded = 0
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        members: list[int] = []
        for label in line.split():
            try:
                members.append(graph.index_of(label))
            except KeyError:
                if unknown_labels == "strict":
                    raise CommunityFileError(
                        line_number, f"node label {label!r} not present in graph"
                    ) from None
                dropped += 1
        if not members:
            discarded += 1
            continue
        communities.append(np.array(members, dtype=np.int64))
    return CommunityCover(
        communities,
        graph.node_count,
        dropped_labels=dropped,
        discarded_empty=discarded,
    )


def load_community_file(path, graph: Graph, *, unknown_labels: str = "strict") -> CommunityCover:
    """Parse a community file from disk; parse errors name the file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return parse_community_file(fh, graph, unknown_labels=unknown_labels)
        except CommunityFileError as exc:
            raise CommunityFileError(exc.line_number, exc.message, source=str(path)) from None


@dataclass(frozen=True)
class CumulativeDistribution:
    """p(v) = fraction of observations >= v, over ascending distinct values."""

    support: np.ndarray
    p: np.ndarray

    def __len__(self) -> int:
        return len(self.support)

    def rows(self) -> list[tuple[int, float]]:
        return [(int(v), float(q)) for v, q in zip(self.support, self.p)]


def cumulative_distribution(values) -> CumulativeDistribution:
    """Empirical complementary cumulative distribution of a multiset of counts."""
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if arr.size == 0:
        raise ValueError("cannot compute a cumulative distribution of no observations")
    support, counts = np.unique(arr, return_counts=True)
    # observations >= v, for each distinct v in ascending order
    tail = counts[::-1].cumsum()[::-1]
    return CumulativeDistribution(support=support, p=tail / arr.size)


def nonzero_overlap_sizes(cover: CommunityCover) -> np.ndarray:
    """Overlap sizes |C_i & C_j| over all community pairs sharing >= 1 node.

    Enumerates via node->community incidence so only pairs with a non-zero
    overlap are ever touched (all-pairs intersection is infeasible at tens of
    thousands of communities).
    """
    node_comms: dict[int, list[int]] = {}
    for k, members in enumerate(cover.communities):
        for i in members[cover.membership[members] >= 2]:
            node_comms.setdefault(int(i), []).append(k)
    pair_counts: Counter[tuple[int, int]] = Counter()
    for comms in node_comms.values():
        for a, b in combinations(comms, 2):
            pair_counts[(a, b)] += 1
    return np.array(sorted(pair_counts.values()), dtype=np.int64)


@dataclass
class OverlapStatistics:
    """The four cover distributions plus scalar summary.

    Distributions are None when their underlying multiset is empty (a cover
    with no overlap has no overlap-node degrees and no overlap sizes).
    """

    overlap_degree: CumulativeDistribution | None
    community_size: CumulativeDistribution | None
    membership: CumulativeDistribution | None
    overlap_size: CumulativeDistribution | None
    community_count: int
    overlap_node_count: int
    max_membership: int

    @property
    def has_overlap(self) -> bool:
        return self.overlap_node_count > 0


def overlap_statistics(graph: Graph, cover: CommunityCover) -> OverlapStatistics:
    """Compute degree-of-overlap-node, community-size, membership, and
    overlap-size cumulative distributions for a cover over ``graph``."""
    if len(cover.membership) != graph.node_count:
        raise ValueError("cover does not match graph size")

    overlap = cover.overlap_nodes
    degrees = graph.degrees()
    d_ov = cumulative_distribution(degrees[overlap]) if overlap.size else None

    sizes = np.array([len(c) for c in cover.communities], dtype=np.int64)
    s = cumulative_distribution(sizes) if sizes.size else None

    community_nodes = cover.community_nodes()
    m = (
        cumulative_distribution(cover.membership[community_nodes])
        if community_nodes.size
        else None
    )

    s_ov_values = nonzero_overlap_sizes(cover)
    s_ov = cumulative_distribution(s_ov_values) if s_ov_values.size else None

    return OverlapStatistics(
        overlap_degree=d_ov,
        community_size=s,
        membership=m,
        overlap_size=s_ov,
        community_count=cover.community_count,
        overlap_node_count=int(overlap.size),
        max_membership=cover.max_membership,
    )
