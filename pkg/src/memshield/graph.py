"""Undirected simple graph with masked connectivity queries.

The graph is loaded once from an edge list and never mutated. Node removal
(immunization) is expressed as a :class:`NodeMask` overlay, so many removal
schedules can share one in-memory graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


class EdgeListParseError(ValueError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, line_number: int, message: str, source: str | None = None):
        where = f"{source}:{line_number}" if source else f"line {line_number}"
        super().__init__(f"{where}: {message}")
        self.line_number = line_number
        self.message = message


class Graph:
    """Undirected simple graph over dense node indices ``0..N-1``.

    External node identifiers are opaque string labels; internal indices are
    assigned in first-appearance order at parse time. Self-loops and parallel
    edges are rejected at construction (the loader drops and counts them).
    """

    def __init__(
        self,
        labels: list[str],
        edges: np.ndarray,
        *,
        self_loops_dropped: int = 0,
        duplicate_edges_dropped: int = 0,
    ):
        self.labels: tuple[str, ...] = tuple(labels)
        self._index: dict[str, int] = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("duplicate node labels")
        n = len(self.labels)

        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (edges[:, 0] == edges[:, 1]).any():
                raise ValueError("self-loop in edge array")
            canon = np.sort(edges, axis=1)
            if len(np.unique(canon, axis=0)) != len(canon):
                raise ValueError("duplicate edge in edge array")
        self._edges = edges

        # CSR adjacency, neighbor lists sorted for deterministic iteration.
        heads = np.concatenate([edges[:, 0], edges[:, 1]])
        tails = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((tails, heads))
        self._indices = tails[order].astype(np.int32)
        counts = np.bincount(heads, minlength=n)
        self._indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

        self.self_loops_dropped = self_loops_dropped
        self.duplicate_edges_dropped = duplicate_edges_dropped
        self._matrix: sparse.csr_matrix | None = None

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> np.ndarray:
        """Edge array of shape (edge_count, 2), one row per undirected edge."""
        return self._edges.copy()

    def index_of(self, label: str) -> int:
        return self._index[label]

    def degree(self, i: int) -> int:
        """Number of neighbors of node ``i``."""
        self._check_index(i)
        return int(self._indptr[i + 1] - self._indptr[i])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor indices of node ``i`` (read-only view)."""
        self._check_index(i)
        return self._indices[self._indptr[i] : self._indptr[i + 1]]

    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency in CSR form (built once, then cached)."""
        if self._matrix is None:
            n = self.node_count
            data = np.ones(len(self._indices), dtype=np.int32)
            self._matrix = sparse.csr_matrix(
                (data, self._indices.astype(np.int64), self._indptr), shape=(n, n)
            )
        return self._matrix

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.node_count:
            raise IndexError(f"node index {i} out of range [0, {self.node_count})")

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass
class NodeMask:
    """Boolean removal overlay for a graph; True marks a removed node."""

    removed: np.ndarray

    def __post_init__(self):
        self.removed = np.asarray(self.removed, dtype=bool)

    @classmethod
    def none(cls, n: int) -> "NodeMask":
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def of(cls, n: int, removed_indices: Iterable[int]) -> "NodeMask":
        removed = np.zeros(n, dtype=bool)
        idx = np.asarray(list(removed_indices), dtype=np.int64)
        if idx.size:
            removed[idx] = True
        return cls(removed)

    @property
    def removed_count(self) -> int:
        return int(self.removed.sum())

    def __len__(self) -> int:
        return len(self.removed)


def parse_edge_list(lines: Iterable[str]) -> Graph:
    """Parse a whitespace-separated edge list into a :class:`Graph`.

    One edge per line as two node labels; ``#`` starts a comment line; blank
    lines are skipped. Self-loops and repeated edges are dropped and counted
    on the returned graph. Empty input yields an empty graph.

    Raises :class:`EdgeListParseError` on lines with other than two tokens.
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def intern(label: str) -> int:
        i = index.get(label)
        if i is None:
            i = len(labels)
            index[label] = i
            labels.append(label)
        return i

    edge_set: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0
    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                line_number, f"expected 2 node labels, got {len(parts)}: {line!r}"
            )
        u, v = intern(parts[0]), intern(parts[1])
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edge_set:
            duplicates += 1
        else:
            edge_set.add(key)

    edges = np.array(sorted(edge_set), dtype=np.int64).reshape(-1, 2)
    return Graph(
        labels,
        edges,
        self_loops_dropped=self_loops,
        duplicate_edges_dropped=duplicates,
    )


def load_edge_list(path) -> Graph:
    """Parse an edge-list file from disk; parse errors name the file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return parse_edge_list(fh)
        except EdgeListParseError as exc:
            raise EdgeListParseError(exc.line_number, exc.message, source=str(path)) from None


def write_edge_list(graph: Graph, stream: TextIO) -> None:
    """Serialize the graph as one ``label label`` line per edge.

    Isolated nodes are not representable in this format and are omitted.
    """
    for u, v in graph.edges():
        stream.write(f"{graph.labels[u]} {graph.labels[v]}\n")


def _active_indices(graph: Graph, mask: NodeMask | None) -> np.ndarray:
    if mask is None:
        return np.arange(graph.node_count)
    if len(mask) != graph.node_count:
        raise ValueError(
            f"mask length {len(mask)} does not match node count {graph.node_count}"
        )
    return np.flatnonzero(~mask.removed)


def connected_components(graph: Graph, mask: NodeMask | None = None) -> list[int]:
    """Component sizes of the subgraph induced on non-removed nodes.

    Returned in descending order; sizes sum to the number of active nodes.
    """
    keep = _active_indices(graph, mask)
    if keep.size == 0:
        return []
    sub = graph.adjacency_matrix()[keep][:, keep]
    _, labels = csgraph.connected_components(sub, directed=False)
    sizes = np.bincount(labels)
    return sorted((int(s) for s in sizes), reverse=True)


def lcc_size(graph: Graph, mask: NodeMask | None = None) -> int:
    """Size of the largest connected component under the removal mask."""
    sizes = connected_components(graph, mask)
    return sizes[0] if sizes else 0
