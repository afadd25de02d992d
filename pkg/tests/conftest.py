import os
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from memshield import Graph, parse_community_file, parse_edge_list

REPO_ROOT = Path(__file__).resolve().parents[1]

PGP_NODES = 81036
PGP_EDGES = 190143
PGP_GROUPS = 17824


def pgp_data_dir() -> Path | None:
    """Directory holding the PGP ground-truth dataset, if present.

    Expected files: edges.txt (edge list) and groups.txt (one community per
    line). Location: $MEMSHIELD_PGP_DIR, else <repo>/data/pgp.
    """
    env = os.environ.get("MEMSHIELD_PGP_DIR")
    candidates = [Path(env)] if env else []
    candidates.append(REPO_ROOT / "data" / "pgp")
    for cand in candidates:
        if (cand / "edges.txt").is_file() and (cand / "groups.txt").is_file():
            return cand
    return None


def require_pgp() -> Path:
    path = pgp_data_dir()
    if path is None:
        pytest.skip(
            "PGP ground-truth dataset not available; place edges.txt and "
            "groups.txt under data/pgp/ or set MEMSHIELD_PGP_DIR"
        )
    return path


def clique_edges(labels) -> list[str]:
    return [f"{a} {b}" for a, b in combinations(labels, 2)]


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Erdos-Renyi style test graph with string labels 0..n-1."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph([str(i) for i in range(n)], np.array(edges, dtype=np.int64).reshape(-1, 2))


@pytest.fixture
def two_cliques():
    """Two 5-cliques sharing node '5'; each clique is one community."""
    a = [str(i) for i in range(1, 6)]
    b = [str(i) for i in range(5, 10)]
    graph = parse_edge_list(clique_edges(a) + clique_edges(b))
    cover = parse_community_file([" ".join(a), " ".join(b)], graph)
    return graph, cover


@pytest.fixture
def star10():
    """Star with hub 'h' and 10 leaves."""
    return parse_edge_list([f"h l{i}" for i in range(10)])


@pytest.fixture
def star5():
    return parse_edge_list([f"h l{i}" for i in range(5)])


@pytest.fixture
def triangle():
    return parse_edge_list(["a b", "b c", "c a"])


@pytest.fixture
def path5():
    return parse_edge_list(["0 1", "1 2", "2 3", "3 4"])


@pytest.fixture
def k5():
    return parse_edge_list([f"{i} {j}" for i in range(5) for j in range(i + 1, 5)])
