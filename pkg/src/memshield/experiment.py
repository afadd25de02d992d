"""End-to-end experiment runners: dataset statistics, attack curves, SIR.

Everything is driven by a YAML config (sections: attack, sir, plus input
paths) and produces CSV files with a reproducibility header: config hash,
seed list, and a parameter echo. Runs are sequential in a canonical
(strategy, seed, g) order, so repeated invocations are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import yaml

from .cover import CommunityCover, OverlapStatistics, load_community_file, overlap_statistics
from .graph import Graph, NodeMask, lcc_size, load_edge_list
from .sir import SirEnsemble, SirParams, sir_ensemble
from .strategies import (
    STRATEGY_CLASSES,
    CommunityBridgeFinder,
    HighMembershipFirst,
    ImmunizationOrder,
    ImmunizationStrategy,
    LowMembershipFirst,
    RandomAcquaintance,
    apply_order,
)

DEFAULT_G_GRID = [round(0.05 * k, 2) for k in range(1, 11)]


class ConfigError(ValueError):
    """The experiment config file is invalid."""


@dataclass
class AttackSettings:
    strategies: list[str] = field(
        default_factory=lambda: ["lhmi", "hlmi", "random_acquaintance", "cbf"]
    )
    g_grid: list[float] = field(default_factory=lambda: list(DEFAULT_G_GRID))
    seeds: list[int] = field(default_factory=lambda: list(range(1, 11)))
    acquaintance_threshold: int = 1
    max_draws_factor: int = 1000
    max_walk_steps: int = 100
    max_total_steps_factor: int = 1000
    export_orders: bool = False


@dataclass
class SirSettings:
    alpha: float = 0.5
    beta: float = 0.5
    max_steps: int = 1000
    seeds: list[int] = field(default_factory=lambda: list(range(1, 21)))
    strategies: list[str] = field(default_factory=lambda: ["lhmi"])
    fraction: float = 0.4
    strategy_seed: int = 1
    normalization: str = "active"


@dataclass
class ExperimentConfig:
    graph_path: Path
    community_path: Path
    output_dir: Path
    label_policy: str = "strict"
    attack: AttackSettings = field(default_factory=AttackSettings)
    sir: SirSettings = field(default_factory=SirSettings)

    def validate(self) -> None:
        if self.label_policy not in ("strict", "drop"):
            raise ConfigError(f"label_policy must be strict or drop, got {self.label_policy!r}")
        grid = self.attack.g_grid
        if any(not 0.0 <= g <= 1.0 for g in grid):
            raise ConfigError("g_grid values must lie in [0, 1]")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("g_grid must be strictly increasing")
        if not self.attack.seeds:
            raise ConfigError("attack.seeds must list at least one replicate seed")
        if not self.sir.seeds:
            raise ConfigError("sir.seeds must list at least one seed")
        unknown = [s for s in self.attack.strategies + self.sir.strategies
                   if s not in STRATEGY_CLASSES]
        if unknown:
            raise ConfigError(
                f"unknown strategies {unknown}; available: {sorted(STRATEGY_CLASSES)}"
            )
        if not 0.0 <= self.sir.fraction <= 1.0:
            raise ConfigError("sir.fraction must lie in [0, 1]")

    def as_dict(self) -> dict:
        # output_dir is intentionally absent: the hash identifies the inputs
        # and parameters, so relocated runs stay comparable
        return {
            "graph": str(self.graph_path),
            "communities": str(self.community_path),
            "label_policy": self.label_policy,
            "attack": {
                "strategies": list(self.attack.strategies),
                "g_grid": [float(g) for g in self.attack.g_grid],
                "seeds": [int(s) for s in self.attack.seeds],
                "acquaintance_threshold": int(self.attack.acquaintance_threshold),
                "max_draws_factor": int(self.attack.max_draws_factor),
                "max_walk_steps": int(self.attack.max_walk_steps),
                "max_total_steps_factor": int(self.attack.max_total_steps_factor),
                "export_orders": bool(self.attack.export_orders),
            },
            "sir": {
                "alpha": float(self.sir.alpha),
                "beta": float(self.sir.beta),
                "max_steps": int(self.sir.max_steps),
                "seeds": [int(s) for s in self.sir.seeds],
                "strategies": list(self.sir.strategies),
                "fraction": float(self.sir.fraction),
                "strategy_seed": int(self.sir.strategy_seed),
                "normalization": self.sir.normalization,
            },
        }

    def config_hash(self) -> str:
        payload = json.dumps(self.as_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name, {})
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"section {name!r} must be a mapping")
    return dict(value)


def load_config(path) -> ExperimentConfig:
    """Load and validate a YAML experiment config.

    Relative input/output paths are resolved against the config file's
    directory.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config root must be a mapping")
    base = path.parent

    def resolve(key: str) -> Path:
        if key not in raw:
            raise ConfigError(f"{path}: missing required key {key!r}")
        p = Path(str(raw[key]))
        return p if p.is_absolute() else base / p

    attack_raw = _section(raw, "attack")
    sir_raw = _section(raw, "sir")
    try:
        attack = AttackSettings(**attack_raw)
        sir = SirSettings(**sir_raw)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    config = ExperimentConfig(
        graph_path=resolve("graph"),
        community_path=resolve("communities"),
        output_dir=resolve("output_dir"),
        label_policy=str(raw.get("label_policy", "strict")),
        attack=attack,
        sir=sir,
    )
    config.validate()
    return config


def load_inputs(config: ExperimentConfig) -> tuple[Graph, CommunityCover]:
    graph = load_edge_list(config.graph_path)
    cover = load_community_file(
        config.community_path, graph, unknown_labels=config.label_policy
    )
    return graph, cover


# ---------------------------------------------------------------------------
# CSV plumbing


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _header_comments(config: ExperimentConfig) -> list[str]:
    sir = config.sir
    return [
        f"config_hash={config.config_hash()}",
        f"attack_seeds={','.join(str(s) for s in config.attack.seeds)}",
        f"sir_seeds={','.join(str(s) for s in sir.seeds)}",
        (
            f"alpha={_fmt(float(sir.alpha))} beta={_fmt(float(sir.beta))} "
            f"lambda={_fmt(float(sir.alpha) / float(sir.beta))} "
            f"acquaintance_threshold={config.attack.acquaintance_threshold}"
        ),
    ]


def write_csv(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    comments: Sequence[str] = (),
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


# ---------------------------------------------------------------------------
# Stats pipeline


def run_stats(
    config: ExperimentConfig,
    graph: Graph | None = None,
    cover: CommunityCover | None = None,
) -> OverlapStatistics:
    """Write the four cumulative-distribution CSVs and a scalar summary."""
    if graph is None or cover is None:
        graph, cover = load_inputs(config)
    stats = overlap_statistics(graph, cover)
    out = config.output_dir
    comments = _header_comments(config)

    named = [
        ("overlap_degree", stats.overlap_degree),
        ("community_size", stats.community_size),
        ("membership", stats.membership),
        ("overlap_size", stats.overlap_size),
    ]
    for metric, dist in named:
        rows = [] if dist is None else [(metric, v, p) for v, p in dist.rows()]
        write_csv(out / f"stats_{metric}.csv", ("metric", "value", "p"), rows, comments)

    summary_path = out / "summary.txt"
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_path, "w", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(f"nodes={graph.node_count}\n")
        fh.write(f"edges={graph.edge_count}\n")
        fh.write(f"communities={stats.community_count}\n")
        fh.write(f"overlap_nodes={stats.overlap_node_count}\n")
        fh.write(f"max_membership={stats.max_membership}\n")
        fh.write(f"self_loops_dropped={graph.self_loops_dropped}\n")
        fh.write(f"duplicate_edges_dropped={graph.duplicate_edges_dropped}\n")
        fh.write(f"unknown_labels_dropped={cover.dropped_labels}\n")
        fh.write(f"empty_communities_discarded={cover.discarded_empty}\n")
    return stats


# ---------------------------------------------------------------------------
# Attack pipeline


@dataclass
class AttackCurve:
    """Per-replicate and aggregated lcc decay for one strategy."""

    strategy: str
    g: list[float]
    per_seed: dict[int, list[float]]
    mean: list[float]
    lo: list[float]
    hi: list[float]
    halt_g: float | None


def make_strategy(
    name: str,
    seed: int,
    config: ExperimentConfig,
    n_nodes: int,
    budget_fraction: float | None = None,
) -> ImmunizationStrategy:
    """Instantiate a configured strategy estimator for one replicate seed.

    ``budget_fraction`` sizes the stochastic strategies' node budget; it
    defaults to the largest attack grid point.
    """
    attack = config.attack
    if budget_fraction is None:
        budget_fraction = max(attack.g_grid) if attack.g_grid else 1.0
    budget = math.floor(budget_fraction * n_nodes)
    if name == "hlmi":
        return HighMembershipFirst(seed=seed)
    if name == "lhmi":
        return LowMembershipFirst(seed=seed)
    if name == "random_acquaintance":
        return RandomAcquaintance(
            threshold=attack.acquaintance_threshold,
            budget=budget,
            seed=seed,
            max_draws_factor=attack.max_draws_factor,
        )
    if name == "cbf":
        return CommunityBridgeFinder(
            budget=budget,
            seed=seed,
            max_walk_steps=attack.max_walk_steps,
            max_total_steps_factor=attack.max_total_steps_factor,
        )
    raise ConfigError(f"unknown strategy {name!r}")


def write_order_csv(
    path: Path,
    graph: Graph,
    order: ImmunizationOrder,
    cover: CommunityCover | None = None,
    comments: Sequence[str] = (),
) -> None:
    """Export a removal order as (rank, node_label, membership) rows."""
    rows = []
    for rank, node in enumerate(order.sequence, start=1):
        m = int(cover.membership[node]) if cover is not None else 0
        rows.append((rank, graph.labels[int(node)], m))
    own = [f"strategy={order.strategy} seed={order.seed}"]
    write_csv(path, ("rank", "node_label", "membership"), rows, list(comments) + own)


def evaluate_order(
    graph: Graph, order: ImmunizationOrder, g_grid: Sequence[float]
) -> tuple[list[float], list[float]]:
    """lcc fraction (lcc'/N) at each evaluable grid point of one order.

    Grid points needing more nodes than the order holds are dropped: the
    curve is truncated where the strategy ran out of nodes.
    """
    n = graph.node_count
    gs: list[float] = []
    fractions: list[float] = []
    for g in g_grid:
        if math.floor(g * n) > len(order.sequence):
            break
        mask = apply_order(graph, order, g)
        gs.append(float(g))
        fractions.append(lcc_size(graph, mask) / n)
    return gs, fractions


def run_attack(
    config: ExperimentConfig,
    graph: Graph | None = None,
    cover: CommunityCover | None = None,
) -> list[AttackCurve]:
    """Generate orders per (strategy, seed) and trace lcc over the g grid.

    Writes per-replicate rows to attack.csv and the per-strategy mean with a
    min/max envelope to attack_mean.csv.
    """
    if graph is None or cover is None:
        graph, cover = load_inputs(config)
    attack = config.attack
    grid = list(attack.g_grid)
    if not grid or grid[0] > 0.0:
        grid = [0.0] + grid

    rows = []
    curves: list[AttackCurve] = []
    for name in attack.strategies:
        per_seed: dict[int, list[float]] = {}
        halt_fracs: list[float] = []
        truncated = False
        for seed in attack.seeds:
            strategy = make_strategy(name, seed, config, graph.node_count)
            strategy.fit(graph, cover)
            order = strategy.order_
            halt_fracs.append(len(order.sequence) / graph.node_count)
            gs, fracs = evaluate_order(graph, order, grid)
            truncated = truncated or len(gs) < len(grid)
            per_seed[seed] = fracs
            rows.extend((name, seed, g, f) for g, f in zip(gs, fracs))
            if attack.export_orders:
                write_order_csv(
                    config.output_dir / "orders" / f"{name}_seed{seed}.csv",
                    graph,
                    order,
                    cover,
                    comments=_header_comments(config),
                )

        # aggregate over seeds that reached each grid point
        curve_g: list[float] = []
        mean: list[float] = []
        lo: list[float] = []
        hi: list[float] = []
        for idx, g in enumerate(grid):
            values = [
                per_seed[s][idx] for s in attack.seeds if len(per_seed[s]) > idx
            ]
            if not values:
                break
            curve_g.append(float(g))
            mean.append(float(np.mean(values)))
            lo.append(float(np.min(values)))
            hi.append(float(np.max(values)))
        halt_g = float(np.mean(halt_fracs)) if truncated else None
        curves.append(
            AttackCurve(
                strategy=name,
                g=curve_g,
                per_seed=per_seed,
                mean=mean,
                lo=lo,
                hi=hi,
                halt_g=halt_g,
            )
        )

    comments = _header_comments(config)
    halt_comment = "halt_g " + " ".join(
        f"{c.strategy}={_fmt(c.halt_g) if c.halt_g is not None else 'none'}"
        for c in curves
    )
    write_csv(
        config.output_dir / "attack.csv",
        ("strategy", "seed", "g", "lcc_fraction"),
        rows,
        comments + [halt_comment],
    )
    mean_rows = [
        (c.strategy, g, m, lo, hi, sum(1 for s in c.per_seed.values() if len(s) > i))
        for c in curves
        for i, (g, m, lo, hi) in enumerate(zip(c.g, c.mean, c.lo, c.hi))
    ]
    write_csv(
        config.output_dir / "attack_mean.csv",
        ("strategy", "g", "mean_lcc_fraction", "min_lcc_fraction", "max_lcc_fraction", "n_seeds"),
        mean_rows,
        comments + [halt_comment],
    )
    return curves


# ---------------------------------------------------------------------------
# SIR comparison pipeline


def run_sir_compare(
    config: ExperimentConfig,
    graph: Graph | None = None,
    cover: CommunityCover | None = None,
) -> dict[str, SirEnsemble]:
    """Ensemble SIR runs without immunization and per configured strategy.

    Writes sir_<label>.csv (seed, t, S, I, R) and sir_<label>_mean.csv.
    """
    if graph is None or cover is None:
        graph, cover = load_inputs(config)
    sir = config.sir
    params = SirParams(
        alpha=sir.alpha,
        beta=sir.beta,
        max_steps=sir.max_steps,
        normalization=sir.normalization,
    )

    masks: list[tuple[str, NodeMask | None]] = [("none", None)]
    for name in sir.strategies:
        strategy = make_strategy(
            name, sir.strategy_seed, config, graph.node_count, budget_fraction=sir.fraction
        )
        strategy.fit(graph, cover)
        masks.append((name, apply_order(graph, strategy.order_, sir.fraction)))

    comments = _header_comments(config) + [
        f"immunized_fraction={_fmt(float(sir.fraction))}",
        f"normalization={sir.normalization}",
    ]
    results: dict[str, SirEnsemble] = {}
    for label, mask in masks:
        ensemble = sir_ensemble(graph, mask, params, sir.seeds)
        results[label] = ensemble
        rows = []
        for seed, trace in zip(ensemble.seeds, ensemble.traces):
            rows.extend(
                (seed, t, trace.s[t], trace.i[t], trace.r[t])
                for t in range(len(trace.s))
            )
        write_csv(
            config.output_dir / f"sir_{label}.csv",
            ("seed", "t", "S", "I", "R"),
            rows,
            comments,
        )
        mean_rows = [
            (t, ensemble.mean_s[t], ensemble.mean_i[t], ensemble.mean_r[t])
            for t in range(len(ensemble.mean_s))
        ]
        write_csv(
            config.output_dir / f"sir_{label}_mean.csv",
            ("t", "S", "I", "R"),
            mean_rows,
            comments,
        )
    return results


def run_all(config: ExperimentConfig) -> None:
    """Run stats, attack, and SIR pipelines off one shared graph load."""
    graph, cover = load_inputs(config)
    run_stats(config, graph, cover)
    run_attack(config, graph, cover)
    run_sir_compare(config, graph, cover)
