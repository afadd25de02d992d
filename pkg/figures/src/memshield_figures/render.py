"""Build and save the three experiment figures from CSV outputs only.

build_* functions return a matplotlib Figure (handy for tests and notebook
use); render_* functions build, save to spec.output_path, and close. Both
are pure reads over the CSVs: rendering the same files twice plots the same
point sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "memshield-figures"

import matplotlib.pyplot as plt

from .io import discover_sir_means, load_attack_mean, load_distribution, load_sir_mean

SUPPORTED_FORMATS = ("png", "svg")

STATS_PANELS = [
    ("stats_overlap_degree.csv", "overlap-node degree d"),
    ("stats_community_size.csv", "community size s"),
    ("stats_membership.csv", "membership number m"),
    ("stats_overlap_size.csv", "overlap size s_ov"),
]


@dataclass
class FigureSpec:
    """Where to read the experiment CSVs and where to write the image."""

    input_dir: Path
    output_path: Path
    loglog: bool = True

    def __post_init__(self):
        self.input_dir = Path(self.input_dir)
        self.output_path = Path(self.output_path)
        suffix = self.output_path.suffix.lstrip(".").lower()
        if suffix not in SUPPORTED_FORMATS:
            raise ValueError(
                f"unsupported output format {suffix!r}; use one of {SUPPORTED_FORMATS}"
            )


def _save(fig, spec: FigureSpec) -> Path:
    spec.output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output_path)
    plt.close(fig)
    return spec.output_path


def build_stats_figure(spec: FigureSpec):
    """2x2 grid of the four cover distributions, log-log by default."""
    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    for ax, (name, xlabel) in zip(axes.flat, STATS_PANELS):
        values, p = load_distribution(spec.input_dir / name)
        ax.plot(values, p, marker="o", markersize=3, linewidth=1)
        if spec.loglog:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel("p")
        ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    return fig


def render_stats_figure(spec: FigureSpec) -> Path:
    return _save(build_stats_figure(spec), spec)


def build_attack_figure(spec: FigureSpec):
    """Mean lcc decay per strategy with a min/max replicate envelope."""
    curves = load_attack_mean(spec.input_dir / "attack_mean.csv")
    fig, ax = plt.subplots(figsize=(7, 5))
    for name in sorted(curves):
        cell = curves[name]
        ax.plot(cell["g"], cell["mean"], marker="o", markersize=3, label=name)
        ax.fill_between(cell["g"], cell["lo"], cell["hi"], alpha=0.2)
    ax.set_xlabel("fraction immunized g")
    ax.set_ylabel("lcc fraction")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def render_attack_figure(spec: FigureSpec) -> Path:
    return _save(build_attack_figure(spec), spec)


def build_sir_figure(spec: FigureSpec):
    """I(t), S(t), R(t) panels comparing every sir_<label>_mean.csv found."""
    paths = discover_sir_means(spec.input_dir)
    if not paths:
        raise FileNotFoundError(f"{spec.input_dir}: no sir_*_mean.csv files found")
    series = {label: load_sir_mean(path) for label, path in paths.items()}
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    for ax, key, title in zip(axes, ("i", "s", "r"), ("I(t)", "S(t)", "R(t)")):
        for label in sorted(series):
            data = series[label]
            ax.plot(data["t"], data[key], label=label)
        ax.set_xlabel("t")
        ax.set_ylabel(title)
        ax.grid(True, alpha=0.3)
        ax.legend()
    fig.tight_layout()
    return fig


def render_sir_figure(spec: FigureSpec) -> Path:
    return _save(build_sir_figure(spec), spec)
