"""Figure rendering for memshield experiment CSV outputs."""

from .io import discover_sir_means, load_attack_mean, load_distribution, load_sir_mean, read_csv
from .render import (
    FigureSpec,
    build_attack_figure,
    build_sir_figure,
    build_stats_figure,
    render_attack_figure,
    render_sir_figure,
    render_stats_figure,
)

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "build_attack_figure",
    "build_sir_figure",
    "build_stats_figure",
    "discover_sir_means",
    "load_attack_mean",
    "load_distribution",
    "load_sir_mean",
    "read_csv",
    "render_attack_figure",
    "render_sir_figure",
    "render_stats_figure",
]
