"""Readers for the experiment CSV contract.

Every file is plain CSV with a header row, preceded by '#' comment lines.
Readers validate the header and name the offending file in every error, so
a broken pipeline is diagnosable from the message alone.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    """Header and data rows of a comment-prefixed CSV."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip() and not line.startswith("#")]
    if not lines:
        raise ValueError(f"{path}: no header row found")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def _expect_header(path, header: list[str], expected: list[str]) -> None:
    if header != expected:
        raise ValueError(
            f"{path}: unexpected header {','.join(header)!r}, "
            f"expected {','.join(expected)!r}"
        )


def load_distribution(path) -> tuple[np.ndarray, np.ndarray]:
    """(value, p) arrays of one stats_*.csv cumulative distribution."""
    header, rows = read_csv(path)
    _expect_header(path, header, ["metric", "value", "p"])
    if not rows:
        raise ValueError(f"{path}: distribution has no data rows")
    values = np.array([float(r[1]) for r in rows])
    p = np.array([float(r[2]) for r in rows])
    return values, p


def load_attack_mean(path) -> dict[str, dict[str, np.ndarray]]:
    """Per-strategy arrays (g, mean, lo, hi) from attack_mean.csv."""
    header, rows = read_csv(path)
    _expect_header(
        path,
        header,
        ["strategy", "g", "mean_lcc_fraction", "min_lcc_fraction", "max_lcc_fraction", "n_seeds"],
    )
    if not rows:
        raise ValueError(f"{path}: attack table has no data rows (empty g grid)")
    curves: dict[str, dict[str, list[float]]] = {}
    for row in rows:
        cell = curves.setdefault(row[0], {"g": [], "mean": [], "lo": [], "hi": []})
        cell["g"].append(float(row[1]))
        cell["mean"].append(float(row[2]))
        cell["lo"].append(float(row[3]))
        cell["hi"].append(float(row[4]))
    return {
        name: {key: np.array(vals) for key, vals in cell.items()}
        for name, cell in curves.items()
    }


def load_sir_mean(path) -> dict[str, np.ndarray]:
    """(t, S, I, R) arrays from one sir_<label>_mean.csv."""
    header, rows = read_csv(path)
    _expect_header(path, header, ["t", "S", "I", "R"])
    if not rows:
        raise ValueError(f"{path}: SIR table has no data rows")
    data = np.array([[float(v) for v in row] for row in rows])
    return {"t": data[:, 0], "s": data[:, 1], "i": data[:, 2], "r": data[:, 3]}


def discover_sir_means(input_dir) -> dict[str, Path]:
    """Map run label -> sir_<label>_mean.csv found in an experiment directory."""
    input_dir = Path(input_dir)
    found = {}
    for path in sorted(input_dir.glob("sir_*_mean.csv")):
        label = path.name[len("sir_") : -len("_mean.csv")]
        found[label] = path
    return found
