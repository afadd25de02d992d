import pytest

COMMENTS = "# config_hash=abc123\n# attack_seeds=1,2\n"

STATS_TABLES = {
    "stats_overlap_degree.csv": [(2, 1.0), (5, 0.4), (9, 0.1)],
    "stats_community_size.csv": [(1, 1.0), (3, 0.5), (8, 0.25), (20, 0.05)],
    "stats_membership.csv": [(1, 1.0), (2, 0.3), (3, 0.05)],
    "stats_overlap_size.csv": [(1, 1.0), (2, 0.2)],
}

ATTACK_ROWS = [
    ("lhmi", 0.0, 1.0, 1.0, 1.0, 2),
    ("lhmi", 0.1, 0.7, 0.65, 0.75, 2),
    ("lhmi", 0.2, 0.4, 0.35, 0.45, 2),
    ("hlmi", 0.0, 1.0, 1.0, 1.0, 2),
    ("hlmi", 0.1, 0.8, 0.78, 0.82, 2),
    ("hlmi", 0.2, 0.6, 0.55, 0.65, 2),
]

SIR_SERIES = {
    "none": [(0, 0.99, 0.01, 0.0), (1, 0.7, 0.25, 0.05), (2, 0.5, 0.3, 0.2), (3, 0.4, 0.1, 0.5)],
    "lhmi": [(0, 0.99, 0.01, 0.0), (1, 0.9, 0.06, 0.04), (2, 0.85, 0.05, 0.1), (3, 0.83, 0.02, 0.15)],
}


def write_stats_csvs(path):
    for name, rows in STATS_TABLES.items():
        body = "\n".join(f"{name[6:-4]},{v},{p}" for v, p in rows)
        (path / name).write_text(COMMENTS + "metric,value,p\n" + body + "\n")


def write_attack_csv(path, rows=ATTACK_ROWS):
    header = "strategy,g,mean_lcc_fraction,min_lcc_fraction,max_lcc_fraction,n_seeds\n"
    body = "\n".join(",".join(str(v) for v in row) for row in rows)
    tail = body + "\n" if rows else ""
    (path / "attack_mean.csv").write_text(COMMENTS + header + tail)


def write_sir_csvs(path, series=SIR_SERIES):
    for label, rows in series.items():
        body = "\n".join(",".join(str(v) for v in row) for row in rows)
        (path / f"sir_{label}_mean.csv").write_text(COMMENTS + "t,S,I,R\n" + body + "\n")


@pytest.fixture
def experiment_dir(tmp_path):
    """A fabricated experiment output directory matching the CSV contract."""
    write_stats_csvs(tmp_path)
    write_attack_csv(tmp_path)
    write_sir_csvs(tmp_path)
    return tmp_path


def point_sets(fig):
    """Every plotted line's xy data, for render-identity comparisons."""
    return [
        line.get_xydata().tolist() for ax in fig.axes for line in ax.get_lines()
    ]
