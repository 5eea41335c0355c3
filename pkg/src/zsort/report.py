"""Render benchmark CSV output into figures.

One figure per distribution (median time vs input size, one line per
algorithm, log-log), a grouped summary bar chart at the largest common size,
and a curve for alpha sweeps. Figures land next to the delimited output so a
bench run leaves a self-contained report directory.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first

__all__ = [
    "load_alpha_csv",
    "load_bench_csv",
    "render_alpha_figure",
    "render_bench_figures",
]

_INT_FIELDS = {"size", "seed", "repetitions"}
_FLOAT_FIELDS = {"alpha", "mean_ms", "median_ms", "min_ms", "stddev_ms"}


def _typed_rows(path) -> list[dict]:
    rows = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row = {}
            for key, value in raw.items():
                if key in _INT_FIELDS:
                    row[key] = int(value)
                elif key in _FLOAT_FIELDS:
                    row[key] = float(value)
                else:
                    row[key] = value
            rows.append(row)
    return rows


def load_bench_csv(path) -> list[dict]:
    """Read a benchmark CSV back into typed rows."""
    return _typed_rows(path)


def load_alpha_csv(path) -> list[dict]:
    """Read an alpha-sweep CSV back into typed rows."""
    return _typed_rows(path)


def render_bench_figures(rows, out_dir) -> list[Path]:
    """Write per-distribution timing figures plus a summary bar chart."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = [dict(r) for r in rows]
    if not rows:
        raise ValueError("no benchmark rows to render")
    written = []

    distributions = sorted({r["distribution"] for r in rows})
    algorithms = sorted({r["algorithm"] for r in rows})

    for dist in distributions:
        sub = [r for r in rows if r["distribution"] == dist]
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for algo in algorithms:
            pts = sorted(
                ((r["size"], r["median_ms"]) for r in sub if r["algorithm"] == algo)
            )
            if not pts:
                continue
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker="o", label=algo)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("input size (records)")
        ax.set_ylabel("median time (ms)")
        ax.set_title(f"{dist} distribution")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = out / f"bench_{dist}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    # Summary: medians at the largest size present for every distribution.
    top_size = max(r["size"] for r in rows)
    summary = [r for r in rows if r["size"] == top_size]
    if summary:
        fig, ax = plt.subplots(figsize=(7.0, 4.0))
        width = 0.8 / max(1, len(algorithms))
        for i, algo in enumerate(algorithms):
            xs, ys = [], []
            for j, dist in enumerate(distributions):
                match = [r for r in summary
                         if r["algorithm"] == algo and r["distribution"] == dist]
                if match:
                    xs.append(j + i * width)
                    ys.append(match[0]["median_ms"])
            if xs:
                ax.bar(xs, ys, width=width, label=algo)
        ax.set_xticks([j + 0.4 - width / 2 for j in range(len(distributions))])
        ax.set_xticklabels(distributions, rotation=20, ha="right")
        ax.set_ylabel("median time (ms)")
        ax.set_title(f"median time at n={top_size}")
        ax.grid(True, axis="y", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = out / "bench_summary.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    return written


def render_alpha_figure(rows, out_dir) -> Path:
    """Write the cluster-scale sensitivity curve (alpha vs median time)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sorted(rows, key=lambda r: r["alpha"])
    if not rows:
        raise ValueError("no alpha-sweep rows to render")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot([r["alpha"] for r in rows], [r["median_ms"] for r in rows],
            marker="o")
    ax.set_xlabel("cluster scale factor alpha")
    ax.set_ylabel("median time (ms)")
    size = rows[0].get("size")
    ax.set_title(f"alpha sensitivity, uniform n={size}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = out / "alpha_sweep.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
