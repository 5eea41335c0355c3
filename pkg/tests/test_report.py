"""Figure rendering from result rows."""

import pytest

from zsort.report import render_alpha_figure, render_bench_figures


def bench_rows():
    rows = []
    for dist in ("uniform", "skewed"):
        for size, base in ((10_000, 1.0), (100_000, 11.0)):
            for algo, factor in (("zsort", 1.0), ("merge", 3.0)):
                rows.append({
                    "algorithm": algo,
                    "distribution": dist,
                    "size": size,
                    "seed": 42,
                    "repetitions": 5,
                    "mean_ms": base * factor,
                    "median_ms": base * factor,
                    "min_ms": base * factor * 0.9,
                    "stddev_ms": 0.1,
                    "verified": "true",
                })
    return rows


def test_bench_figures_written(tmp_path):
    paths = render_bench_figures(bench_rows(), tmp_path / "figs")
    names = {p.name for p in paths}
    assert names == {"bench_uniform.png", "bench_skewed.png", "bench_summary.png"}
    assert all(p.stat().st_size > 0 for p in paths)


def test_alpha_figure_written(tmp_path):
    rows = [
        {"alpha": a, "size": 10_000, "seed": 1, "repetitions": 3,
         "mean_ms": 5 + (a - 0.6) ** 2, "median_ms": 5 + (a - 0.6) ** 2,
         "min_ms": 4.0, "stddev_ms": 0.1, "verified": "true"}
        for a in (0.4, 0.6, 0.8, 1.0, 1.2)
    ]
    path = render_alpha_figure(rows, tmp_path)
    assert path.name == "alpha_sweep.png"
    assert path.stat().st_size > 0


def test_empty_rows_rejected(tmp_path):
    with pytest.raises(ValueError):
        render_bench_figures([], tmp_path)
    with pytest.raises(ValueError):
        render_alpha_figure([], tmp_path)
