"""Scaling harness: constraint counts, wall times and peak memory across
(chain count, height) grid points, with linear-fit quality for the
signature-count scaling claim."""

from .harness import (
    BenchConfig,
    BenchReport,
    BenchRow,
    emit_table,
    linear_fit_r2,
    make_grid_spec,
    parse_csv,
    run_scaling,
)

__all__ = [
    "BenchConfig", "BenchReport", "BenchRow",
    "emit_table", "linear_fit_r2", "make_grid_spec", "parse_csv", "run_scaling",
]
