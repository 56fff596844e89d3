"""Superficie de línea de comandos: parser de consultas, E/S de bases, generador, catálogo y subcomandos."""

from .bench import bench_frame, fit_slope, run_bench, write_bench_csv
from .catalog import CATALOG, CatalogEntry, catalog_query
from .commands import (
    analyze,
    eval_command,
    oracle_command,
    reduce_command,
    reduction_size_bounds,
    widths_command,
)
from .io import close_intervals, digest, load_database, save_database
from .parser import format_query, parse_query, tokenize
from .synthetic import gen_synthetic

__all__ = [
    "bench_frame",
    "fit_slope",
    "run_bench",
    "write_bench_csv",
    "CATALOG",
    "CatalogEntry",
    "catalog_query",
    "analyze",
    "eval_command",
    "oracle_command",
    "reduce_command",
    "reduction_size_bounds",
    "widths_command",
    "close_intervals",
    "digest",
    "load_database",
    "save_database",
    "format_query",
    "parse_query",
    "tokenize",
    "gen_synthetic",
]
