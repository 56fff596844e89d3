"""
CLI batch de intervalos.

    intervalos analyze --catalog triangle
    intervalos eval --query "R([A],[B]), S([B],[C])" --db datos/ --strategy auto
    intervalos widths --catalog clique4

Escribe un RunReport JSON en stdout; los logs van a stderr. Código de
salida 0 en éxito (el booleano de la consulta vive solo en el reporte), 2
en errores de entrada, 3 en límites de tamaño y 1 en fallos inesperados.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

from . import __version__
from . import config as app_config
from .cli.bench import fit_slope, run_bench, write_bench_csv
from .cli.catalog import CATALOG, catalog_query
from .cli.commands import (
    analyze,
    eval_command,
    oracle_command,
    reduce_command,
    widths_command,
)
from .cli.io import digest, load_database, save_database
from .cli.parser import parse_query
from .cli.synthetic import gen_synthetic
from .core.database import Database
from .core.errors import (
    DatabaseError,
    IntervalosError,
    InvalidInterval,
    InvalidQuery,
    InvariantViolation,
    MixedBitstringLengths,
    NoBergeCycle,
    NotIntervalVariable,
    ParseError,
    QuerySyntaxError,
    SelfJoinUnsupported,
    SizeLimitExceeded,
)
from .core.model import Query
from .evaluation.pipeline import Strategy
from .logger import bound_run, get_logger, setup_logging
from .metrics import export_metrics, initialize_engine_info, record_run_error
from .schemas import RunReport, SyntheticSpec

logger = get_logger(__name__)

# tipo → (nivel de log, código de salida, etiqueta de métrica)
_RUN_ERRORS: dict[type, tuple[str, int, str]] = {
    QuerySyntaxError: ("warning", 2, "query_syntax"),
    ParseError: ("warning", 2, "parse_error"),
    DatabaseError: ("warning", 2, "database_invalid"),
    InvalidQuery: ("warning", 2, "query_invalid"),
    InvalidInterval: ("warning", 2, "interval_invalid"),
    NotIntervalVariable: ("warning", 2, "not_interval_variable"),
    SelfJoinUnsupported: ("warning", 2, "self_join_unsupported"),
    MixedBitstringLengths: ("warning", 2, "mixed_bitstrings"),
    NoBergeCycle: ("warning", 2, "no_berge_cycle"),
    SizeLimitExceeded: ("warning", 3, "size_limit"),
    InvariantViolation: ("critical", 1, "invariant_violation"),
    IntervalosError: ("error", 1, "intervalos_error"),
}


def _error_entry(exc: BaseException) -> tuple[str, int, str] | None:
    for cls in type(exc).__mro__:
        if cls in _RUN_ERRORS:
            return _RUN_ERRORS[cls]
    return None


# ---------------------------------------------------------------------------
# Argumentos
# ---------------------------------------------------------------------------

def _add_query_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--query", help="texto de la consulta, p. ej. \"R([A],[B]), S([B],[C])\"")
    src.add_argument("--query-file", type=Path, help="fichero con el texto de la consulta")
    src.add_argument("--catalog", choices=sorted(CATALOG), help="consulta del catálogo de ejemplos")


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--db", type=Path, help="directorio de CSV o fichero .json; sin él se genera una base sintética")
    p.add_argument("--rows", type=int, default=100, help="filas por relación de la base sintética")
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--max-width", type=int, default=20)
    p.add_argument("--point-range", type=int, default=50)
    p.add_argument("--width-distribution", choices=["uniform", "geometric"], default="uniform")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intervalos", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"intervalos {__version__}")
    parser.add_argument("--seed", type=int, default=None, help="semilla del generador (DEFAULT_SEED)")
    parser.add_argument("--metrics-file", default=None, help="textfile de Prometheus (METRICS_FILE)")
    parser.add_argument("--vertex-cap", type=int, default=None, help="tope de vértices para fhtw y chequeos exhaustivos")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="clases de aciclicidad, ciclo de Berge y conteos de τ")
    _add_query_args(p)

    p = sub.add_parser("reduce", help="reducción IJ → EJ; escribe las consultas y la base reducida")
    _add_query_args(p)
    _add_data_args(p)
    p.add_argument("--out", type=Path, help="directorio de salida")

    p = sub.add_parser("eval", help="evaluación con la estrategia elegida")
    _add_query_args(p)
    _add_data_args(p)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.AUTO.value)
    p.add_argument("--parallel", type=int, default=None, help="hilos para la disyunción (EVAL_WORKERS)")
    p.add_argument("--max-oracle-cells", type=int, default=None)

    p = sub.add_parser("oracle", help="evaluación por fuerza bruta")
    _add_query_args(p)
    _add_data_args(p)
    p.add_argument("--max-oracle-cells", type=int, default=None)

    p = sub.add_parser("widths", help="fhtw por miembro de τ y cota del ancho ij")
    _add_query_args(p)

    p = sub.add_parser("bench", help="barrido tamaños × semillas; CSV (N, phase, seconds)")
    _add_query_args(p)
    _add_data_args(p)
    p.add_argument("--sizes", type=int, nargs="+", default=[2**10, 2**11, 2**12])
    p.add_argument("--seeds", type=int, nargs="+", default=None)
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.AUTO.value)
    p.add_argument("--parallel", type=int, default=None)
    p.add_argument("--out", type=Path, help="CSV de salida")

    p = sub.add_parser("gen", help="genera una base sintética para la consulta")
    _add_query_args(p)
    _add_data_args(p)
    p.add_argument("--out", type=Path, required=True, help="directorio de CSV o fichero .json")

    return parser


# ---------------------------------------------------------------------------
# Entradas
# ---------------------------------------------------------------------------

def _query_from(args: argparse.Namespace, digests: dict[str, str]) -> Query:
    if args.catalog:
        return catalog_query(args.catalog)
    if args.query_file:
        digests["query"] = digest(args.query_file)
        return parse_query(args.query_file.read_text(encoding="utf-8"))
    return parse_query(args.query)


def _spec_from(args: argparse.Namespace) -> SyntheticSpec:
    return SyntheticSpec(
        rows=args.rows,
        grid=args.grid,
        max_width=args.max_width,
        point_range=args.point_range,
        width_distribution=args.width_distribution,
    )


def _database_from(args: argparse.Namespace, q: Query, seed: int, digests: dict[str, str]) -> Database:
    if args.db is not None:
        digests["db"] = digest(args.db)
        return load_database(args.db, q.labels)
    logger.info("[CLI] sin --db: base sintética con seed=%s, %s filas", seed, args.rows)
    return gen_synthetic(q, _spec_from(args), seed)


# ---------------------------------------------------------------------------
# Ejecución
# ---------------------------------------------------------------------------

def _dispatch(args: argparse.Namespace, seed: int, digests: dict[str, str], timings: dict[str, float]) -> dict:
    q = _query_from(args, digests)
    logger.info("[CLI] %s sobre %s (%s)", args.command, q, q.kind)

    if args.command == "analyze":
        return analyze(q, args.vertex_cap).model_dump(mode="json")
    if args.command == "widths":
        return widths_command(q, args.vertex_cap).model_dump(mode="json")
    if args.command == "bench":
        seeds = args.seeds or [seed]
        rows = run_bench(q, args.sizes, seeds, _spec_from(args), args.strategy, args.parallel)
        if args.out:
            write_bench_csv(rows, args.out)
        return {
            "rows": [r.model_dump(mode="json") for r in rows],
            "slope": fit_slope(rows),
            "output": str(args.out) if args.out else None,
        }

    db = _database_from(args, q, seed, digests)
    if args.command == "gen":
        save_database(db, args.out)
        digests["out"] = digest(args.out)
        return {"output": str(args.out), "relation_sizes": db.sizes()}
    if args.command == "reduce":
        return reduce_command(q, db, args.out).model_dump(mode="json")
    if args.command == "oracle":
        report = oracle_command(q, db, args.max_oracle_cells)
    else:
        report = eval_command(
            q, db, args.strategy, args.parallel, args.vertex_cap, args.max_oracle_cells,
        )
    timings.update(report.timings)
    return report.model_dump(mode="json")


def main(argv: list[str] | None = None) -> int:
    # Configurar logging antes de cualquier otra cosa
    setup_logging(
        level=getattr(logging, app_config.LOG_LEVEL.upper(), logging.INFO),
        log_file=app_config.LOG_FILE if app_config.LOG_FILE else None,
    )
    initialize_engine_info(version=__version__)

    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    with bound_run():
        return _execute(args, argv)


def _execute(args: argparse.Namespace, argv: list[str]) -> int:
    seed = app_config.DEFAULT_SEED if args.seed is None else args.seed
    metrics_file = args.metrics_file if args.metrics_file is not None else app_config.METRICS_FILE
    digests: dict[str, str] = {}
    timings: dict[str, float] = {}
    exit_code = 0
    start = time.perf_counter()

    try:
        output = _dispatch(args, seed, digests, timings)
        timings["wall"] = time.perf_counter() - start
        report = RunReport(
            command=["intervalos", *argv],
            version=__version__,
            digests=digests,
            output=output,
            timings=timings,
        )
        sys.stdout.write(report.model_dump_json(indent=2) + "\n")

    except Exception as e:
        entry = _error_entry(e)
        if entry is None:
            logger.error("[CLI] Error inesperado en %s: %s", args.command, e, exc_info=True)
            record_run_error("unexpected")
            exit_code = 1
        else:
            log_level, exit_code, error_key = entry
            getattr(logger, log_level)("[CLI][%s] %s: %s", error_key, type(e).__name__, e)
            record_run_error(error_key)

    finally:
        if metrics_file:
            export_metrics(metrics_file)
        logger.info("[CLI] %s terminado en %.3fs (código %s)", args.command, time.perf_counter() - start, exit_code)

    return exit_code


if __name__ == "__main__":
    sys.exit(main())
