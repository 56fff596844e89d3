"""
Métricas y observabilidad para intervalos.
Expone contadores, histogramas e info estática para Prometheus.
La CLI las vuelca a un textfile cuando METRICS_FILE / --metrics-file está definido.
"""

import time
from contextlib import contextmanager

from prometheus_client import REGISTRY, Counter, Gauge, Histogram, Info, write_to_textfile

# ---------------------------------------------------------------------------
# Info estática (versión)
# ---------------------------------------------------------------------------

ENGINE_INFO = Info(
    "intervalos_info",
    "Información de la herramienta intervalos",
)


def initialize_engine_info(version: str = "0.0.0") -> None:
    """Inicializa la información estática para métricas."""
    ENGINE_INFO.info({
        "version": version,
        "component": "intervalos",
    })


# ---------------------------------------------------------------------------
# Fases del pipeline (validate, reduce, simplify, evaluate, analyze, widths)
# ---------------------------------------------------------------------------

PHASE_DURATION = Histogram(
    "intervalos_phase_duration_seconds",
    "Duración de cada fase del pipeline",
    ["phase", "status"],  # status: success | error
    buckets=[0.001, 0.01, 0.05, 0.1, 0.5, 1, 2.5, 5, 10, 30, 60, 300],
)

# ---------------------------------------------------------------------------
# Motores de evaluación
# ---------------------------------------------------------------------------

ENGINE_RUNS = Counter(
    "intervalos_engine_runs_total",
    "Evaluaciones de subconsultas por motor y resultado",
    ["engine", "result"],  # result: true | false | error
)

ENGINE_DURATION = Histogram(
    "intervalos_engine_duration_seconds",
    "Tiempo por evaluación de subconsulta",
    ["engine"],
    buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1, 5, 30],
)

SUBQUERIES_SKIPPED = Counter(
    "intervalos_subqueries_skipped_total",
    "Subconsultas no evaluadas por salida temprana",
)

# ---------------------------------------------------------------------------
# Reducción
# ---------------------------------------------------------------------------

REDUCED_ROWS = Histogram(
    "intervalos_reduced_relation_rows",
    "Filas por relación transformada",
    buckets=[1, 10, 100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000],
)

REDUCED_QUERIES = Gauge(
    "intervalos_reduced_queries",
    "Consultas EJ producidas por la última reducción",
    ["stage"],  # tau | simplified
)

# ---------------------------------------------------------------------------
# Caché de ρ*
# ---------------------------------------------------------------------------

RHO_CACHE = Counter(
    "intervalos_rho_cache_total",
    "Hits y misses del caché de coberturas fraccionales",
    ["result"],  # hit | miss
)

CACHE_ENTRIES = Gauge(
    "intervalos_cache_entries",
    "Número de entradas en cache",
    ["cache_type"],
)

# ---------------------------------------------------------------------------
# Errores
# ---------------------------------------------------------------------------

RUN_ERRORS = Counter(
    "intervalos_errors_total",
    "Errores de ejecución por tipo",
    ["error_type"],
)


# ---------------------------------------------------------------------------
# Context managers
# ---------------------------------------------------------------------------

@contextmanager
def track_phase(phase: str, timings: dict[str, float] | None = None):
    """Mide una fase; si se pasa `timings`, acumula ahí los segundos."""
    status = "success"
    start = time.perf_counter()
    try:
        yield
    except Exception:
        status = "error"
        raise
    finally:
        elapsed = time.perf_counter() - start
        PHASE_DURATION.labels(phase=phase, status=status).observe(elapsed)
        if timings is not None:
            timings[phase] = timings.get(phase, 0.0) + elapsed


def record_engine_run(engine: str, result: bool | None, seconds: float) -> None:
    """Registra una evaluación de subconsulta (result None = error)."""
    label = "error" if result is None else str(result).lower()
    ENGINE_RUNS.labels(engine=engine, result=label).inc()
    ENGINE_DURATION.labels(engine=engine).observe(seconds)


# ---------------------------------------------------------------------------
# Funciones de utilidad
# ---------------------------------------------------------------------------

def update_cache_stats(cache_type: str, count: int) -> None:
    """Actualiza estadísticas de cache."""
    CACHE_ENTRIES.labels(cache_type=cache_type).set(count)


def record_run_error(error_type: str) -> None:
    """Registra un error de ejecución por tipo."""
    RUN_ERRORS.labels(error_type=error_type).inc()


def export_metrics(path: str) -> None:
    """Vuelca el registro por defecto en formato textfile (node_exporter)."""
    write_to_textfile(path, REGISTRY)


__all__ = [
    # Info
    "ENGINE_INFO",
    "initialize_engine_info",
    # Fases
    "PHASE_DURATION",
    # Motores
    "ENGINE_RUNS",
    "ENGINE_DURATION",
    "SUBQUERIES_SKIPPED",
    # Reducción
    "REDUCED_ROWS",
    "REDUCED_QUERIES",
    # Cache
    "RHO_CACHE",
    "CACHE_ENTRIES",
    # Errores
    "RUN_ERRORS",
    # Context managers
    "track_phase",
    # Funciones
    "record_engine_run",
    "update_cache_stats",
    "record_run_error",
    "export_metrics",
]
