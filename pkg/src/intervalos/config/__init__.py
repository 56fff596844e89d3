"""Re-exporta la configuración de intervalos (env, límites, caché, logging)."""

from .config import (
    DEFAULT_SEED,
    EVAL_WORKERS,
    FHTW_VERTEX_CAP,
    LOG_FILE,
    LOG_LEVEL,
    METRICS_FILE,
    ORACLE_MAX_CELLS,
    RHO_CACHE_MAXSIZE,
    TAU_MAX_MEMBERS,
    VERTEX_CAP,
)

__all__ = [
    "DEFAULT_SEED",
    "EVAL_WORKERS",
    "FHTW_VERTEX_CAP",
    "LOG_FILE",
    "LOG_LEVEL",
    "METRICS_FILE",
    "ORACLE_MAX_CELLS",
    "RHO_CACHE_MAXSIZE",
    "TAU_MAX_MEMBERS",
    "VERTEX_CAP",
]
