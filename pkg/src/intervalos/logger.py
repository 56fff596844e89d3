"""
Sistema de logging centralizado para intervalos.
Configura logging consistente en la librería y en la CLI.

Cada record lleva `run` (una ejecución de subcomando) y `scope` (la unidad
de trabajo dentro de ella: miembro de la disyunción, punto del benchmark).
"""

import logging
import sys
import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from logging.handlers import RotatingFileHandler
from pathlib import Path

# Los hilos del pool de evaluación heredan ambos valores vía contextvars.copy_context.
run_id: ContextVar[str] = ContextVar("run_id", default="-")
scope: ContextVar[str] = ContextVar("scope", default="")


class _RunFilter(logging.Filter):
    """Inyecta run_id y scope en cada log record para correlacionar logs por ejecución."""

    def filter(self, record):
        record.run_id = run_id.get()
        current = scope.get()
        record.scope = f"/{current}" if current else ""
        return True


@contextmanager
def bound_run(value: str | None = None) -> Iterator[str]:
    """Fija el run_id (8 hex nuevos si no se pasa) mientras dure el bloque."""
    token = run_id.set(value or uuid.uuid4().hex[:8])
    try:
        yield run_id.get()
    finally:
        run_id.reset(token)


@contextmanager
def log_scope(label: str) -> Iterator[None]:
    """Anida `label` bajo el scope actual: "bench n=1024 seed=1/q3"."""
    parent = scope.get()
    token = scope.set(f"{parent}/{label}" if parent else label)
    try:
        yield
    finally:
        scope.reset(token)


def setup_logging(
    level: int = logging.INFO,
    log_file: str | None = None,
    log_format: str | None = None,
) -> None:
    """
    Configura el sistema de logging para toda la aplicación.

    Args:
        level: Nivel de logging (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Ruta al archivo de log (opcional)
        log_format: Formato personalizado de log (opcional)
    """
    if log_format is None:
        log_format = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - [run=%(run_id)s%(scope)s] - %(message)s'

    _run_filter = _RunFilter()

    # stderr: stdout queda reservado para el reporte JSON de la CLI.
    handlers = [logging.StreamHandler(sys.stderr)]

    # Rotación: cada archivo hasta 10 MB, se mantienen 5 backups.
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(RotatingFileHandler(
            log_file,
            maxBytes=10_485_760,  # 10 MB por archivo
            backupCount=5,
            encoding='utf-8',
        ))

    for handler in handlers:
        handler.addFilter(_run_filter)

    logging.basicConfig(
        level=level,
        format=log_format,
        handlers=handlers,
        force=True  # Sobreescribir configuración existente
    )

    # pandas carga numexpr si está instalado y anuncia sus hilos en INFO
    logging.getLogger("numexpr").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """
    Obtiene un logger con el nombre especificado.

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("[REDUCE] %s consultas", 8)
    """
    return logging.getLogger(name)


__all__ = ["setup_logging", "get_logger", "run_id", "scope", "bound_run", "log_scope"]
