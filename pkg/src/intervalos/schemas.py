"""
Modelos Pydantic de los reportes.
Define el contrato JSON de la CLI; los racionales viajan como texto exacto ("3/2").
"""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field, field_validator

from .core.rational import format_rational
from .logger import get_logger

logger = get_logger(__name__)


def _rational_text(v: object) -> object:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# Evaluación
# ---------------------------------------------------------------------------

class SubqueryReport(BaseModel):
    """Una consulta EJ de la disyunción (o la consulta original con el oráculo)."""

    index: int
    query: str
    group: int = 0
    engine: str
    result: bool | None = None  # None = no evaluada (salida temprana)
    seconds: float = 0.0
    rows: int = 0


class EvalReport(BaseModel):
    result: bool
    strategy: str
    subqueries: list[SubqueryReport] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)
    relation_sizes: dict[str, int] = Field(default_factory=dict)
    early_exit: bool = False
    members: int = 0
    groups: int = 0
    witness: dict[str, int] | None = None

    @property
    def engines(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for sub in self.subqueries:
            counts[sub.engine] = counts.get(sub.engine, 0) + 1
        return counts


# ---------------------------------------------------------------------------
# Anchos
# ---------------------------------------------------------------------------

class WidthRow(BaseModel):
    member: int
    hypergraph: str
    cls: int
    fhtw: str
    bags: list[list[str]]
    rho: list[str]

    @field_validator("fhtw", mode="before")
    @classmethod
    def fraction_to_text(cls, v: object) -> object:
        return _rational_text(v)

    @field_validator("rho", mode="before")
    @classmethod
    def fractions_to_text(cls, v: object) -> object:
        return [_rational_text(x) for x in v] if isinstance(v, (list, tuple)) else v


class WidthReport(BaseModel):
    query: str
    tau: int
    simplified: int
    classes: list[list[int]]
    class_fhtw: list[str]
    ijw_fhtw_upper: str
    exact: bool
    rows: list[WidthRow] = Field(default_factory=list)

    @field_validator("ijw_fhtw_upper", mode="before")
    @classmethod
    def fraction_to_text(cls, v: object) -> object:
        return _rational_text(v)

    @field_validator("class_fhtw", mode="before")
    @classmethod
    def fractions_to_text(cls, v: object) -> object:
        return [_rational_text(x) for x in v] if isinstance(v, (list, tuple)) else v


# ---------------------------------------------------------------------------
# Análisis y reducción
# ---------------------------------------------------------------------------

class AnalyzeReport(BaseModel):
    query: str
    kind: str
    alpha: bool
    gamma: bool | None = None  # None = fuera del tope de vértices
    iota: bool
    berge: bool
    berge_cycle: str | None = None
    tau: int
    simplified: int | None = None
    relation_variants: dict[str, int] = Field(default_factory=dict)
    classification: str


class ReduceReport(BaseModel):
    query: str
    join_variables: list[str]
    queries: list[str]
    relation_sizes: dict[str, int]
    size_bounds: dict[str, int] = Field(default_factory=dict)
    output: str | None = None


# ---------------------------------------------------------------------------
# Benchmark y generador
# ---------------------------------------------------------------------------

class BenchRow(BaseModel):
    n: int
    seed: int
    phase: str
    seconds: float


class SyntheticSpec(BaseModel):
    """Parámetros del generador: N filas por relación, intervalos [l, l+w]."""

    rows: int = Field(default=100, ge=0)
    grid: int = Field(default=1000, ge=1)
    max_width: int = Field(default=20, ge=0)
    point_range: int = Field(default=50, ge=1)
    width_distribution: str = Field(default="uniform", pattern="^(uniform|geometric)$")

    model_config = {"extra": "ignore"}


# ---------------------------------------------------------------------------
# Formato JSON de bases de datos
# ---------------------------------------------------------------------------

class RelationFile(BaseModel):
    """Cabecera con la misma sintaxis que el CSV; celdas como texto exacto."""

    schema_: list[str] = Field(alias="schema")
    rows: list[list[str]] = Field(default_factory=list)

    model_config = {"populate_by_name": True}


class DatabaseFile(BaseModel):
    relations: dict[str, RelationFile] = Field(default_factory=dict)


# ---------------------------------------------------------------------------
# Reporte de ejecución
# ---------------------------------------------------------------------------

class RunReport(BaseModel):
    command: list[str]
    version: str
    digests: dict[str, str] = Field(default_factory=dict)
    output: dict[str, Any] = Field(default_factory=dict)
    timings: dict[str, float] = Field(default_factory=dict)


__all__ = [
    "SubqueryReport",
    "EvalReport",
    "WidthRow",
    "WidthReport",
    "AnalyzeReport",
    "ReduceReport",
    "BenchRow",
    "SyntheticSpec",
    "RelationFile",
    "DatabaseFile",
    "RunReport",
]
