"""
Relaciones y bases de datos.

Una celda es Interval (variables de intervalo), Fraction (puntos de la
entrada) o str de 0/1 (puntos producidos por la reducción). `provenance`
guarda, por fila, el índice de la tupla original de la que proviene.
"""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import ArityMismatch, KindMismatch, MissingRelation
from .model import Query, Variable
from .rational import Interval, closing_epsilon

Cell = Interval | Fraction | str
Row = tuple[Cell, ...]


@dataclass(frozen=True, slots=True)
class Relation:
    name: str
    schema: tuple[Variable, ...]
    rows: tuple[Row, ...]
    provenance: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if self.provenance is None:
            object.__setattr__(self, "provenance", tuple(range(len(self.rows))))
        elif len(self.provenance) != len(self.rows):
            raise ArityMismatch(f"{self.name}: proveniencia y filas de distinto largo")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.schema)

    def column(self, name: str) -> int:
        try:
            return self.column_names.index(name)
        except ValueError:
            raise ArityMismatch(f"{self.name}: no tiene columna {name!r}") from None

    def renamed(self, name: str, schema: Sequence[Variable] | None = None) -> "Relation":
        return Relation(name, tuple(schema) if schema is not None else self.schema, self.rows, self.provenance)


class Database(Mapping[str, Relation]):
    """Mapa inmutable etiqueta de átomo → Relation."""

    __slots__ = ("_relations",)

    def __init__(self, relations: Mapping[str, Relation] | Iterable[tuple[str, Relation]] = ()):
        items = dict(relations.items() if isinstance(relations, Mapping) else relations)
        self._relations = MappingProxyType(items)

    def __getitem__(self, label: str) -> Relation:
        return self._relations[label]

    def __iter__(self) -> Iterator[str]:
        return iter(self._relations)

    def __len__(self) -> int:
        return len(self._relations)

    def __repr__(self) -> str:
        sizes = ", ".join(f"{k}:{len(v)}" for k, v in self._relations.items())
        return f"Database({sizes})"

    @property
    def total_rows(self) -> int:
        return sum(len(r) for r in self._relations.values())

    def sizes(self) -> dict[str, int]:
        return {k: len(v) for k, v in self._relations.items()}

    def intervals(self) -> Iterator[Interval]:
        for rel in self._relations.values():
            for row in rel.rows:
                for cell in row:
                    if isinstance(cell, Interval):
                        yield cell


def database_epsilon(db: Database) -> Fraction:
    """ε de la base: mínimo hueco entre extremos distintos / (4·(total + 1))."""
    intervals = list(db.intervals())
    endpoints = [p for x in intervals for p in (x.l, x.r)]
    return closing_epsilon(endpoints, len(intervals))


def project_relation(rel: Relation, names: Sequence[str], label: str | None = None) -> Relation:
    """Proyección con deduplicación; conserva la proveniencia de la primera fila."""
    idx = [rel.column(n) for n in names]
    schema = tuple(rel.schema[i] for i in idx)
    seen: dict[Row, int] = {}
    for row, prov in zip(rel.rows, rel.provenance):
        key = tuple(row[i] for i in idx)
        if key not in seen:
            seen[key] = prov
    return Relation(label or rel.name, schema, tuple(seen), tuple(seen.values()))


def _cell_matches(cell: Cell, var: Variable) -> bool:
    if var.is_interval:
        return isinstance(cell, Interval)
    return isinstance(cell, (Fraction, str)) and not isinstance(cell, Interval)


def validate(db: Database, q: Query) -> None:
    """
    Comprueba que `db` cubre cada átomo de `q` con esquema y tipos correctos.

    Raises:
        MissingRelation: falta la relación de alguna etiqueta
        ArityMismatch: columnas distintas (número o nombres) o fila de largo incorrecto
        KindMismatch: celda de intervalo en columna de punto o viceversa
    """
    for atom in q.atoms:
        if atom.label not in db:
            raise MissingRelation(f"falta la relación {atom.label!r}")
        rel = db[atom.label]
        if len(rel.schema) != len(atom.schema):
            raise ArityMismatch(
                f"{atom.label}: {len(rel.schema)} columnas, el átomo tiene {len(atom.schema)}"
            )
        for pos, (col, var) in enumerate(zip(rel.schema, atom.schema)):
            if col.name != var.name:
                raise ArityMismatch(f"{atom.label}: columna {pos} es {col.name!r}, se esperaba {var.name!r}")
            if col.kind is not var.kind:
                raise KindMismatch(f"{atom.label}.{var.name}: columna {col.kind.value}, variable {var.kind.value}")
        for n, row in enumerate(rel.rows):
            if len(row) != len(atom.schema):
                raise ArityMismatch(f"{atom.label}: fila {n} con {len(row)} celdas")
            for cell, var in zip(row, atom.schema):
                if not _cell_matches(cell, var):
                    raise KindMismatch(
                        f"{atom.label}.{var.name}: fila {n} tiene {type(cell).__name__}, "
                        f"se esperaba {'intervalo' if var.is_interval else 'punto'}"
                    )


__all__ = [
    "Cell",
    "Row",
    "Relation",
    "Database",
    "database_epsilon",
    "project_relation",
    "validate",
]
