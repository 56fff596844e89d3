"""
Tipos del dominio: variables, átomos, consultas e hipergrafos.

Todos inmutables tras la construcción; se comparten sin copia entre las
fases y entre hilos del evaluador.
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from .errors import DuplicateVariableInAtom, InvalidQuery, KindMismatch


class VarKind(str, Enum):
    POINT = "point"
    INTERVAL = "interval"


@dataclass(frozen=True, slots=True)
class Variable:
    """
    Variable de consulta. `origin`/`index` solo se rellenan en variables de
    punto creadas por la reducción: X1..Xi tienen origin="X" e index 1..i.
    """

    name: str
    kind: VarKind = VarKind.POINT
    origin: str | None = None
    index: int = 0

    @property
    def is_interval(self) -> bool:
        return self.kind is VarKind.INTERVAL

    def __str__(self) -> str:
        return f"[{self.name}]" if self.is_interval else self.name


@dataclass(frozen=True, slots=True)
class ReducedRelationKey:
    """
    Identidad de una relación transformada: etiqueta original + posición de
    cada variable de intervalo resuelta, en el orden del esquema original.
    R con A↦2, B↦1 se muestra como R_{2;1}.
    """

    label: str
    positions: tuple[tuple[str, int], ...] = ()

    def with_position(self, var: str, position: int, order: Sequence[str]) -> "ReducedRelationKey":
        rank = {name: i for i, name in enumerate(order)}
        merged = dict(self.positions)
        merged[var] = position
        items = sorted(merged.items(), key=lambda kv: rank.get(kv[0], len(rank)))
        return ReducedRelationKey(self.label, tuple(items))

    def position_of(self, var: str) -> int | None:
        return dict(self.positions).get(var)

    def __str__(self) -> str:
        if not self.positions:
            return self.label
        return f"{self.label}_{{{';'.join(str(p) for _, p in self.positions)}}}"


@dataclass(frozen=True, slots=True)
class Atom:
    """R_e(e): etiqueta única en la consulta + esquema ordenado."""

    label: str
    schema: tuple[Variable, ...]
    relation: str = ""
    key: ReducedRelationKey | None = None
    # aridad 0 solo para proyecciones internas: su condición es relación no vacía
    projected: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "schema", tuple(self.schema))
        if not self.schema and not self.projected:
            raise InvalidQuery(f"el átomo {self.label!r} no tiene variables")
        if not self.relation:
            object.__setattr__(self, "relation", self.label)
        names = [v.name for v in self.schema]
        if len(names) != len(set(names)):
            dup = next(n for n in names if names.count(n) > 1)
            raise DuplicateVariableInAtom(f"variable {dup!r} repetida en el átomo {self.label!r}")

    @property
    def origin(self) -> str:
        """Etiqueta del átomo de la consulta original (antes de reducir)."""
        return self.key.label if self.key else self.label

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.schema)

    def origin_order(self) -> list[str]:
        """Nombres originales de las variables en orden de esquema (X1, X2 → X)."""
        seen: list[str] = []
        for v in self.schema:
            name = v.origin or v.name
            if name not in seen:
                seen.append(name)
        return seen

    def __str__(self) -> str:
        return f"{self.label}({','.join(str(v) for v in self.schema)})"


@dataclass(frozen=True, slots=True)
class Query:
    """Conjunción booleana de átomos (Def. de consulta EIJ)."""

    atoms: tuple[Atom, ...]
    _variables: dict[str, Variable] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if not self.atoms:
            raise InvalidQuery("la consulta necesita al menos un átomo")
        labels = [a.label for a in self.atoms]
        if len(labels) != len(set(labels)):
            raise InvalidQuery(f"etiquetas de átomo repetidas: {labels}")
        variables: dict[str, Variable] = {}
        for atom in self.atoms:
            for var in atom.schema:
                known = variables.get(var.name)
                if known is None:
                    variables[var.name] = var
                elif known.kind is not var.kind:
                    raise KindMismatch(
                        f"la variable {var.name!r} aparece como punto y como intervalo"
                    )
        object.__setattr__(self, "_variables", variables)

    @property
    def variables(self) -> Mapping[str, Variable]:
        return self._variables

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.atoms)

    @property
    def kind(self) -> str:
        """IJ (solo intervalos), EJ (solo puntos) o EIJ (mixta)."""
        kinds = {v.kind for v in self._variables.values()}
        if kinds == {VarKind.INTERVAL}:
            return "IJ"
        if VarKind.INTERVAL in kinds:
            return "EIJ"
        return "EJ"

    def atom(self, label: str) -> Atom:
        for a in self.atoms:
            if a.label == label:
                return a
        raise KeyError(label)

    def atoms_with(self, var: str) -> list[Atom]:
        """E_[X]: átomos cuyo esquema contiene la variable, en orden de consulta."""
        return [a for a in self.atoms if var in a.variable_names]

    def interval_join_variables(self) -> list[str]:
        """Variables de intervalo presentes en ≥ 2 átomos, en orden lexicográfico."""
        return sorted(
            name for name, v in self._variables.items()
            if v.is_interval and len(self.atoms_with(name)) >= 2
        )

    def project(self, keep: Iterable[str]) -> "Query":
        """Misma consulta con cada esquema restringido a `keep` (puede quedar vacío)."""
        kept = set(keep)
        return Query(tuple(
            Atom(a.label, tuple(v for v in a.schema if v.name in kept), a.relation, a.key, projected=True)
            for a in self.atoms
        ))

    def __str__(self) -> str:
        return ", ".join(str(a) for a in self.atoms)


@dataclass(frozen=True, slots=True)
class Hypergraph:
    """
    Multi-hipergrafo etiquetado: aristas con el mismo conjunto de vértices y
    etiquetas distintas son aristas distintas.
    """

    vertices: frozenset[str]
    edges: tuple[tuple[str, frozenset[str]], ...]
    interval_vertices: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((lbl, frozenset(vs)) for lbl, vs in self.edges))
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "interval_vertices", frozenset(self.interval_vertices))
        stray = set().union(*(vs for _, vs in self.edges)) - self.vertices if self.edges else set()
        if stray:
            raise InvalidQuery(f"vértices de arista fuera de V: {sorted(stray)}")

    @classmethod
    def from_edges(
        cls,
        edges: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]],
        interval: Iterable[str] = (),
    ) -> "Hypergraph":
        items = list(edges.items()) if isinstance(edges, Mapping) else list(edges)
        frozen = tuple((lbl, frozenset(vs)) for lbl, vs in items)
        vertices = frozenset().union(*(vs for _, vs in frozen)) if frozen else frozenset()
        return cls(vertices, frozen, frozenset(interval) & vertices)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.edges)

    def edge(self, label: str) -> frozenset[str]:
        for lbl, vs in self.edges:
            if lbl == label:
                return vs
        raise KeyError(label)

    def edges_of(self, vertex: str) -> list[str]:
        return [lbl for lbl, vs in self.edges if vertex in vs]

    def join_vertices(self) -> list[str]:
        """Vértices de intervalo en ≥ 2 aristas, orden lexicográfico."""
        return sorted(v for v in self.interval_vertices if len(self.edges_of(v)) >= 2)

    def signature(self) -> tuple[tuple[str, tuple[str, ...]], ...]:
        """Forma etiquetada (para igualdad y deduplicación)."""
        return tuple(sorted((lbl, tuple(sorted(vs))) for lbl, vs in self.edges))

    def __str__(self) -> str:
        return ", ".join(f"{lbl}:{{{','.join(sorted(vs))}}}" for lbl, vs in self.edges)


def hypergraph_of(q: Query) -> Hypergraph:
    """V = variables de q; una arista etiquetada por átomo."""
    edges = tuple((a.label, frozenset(a.variable_names)) for a in q.atoms)
    interval = frozenset(n for n, v in q.variables.items() if v.is_interval)
    return Hypergraph(frozenset(q.variables), edges, interval)


__all__ = [
    "VarKind",
    "Variable",
    "ReducedRelationKey",
    "Atom",
    "Query",
    "Hypergraph",
    "hypergraph_of",
]
