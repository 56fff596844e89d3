"""
Simplificación de la disyunción EJ: se quitan las variables que aparecen en
un solo átomo y se agrupan los miembros que quedan con el mismo esquema
(comparando átomos por su etiqueta original).

Los miembros de un grupo comparten forma pero no relaciones (R_{1;2} y
R_{2;2} siguen siendo tablas distintas), así que la evaluación recorre
`members`; el grupo sirve para contar y para los anchos.
"""

from dataclasses import dataclass

from ..core.model import Atom, Hypergraph, Query
from ..hypergraph.structure import drop_singleton_vertices
from ..logger import get_logger
from ..metrics import REDUCED_QUERIES

logger = get_logger(__name__)

QuerySignature = tuple[tuple[str, tuple[str, ...]], ...]


@dataclass(frozen=True, slots=True)
class SimplifiedQuery:
    representative: Query
    members: tuple[Query, ...]
    originals: tuple[Query, ...]

    @property
    def signature(self) -> QuerySignature:
        return query_signature(self.representative)


def query_signature(q: Query) -> QuerySignature:
    return tuple(sorted((a.origin, tuple(sorted(a.variable_names))) for a in q.atoms))


def project_singletons(q: Query) -> Query:
    """Misma consulta sin variables de un solo átomo (los átomos vacíos se conservan)."""
    counts: dict[str, int] = {}
    for a in q.atoms:
        for name in a.variable_names:
            counts[name] = counts.get(name, 0) + 1
    return q.project(n for n, c in counts.items() if c >= 2)


def simplify(queries: list[Query] | tuple[Query, ...]) -> list[SimplifiedQuery]:
    groups: dict[QuerySignature, tuple[Query, list[Query], list[Query]]] = {}
    for q in queries:
        projected = project_singletons(q)
        sig = query_signature(projected)
        if sig not in groups:
            rep = Query(tuple(Atom(a.origin, a.schema, projected=True) for a in projected.atoms))
            groups[sig] = (rep, [], [])
        groups[sig][1].append(projected)
        groups[sig][2].append(q)
    out = [SimplifiedQuery(rep, tuple(ms), tuple(os)) for rep, ms, os in groups.values()]
    REDUCED_QUERIES.labels(stage="simplified").set(len(out))
    logger.info("[REDUCE] simplify: %s → %s consultas", len(queries), len(out))
    return out


def simplify_hypergraphs(hs: list[Hypergraph]) -> list[Hypergraph]:
    out: list[Hypergraph] = []
    seen = set()
    for h in hs:
        reduced = drop_singleton_vertices(h)
        sig = reduced.signature()
        if sig not in seen:
            seen.add(sig)
            out.append(reduced)
    return out


__all__ = [
    "QuerySignature",
    "SimplifiedQuery",
    "query_signature",
    "project_singletons",
    "simplify",
    "simplify_hypergraphs",
]
