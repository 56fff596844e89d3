"""
Reducción completa IJ → EJ.

Se resuelven las variables de intervalo de join (las que están en ≥ 2
átomos) en orden lexicográfico. Cada paso aplica `onestep_query` a todos los
miembros actuales bajo todas las permutaciones; las relaciones se memorizan
por etiqueta (ReducedRelationKey), así cada variante se construye una sola vez
aunque la usen varios miembros. Al final se proyectan fuera las variables de
intervalo que no son de join y se descartan relaciones sin referencias.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import permutations
from math import comb

from ..core.database import Database, Relation, project_relation, validate
from ..core.model import Hypergraph, Query, hypergraph_of
from ..logger import get_logger
from ..metrics import REDUCED_QUERIES, REDUCED_ROWS
from ..segtree import SegmentTree
from .onestep import edge_order, onestep_query, transform_relation, tree_for

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class ReductionStep:
    """Estado tras resolver `variable`: miembros de la disyunción y su base común."""

    variable: str
    queries: tuple[Query, ...]
    database: Database
    tree: SegmentTree | None


@dataclass(frozen=True, slots=True)
class ReductionOutput:
    hypergraphs: tuple[Hypergraph, ...]
    queries: tuple[Query, ...]
    database: Database
    join_variables: tuple[str, ...] = ()
    tree_heights: tuple[tuple[str, int], ...] = ()

    def __len__(self) -> int:
        return len(self.queries)

    def member_database(self, q: Query) -> Database:
        """Sub-base con solo las relaciones del miembro."""
        return Database({a.label: self.database[a.label] for a in q.atoms})


def size_bound(height: int, position: int, rows: int) -> int:
    """Cota concreta |R̃(σ̃_i)| ≤ |R|·(2h+1)·C(h+i−1, i−1)."""
    return rows * (2 * height + 1) * comb(height + position - 1, position - 1)


def iter_reduction(q: Query, db: Database) -> Iterator[ReductionStep]:
    """
    Produce un ReductionStep por variable de join resuelta (sin proyección
    final). Sirve para comprobar la preservación de la verdad paso a paso.
    """
    validate(db, q)
    queries: list[Query] = [q]
    relations: dict[str, Relation] = dict(db)
    for var in q.interval_join_variables():
        tree = tree_for(db, q, var)
        next_queries: list[Query] = []
        for member in queries:
            sigmas = list(permutations(edge_order(member, var)))
            k = len(sigmas[0])
            for sigma in sigmas:
                rewritten = onestep_query(member, var, sigma)
                position = {lbl: i for i, lbl in enumerate(sigma, start=1)}
                for before, after in zip(member.atoms, rewritten.atoms):
                    if before.label in position and after.label not in relations:
                        rel = transform_relation(
                            relations[before.label], after, var, position[before.label], k, tree,
                        )
                        relations[after.label] = rel
                        REDUCED_ROWS.observe(len(rel))
                next_queries.append(rewritten)
        queries = next_queries
        referenced = {a.label for member in queries for a in member.atoms}
        relations = {lbl: rel for lbl, rel in relations.items() if lbl in referenced}
        logger.info(
            "[REDUCE] [%s] resuelta: %s miembros, %s relaciones, %s filas",
            var, len(queries), len(relations), sum(len(r) for r in relations.values()),
        )
        yield ReductionStep(var, tuple(queries), Database(relations), tree)


def _project_members(queries: tuple[Query, ...], db: Database) -> tuple[tuple[Query, ...], Database]:
    projected: list[Query] = []
    relations: dict[str, Relation] = {}
    for member in queries:
        keep = [name for name, v in member.variables.items() if not v.is_interval]
        member = member.project(keep)
        for atom in member.atoms:
            if atom.label not in relations:
                rel = db[atom.label]
                if rel.column_names != atom.variable_names:
                    rel = project_relation(rel, atom.variable_names)
                relations[atom.label] = rel
        projected.append(member)
    return tuple(projected), Database(relations)


def reduce_full(q: Query, db: Database) -> ReductionOutput:
    """
    Devuelve (H̃, Q̃, D̃) con Q(D) ⟺ ⋁ Q̃(D̃).

    |Q̃| = ∏ k_[X]! sobre las variables de join. Las variables de intervalo
    de un solo átomo se proyectan fuera, de modo que cada miembro es EJ
    (algún átomo puede quedar con esquema vacío).

    Raises:
        MissingRelation, ArityMismatch, KindMismatch: la base no valida
    """
    last: ReductionStep | None = None
    heights: list[tuple[str, int]] = []
    for step in iter_reduction(q, db):
        last = step
        if step.tree is not None:
            heights.append((step.variable, step.tree.height))
    queries, database = (last.queries, last.database) if last else ((q,), Database({a.label: db[a.label] for a in q.atoms}))
    queries, database = _project_members(queries, database)
    REDUCED_QUERIES.labels(stage="tau").set(len(queries))
    hypergraphs: list[Hypergraph] = []
    seen = set()
    for member in queries:
        h = hypergraph_of(member)
        if h.signature() not in seen:
            seen.add(h.signature())
            hypergraphs.append(h)
    logger.info("[REDUCE] %s consultas EJ, %s filas en D̃", len(queries), database.total_rows)
    return ReductionOutput(
        tuple(hypergraphs), queries, database,
        tuple(q.interval_join_variables()), tuple(heights),
    )


__all__ = ["ReductionStep", "ReductionOutput", "size_bound", "iter_reduction", "reduce_full"]
