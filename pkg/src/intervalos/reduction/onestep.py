"""
Un paso de la reducción: resolver una variable de intervalo [X] bajo una
permutación σ de sus aristas E_[X].

La arista en la posición i de σ cambia [X] por las variables de punto
X1..Xi. En la base, una tupla t de la relación en posición i < k emite una
fila por cada nodo u de CP(t[X]) y cada descomposición de u en i partes; en la
posición k se usa la hoja leaf(t[X].l). El árbol se construye con todos los
intervalos de la columna [X] de las relaciones de E_[X].
"""

from collections.abc import Sequence
from itertools import permutations

from ..core.database import Database, Relation, Row
from ..core.errors import InvalidPermutation, NotIntervalVariable
from ..core.model import Atom, Hypergraph, Query, ReducedRelationKey, Variable, VarKind
from ..logger import get_logger
from ..segtree import SegmentTree
from .splits import bitstring_splits

logger = get_logger(__name__)


def fresh_names(var: str, count: int, taken: set[str] | frozenset[str]) -> list[str]:
    """X1..Xcount; si choca con un nombre existente se intercala "_" (X_1, X__1, ...)."""
    sep = ""
    while True:
        names = [f"{var}{sep}{j}" for j in range(1, count + 1)]
        if not any(n in taken for n in names):
            return names
        sep += "_"


def _check_sigma(sigma: Sequence[str], expected: Sequence[str], var: str) -> None:
    if len(sigma) != len(expected) or set(sigma) != set(expected):
        raise InvalidPermutation(f"σ={list(sigma)} no permuta E_[{var}]={list(expected)}")


# ---------------------------------------------------------------------------
# Hipergrafos
# ---------------------------------------------------------------------------

def onestep_hypergraph(h: Hypergraph, var: str, sigma: Sequence[str]) -> Hypergraph:
    """V ∖ {[X]} ∪ {X1..Xk}; la arista σ_i pasa a σ_i ∖ {[X]} ∪ {X1..Xi}."""
    if var not in h.interval_vertices:
        raise NotIntervalVariable(f"{var!r} no es vértice de intervalo")
    _check_sigma(sigma, h.edges_of(var), var)
    names = fresh_names(var, len(sigma), h.vertices - {var})
    position = {lbl: i for i, lbl in enumerate(sigma, start=1)}
    edges = []
    for lbl, vs in h.edges:
        if lbl in position:
            vs = (vs - {var}) | frozenset(names[: position[lbl]])
        edges.append((lbl, vs))
    return Hypergraph((h.vertices - {var}) | frozenset(names), tuple(edges), h.interval_vertices - {var})


# ---------------------------------------------------------------------------
# Consultas
# ---------------------------------------------------------------------------

def edge_order(q: Query, var: str) -> list[str]:
    """Etiquetas de E_[X] ordenadas por etiqueta original (orden de enumeración de σ)."""
    return [a.label for a in sorted(q.atoms_with(var), key=lambda a: (a.origin, a.label))]


def _check_interval(q: Query, var: str) -> None:
    v = q.variables.get(var)
    if v is None or not v.is_interval:
        raise NotIntervalVariable(f"{var!r} no es variable de intervalo de la consulta")


def _rewrite_atom(atom: Atom, var: str, position: int, names: Sequence[str]) -> Atom:
    schema: list[Variable] = []
    for v in atom.schema:
        if v.name == var:
            schema.extend(
                Variable(n, VarKind.POINT, origin=var, index=j)
                for j, n in enumerate(names[:position], start=1)
            )
        else:
            schema.append(v)
    base = atom.key or ReducedRelationKey(atom.origin)
    key = base.with_position(var, position, atom.origin_order())
    return Atom(str(key), tuple(schema), atom.relation, key)


def onestep_query(q: Query, var: str, sigma: Sequence[str]) -> Query:
    """Átomos de σ renombrados a su ReducedRelationKey con el esquema del paso."""
    _check_interval(q, var)
    _check_sigma(sigma, [a.label for a in q.atoms_with(var)], var)
    names = fresh_names(var, len(sigma), set(q.variables) - {var})
    position = {lbl: i for i, lbl in enumerate(sigma, start=1)}
    return Query(tuple(
        _rewrite_atom(a, var, position[a.label], names) if a.label in position else a
        for a in q.atoms
    ))


def onestep_disjunction(q: Query, var: str) -> list[tuple[tuple[str, ...], Query]]:
    """Los |E_[X]|! miembros (σ, Q̃_σ) en orden lexicográfico de etiquetas."""
    _check_interval(q, var)
    return [(sigma, onestep_query(q, var, sigma)) for sigma in permutations(edge_order(q, var))]


# ---------------------------------------------------------------------------
# Bases de datos
# ---------------------------------------------------------------------------

def tree_for(db: Database, q: Query, var: str) -> SegmentTree | None:
    """Árbol sobre todos los intervalos de la columna [X] en las relaciones de E_[X]."""
    intervals = []
    for atom in q.atoms_with(var):
        rel = db[atom.label]
        col = rel.column(var)
        intervals.extend(row[col] for row in rel.rows)
    if not intervals:
        return None
    return SegmentTree(intervals)


def transform_relation(
    rel: Relation,
    target: Atom,
    var: str,
    position: int,
    k: int,
    tree: SegmentTree | None,
) -> Relation:
    """Filas de la relación en la posición `position` de σ (|σ| = k), con proveniencia."""
    col = rel.column(var)
    out: dict[Row, int] = {}
    for row, prov in zip(rel.rows, rel.provenance):
        x = row[col]
        nodes = tree.canonical_partition(x).nodes if position < k else (tree.leaf_of(x.l),)
        head, tail = row[:col], row[col + 1:]
        for node in nodes:
            for parts in bitstring_splits(node, position):
                new_row = head + parts + tail
                if new_row not in out:
                    out[new_row] = prov
    return Relation(target.label, target.schema, tuple(out), tuple(out.values()))


def onestep_database(db: Database, q: Query, var: str, sigma: Sequence[str]) -> Database:
    """Base de Q̃_σ: relaciones de σ transformadas, el resto copiadas."""
    rewritten = onestep_query(q, var, sigma)
    tree = tree_for(db, q, var)
    k = len(sigma)
    position = {lbl: i for i, lbl in enumerate(sigma, start=1)}
    relations: dict[str, Relation] = {}
    for before, after in zip(q.atoms, rewritten.atoms):
        rel = db[before.label]
        if before.label in position:
            relations[after.label] = transform_relation(rel, after, var, position[before.label], k, tree)
        else:
            relations[after.label] = rel
    logger.debug("[REDUCE] paso [%s] σ=%s: %s filas", var, list(sigma), sum(len(r) for r in relations.values()))
    return Database(relations)


__all__ = [
    "fresh_names",
    "edge_order",
    "onestep_hypergraph",
    "onestep_query",
    "onestep_disjunction",
    "tree_for",
    "transform_relation",
    "onestep_database",
]
