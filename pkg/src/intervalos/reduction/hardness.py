"""
Construcción de dureza: una consulta IJ no ι-acíclica codifica la consulta
EJ de ciclo de largo k.

Con un ciclo de Berge (e_0, v_0, ..., e_{k-1}, v_{k-1}) en la consulta
destino, la arista e_{j-1} hace de S_j(X_{j-1}, X_j) con X_j ↔ v_{j-1}. Cada
tupla (a, b) de S_j da una tupla de e_{j-1} con [a,a] en los dos vértices del
ciclo y [-M, M] en el resto; las relaciones fuera del ciclo reciben una sola
tupla toda [-M, M].
"""

from fractions import Fraction

from ..core.database import Database, Relation, validate
from ..core.errors import InvalidQuery, NoBergeCycle
from ..core.model import Atom, Query, Variable, hypergraph_of
from ..core.rational import Interval
from ..hypergraph.berge import BergeCycle, find_berge_cycle
from ..logger import get_logger

logger = get_logger(__name__)


def cycle_query(k: int) -> Query:
    """S1(X_k, X1) ∧ S2(X1, X2) ∧ ... ∧ Sk(X_{k-1}, X_k)."""
    if k < 3:
        raise ValueError(f"el ciclo necesita k ≥ 3, llegó {k}")
    names = [f"X{j}" for j in range(1, k + 1)]
    return Query(tuple(
        Atom(f"S{j}", (Variable(names[j - 2]), Variable(names[j - 1])))
        for j in range(1, k + 1)
    ))


def _magnitude(db: Database) -> Fraction:
    values = [abs(Fraction(c)) for rel in db.values() for row in rel.rows for c in row]
    return max(values, default=Fraction(0)) + 1


def embed_cycle_query(
    target: Query,
    ej_db: Database,
    cycle: BergeCycle | None = None,
) -> tuple[Query, Database, BergeCycle]:
    """
    Base IJ para `target` tal que target(D) ⟺ ciclo_k(ej_db), con k el largo
    del ciclo de Berge usado y |D| = |ej_db| + (aristas fuera del ciclo).

    Raises:
        NoBergeCycle: target es ι-acíclica
        InvalidQuery: target tiene variables de punto
    """
    if target.kind != "IJ":
        raise InvalidQuery("la construcción de dureza requiere una consulta IJ")
    h = hypergraph_of(target)
    if cycle is None:
        cycle = find_berge_cycle(h, 3)
    if cycle is None:
        raise NoBergeCycle(f"sin ciclo de Berge de largo ≥ 3 en {h}")
    cycle.validate(h)
    k = cycle.length
    source = cycle_query(k)
    validate(ej_db, source)
    M = _magnitude(ej_db)
    full = Interval(-M, M)

    relations: dict[str, Relation] = {}
    on_cycle = {edge: j for j, edge in enumerate(cycle.edges, start=1)}
    for atom in target.atoms:
        j = on_cycle.get(atom.label)
        if j is None:
            rows = ((full,) * len(atom.schema),)
        else:
            # S_j(X_{j-1}, X_j): X_j ↔ v_{j-1}, X_{j-1} ↔ v_{j-2}
            left, right = cycle.vertices[(j - 2) % k], cycle.vertices[j - 1]
            rows = []
            for a, b in ej_db[f"S{j}"].rows:
                point = {left: Interval(Fraction(a), Fraction(a)), right: Interval(Fraction(b), Fraction(b))}
                rows.append(tuple(point.get(v.name, full) for v in atom.schema))
        relations[atom.label] = Relation(atom.label, atom.schema, tuple(rows))
    logger.info("[REDUCE] dureza: ciclo %s (k=%s), M=%s", cycle, k, M)
    return target, Database(relations), cycle


__all__ = ["cycle_query", "embed_cycle_query"]
