"""
Evaluación guiada por una descomposición en árbol.

Cada bolsa se materializa con el join multivía sobre la consulta restringida
(proyección de cada átomo que toca la bolsa, deduplicada); las bolsas forman
una consulta α-acíclica que se resuelve con Yannakakis.
"""

from ..core.database import Database, Relation, project_relation
from ..core.model import Atom, Query, Variable, hypergraph_of
from ..logger import get_logger
from ..widths.fhtw import TreeDecomposition, validate_decomposition
from .leapfrog import wcoj_iter
from .yannakakis import yannakakis_bool

logger = get_logger(__name__)


def _bag_relation(q: Query, db: Database, bag: frozenset[str], label: str) -> Relation:
    names = sorted(bag)
    schema = tuple(Variable(n) for n in names)
    atoms: list[Atom] = []
    relations: dict[str, Relation] = {}
    for atom in q.atoms:
        keep = [n for n in atom.variable_names if n in bag]
        if not keep:
            continue
        sub = f"{atom.label}@{label}"
        atoms.append(Atom(sub, tuple(v for v in atom.schema if v.name in bag)))
        relations[sub] = project_relation(db[atom.label], keep, sub)
    if not atoms:
        return Relation(label, schema, ((),) if not names else ())
    restricted = Query(tuple(atoms))
    rows = {tuple(values[n] for n in names) for values, _ in wcoj_iter(restricted, Database(relations))}
    return Relation(label, schema, tuple(sorted(rows, key=lambda r: tuple((isinstance(c, str), c) for c in r))))


def decomp_eval(q: Query, db: Database, td: TreeDecomposition) -> bool:
    """
    Raises:
        InvalidDecomposition: td no es válida para el hipergrafo de q
    """
    validate_decomposition(hypergraph_of(q), td)
    atoms: list[Atom] = []
    relations: dict[str, Relation] = {}
    for node in sorted(td.bags):
        label = f"B{node}"
        rel = _bag_relation(q, db, td.bags[node], label)
        logger.debug("[EVAL] bolsa %s %s: %s filas", label, sorted(td.bags[node]), len(rel))
        if not rel.rows:
            return False
        atoms.append(Atom(label, rel.schema, projected=True))
        relations[label] = rel
    # átomos de aridad 0 no caen en ninguna bolsa
    for atom in q.atoms:
        if not atom.schema:
            if not db[atom.label].rows:
                return False
    return yannakakis_bool(Query(tuple(atoms)), Database(relations))


__all__ = ["decomp_eval"]
