"""
Reducción hacia atrás: de una base EJ con cadenas de bits de largo fijo b a
una base IJ de igual tamaño.

Para cada variable de intervalo [X] del átomo IJ se concatenan las columnas
X1..Xi del átomo EJ correspondiente y la cadena resultante u se lleva a su
segmento diádico [0.u, 0.u + 2^-|u|). Una variable que no llegó a la
consulta EJ (de un solo átomo) recibe F(ε) = [0, 1). Los segmentos abiertos
por la derecha se cierran restando el ε de la base producida.
"""

import re
from fractions import Fraction

from ..core.database import Database, Relation, Row
from ..core.errors import MissingRelation, MixedBitstringLengths, SelfJoinUnsupported
from ..core.model import Atom, Query, Variable
from ..core.rational import Interval, closing_epsilon, dyadic_interval
from ..logger import get_logger

logger = get_logger(__name__)


def _split_columns(atom: Atom, var: str) -> list[int]:
    """Posiciones de X1..Xi en el esquema EJ, en orden de índice."""
    by_origin = [(v.index, pos) for pos, v in enumerate(atom.schema) if v.origin == var]
    if not by_origin:
        pattern = re.compile(rf"^{re.escape(var)}_*(\d+)$")
        for pos, v in enumerate(atom.schema):
            m = pattern.match(v.name)
            if m and v.origin is None:
                by_origin.append((int(m.group(1)), pos))
    return [pos for _, pos in sorted(by_origin)]


def _bit_length(db: Database, q: Query) -> int | None:
    lengths = {
        len(cell)
        for atom in q.atoms
        for row in db[atom.label].rows
        for cell in row
        if isinstance(cell, str)
    }
    if len(lengths) > 1:
        raise MixedBitstringLengths(f"longitudes de cadena distintas: {sorted(lengths)}")
    return next(iter(lengths), None)


def _ej_atom_for(q_ej: Query, label: str) -> Atom:
    for a in q_ej.atoms:
        if a.origin == label:
            return a
    raise MissingRelation(f"la consulta EJ no tiene átomo para {label!r}")


def backward_transform(q_ej: Query, db_ej: Database, q_ij: Query) -> tuple[Query, Database]:
    """
    Devuelve (q_ij, D) con |D| = |D̃| y q_ij(D) ⟺ q_ej(D̃).

    Raises:
        SelfJoinUnsupported: q_ij repite un nombre de relación
        MixedBitstringLengths: las cadenas de D̃ no tienen todas el mismo largo
    """
    relations = [a.relation for a in q_ij.atoms]
    if len(relations) != len(set(relations)):
        raise SelfJoinUnsupported(f"relaciones repetidas en la consulta IJ: {relations}")
    bits = _bit_length(db_ej, q_ej)

    # por átomo: filas con segmentos aún abiertos por la derecha
    staged: dict[str, list[list[tuple[Fraction, Fraction, bool] | Fraction | str]]] = {}
    endpoints: set[Fraction] = {Fraction(0), Fraction(1)}
    count = 0
    for atom in q_ij.atoms:
        ej_atom = _ej_atom_for(q_ej, atom.label)
        rel = db_ej[ej_atom.label]
        plan: list[tuple[Variable, list[int]]] = [
            (v, _split_columns(ej_atom, v.name) if v.is_interval else [rel.column(v.name)])
            for v in atom.schema
        ]
        rows = []
        for row in rel.rows:
            cells = []
            for v, cols in plan:
                if v.is_interval:
                    lo, hi = dyadic_interval("".join(row[c] for c in cols))
                    endpoints.update((lo, hi))
                    cells.append((lo, hi, True))
                    count += 1
                else:
                    cells.append(row[cols[0]])
            rows.append(cells)
        staged[atom.label] = rows

    eps = closing_epsilon(sorted(endpoints), count)
    out: dict[str, Relation] = {}
    for atom in q_ij.atoms:
        closed: list[Row] = [
            tuple(Interval(c[0], c[1] - eps) if isinstance(c, tuple) else c for c in cells)
            for cells in staged[atom.label]
        ]
        out[atom.label] = Relation(atom.label, atom.schema, tuple(closed))
    logger.info("[REDUCE] hacia atrás: b=%s, %s filas, ε=%s", bits, sum(len(r) for r in out.values()), eps)
    return q_ij, Database(out)


__all__ = ["backward_transform"]
