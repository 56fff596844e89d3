"""
Oráculo por fuerza bruta: busca una tupla por átomo tal que, para cada
variable, los intervalos elegidos se cortan (variables de intervalo) o los
valores coinciden (variables de punto).
"""

from fractions import Fraction
from math import prod

from .. import config as app_config
from ..core.database import Cell, Database, validate
from ..core.errors import TooLargeForOracle
from ..core.model import Query
from ..core.rational import Interval
from ..logger import get_logger

logger = get_logger(__name__)

Witness = dict[str, int]


def check_witness(q: Query, db: Database, witness: Witness) -> bool:
    """Comprobación directa de una elección de filas (índices por etiqueta de átomo)."""
    if set(witness) != set(q.labels):
        return False
    for name, var in q.variables.items():
        cells = [
            db[a.label].rows[witness[a.label]][a.variable_names.index(name)]
            for a in q.atoms_with(name)
        ]
        if var.is_interval:
            if max(c.l for c in cells) > min(c.r for c in cells):
                return False
        elif any(c != cells[0] for c in cells[1:]):
            return False
    return True


def oracle_witness(q: Query, db: Database, max_cells: int | None = None) -> Witness | None:
    """
    Búsqueda con retroceso; poda al primer conflicto por variable.

    Raises:
        TooLargeForOracle: ∏ |R| supera ORACLE_MAX_CELLS
    """
    validate(db, q)
    limit = app_config.ORACLE_MAX_CELLS if max_cells is None else max_cells
    sizes = [len(db[a.label]) for a in q.atoms]
    if 0 in sizes:
        return None
    total = prod(sizes)
    if total > limit:
        raise TooLargeForOracle(f"∏|R| = {total} supera el tope {limit}")

    # relaciones pequeñas primero
    atoms = sorted(q.atoms, key=lambda a: len(db[a.label]))
    intervals: dict[str, tuple[Fraction, Fraction]] = {}
    points: dict[str, Cell] = {}
    chosen: Witness = {}

    def extend(depth: int) -> bool:
        if depth == len(atoms):
            return True
        atom = atoms[depth]
        for idx, row in enumerate(db[atom.label].rows):
            saved_i, saved_p = dict(intervals), dict(points)
            ok = True
            for var, cell in zip(atom.schema, row):
                if var.is_interval:
                    assert isinstance(cell, Interval)
                    lo, hi = intervals.get(var.name, (cell.l, cell.r))
                    lo, hi = max(lo, cell.l), min(hi, cell.r)
                    if lo > hi:
                        ok = False
                        break
                    intervals[var.name] = (lo, hi)
                else:
                    known = points.get(var.name)
                    if known is not None and known != cell:
                        ok = False
                        break
                    points[var.name] = cell
            if ok:
                chosen[atom.label] = idx
                if extend(depth + 1):
                    return True
            intervals.clear()
            intervals.update(saved_i)
            points.clear()
            points.update(saved_p)
        chosen.pop(atom.label, None)
        return False

    found = extend(0)
    logger.debug("[EVAL] oráculo: %s (∏|R|=%s)", found, total)
    return dict(chosen) if found else None


def oracle_eval(q: Query, db: Database, max_cells: int | None = None) -> bool:
    return oracle_witness(q, db, max_cells) is not None


__all__ = ["Witness", "check_witness", "oracle_witness", "oracle_eval"]
