"""
Join multivía de peor caso óptimo (estilo leapfrog triejoin) para consultas EJ.

Cada átomo se guarda como lista ordenada de claves en el orden global de
variables; un nivel del trie es un rango [lo, hi) de esa lista con prefijo
fijo, y `seek` es un bisect. Las claves son (rango, valor) para poder
comparar Fraction (rango 0) con cadenas de bits (rango 1).
"""

from bisect import bisect_left
from collections.abc import Iterator
from dataclasses import dataclass

from ..core.database import Cell, Database
from ..core.errors import InvalidQuery
from ..core.model import Query
from ..logger import get_logger

logger = get_logger(__name__)

Key = tuple[int, object]
_TOP: Key = (9, None)


def sort_key(cell: Cell) -> Key:
    return (1, cell) if isinstance(cell, str) else (0, cell)


def variable_order(q: Query) -> list[str]:
    """Por grado decreciente (átomos que la contienen), empates lexicográficos."""
    return sorted(q.variables, key=lambda v: (-len(q.atoms_with(v)), v))


@dataclass
class _TrieAtom:
    label: str
    columns: list[str]          # variables del átomo en orden global
    keys: list[tuple[Key, ...]]
    rows: list[int]             # índice de fila original por clave

    def seek(self, prefix: tuple[Key, ...], lo: int, hi: int, key: Key) -> int:
        return bisect_left(self.keys, (*prefix, key), lo, hi)

    def end_of(self, prefix: tuple[Key, ...], lo: int, hi: int) -> int:
        return bisect_left(self.keys, (*prefix, _TOP), lo, hi)


def _build(q: Query, db: Database, order: list[str]) -> list[_TrieAtom]:
    rank = {v: i for i, v in enumerate(order)}
    out = []
    for atom in q.atoms:
        cols = sorted(atom.variable_names, key=rank.__getitem__)
        idx = [atom.variable_names.index(c) for c in cols]
        rel = db[atom.label]
        pairs = sorted(
            (tuple(sort_key(row[i]) for i in idx), n) for n, row in enumerate(rel.rows)
        )
        out.append(_TrieAtom(atom.label, cols, [k for k, _ in pairs], [n for _, n in pairs]))
    return out


def _check_ej(q: Query) -> None:
    if any(v.is_interval for v in q.variables.values()):
        raise InvalidQuery("el join multivía solo evalúa consultas EJ")


def wcoj_iter(q: Query, db: Database) -> Iterator[tuple[dict[str, Cell], dict[str, int]]]:
    """
    Recorre las asignaciones completas en orden: (valores por variable, fila
    por átomo que la realiza).
    """
    _check_ej(q)
    order = variable_order(q)
    tries = _build(q, db, order)
    if any(not t.keys for t in tries):
        return
    # átomos de aridad 0: solo exigen relación no vacía
    nullary = [t.label for t in tries if not t.columns]
    tries = [t for t in tries if t.columns]
    by_var = {v: [i for i, t in enumerate(tries) if v in t.columns] for v in order}
    ranges = [(0, len(t.keys)) for t in tries]
    prefix: list[list[Key]] = [[] for _ in tries]
    assignment: dict[str, Key] = {}

    def leapfrog(depth: int) -> Iterator[None]:
        if depth == len(order):
            yield None
            return
        var = order[depth]
        members = by_var[var]
        saved = {i: ranges[i] for i in members}
        cursor = {i: ranges[i][0] for i in members}
        key = max(tries[i].keys[cursor[i]][len(prefix[i])] for i in members)
        while True:
            agreed = True
            for i in members:
                t, hi = tries[i], saved[i][1]
                pos = t.seek(tuple(prefix[i]), cursor[i], hi, key)
                if pos >= hi:
                    for j in members:
                        ranges[j] = saved[j]
                    return
                cursor[i] = pos
                found = t.keys[pos][len(prefix[i])]
                if found != key:
                    key = found
                    agreed = False
            if not agreed:
                continue
            for i in members:
                t = tries[i]
                p = (*prefix[i], key)
                ranges[i] = (cursor[i], t.end_of(p, cursor[i], saved[i][1]))
                prefix[i].append(key)
            assignment[var] = key
            yield from leapfrog(depth + 1)
            for i in members:
                prefix[i].pop()
                cursor[i] = ranges[i][1]
                ranges[i] = saved[i]
            del assignment[var]
            if any(cursor[i] >= saved[i][1] for i in members):
                return
            key = max(tries[i].keys[cursor[i]][len(prefix[i])] for i in members)

    for _ in leapfrog(0):
        values = {v: k[1] for v, k in assignment.items()}
        witness = {label: 0 for label in nullary}
        for t in tries:
            full = tuple(assignment[c] for c in t.columns)
            witness[t.label] = t.rows[bisect_left(t.keys, full)]
        yield values, witness


def wcoj_witness(q: Query, db: Database) -> dict[str, int] | None:
    """Primera asignación completa como fila por átomo."""
    for _, rows in wcoj_iter(q, db):
        return rows
    return None


def wcoj_bool(q: Query, db: Database) -> bool:
    """Verdadera en cuanto aparece la primera asignación completa."""
    found = next(wcoj_iter(q, db), None) is not None
    logger.debug("[EVAL] wcoj: %s", found)
    return found


__all__ = ["sort_key", "variable_order", "wcoj_iter", "wcoj_witness", "wcoj_bool"]
