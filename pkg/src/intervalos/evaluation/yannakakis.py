"""
Yannakakis booleano para consultas EJ α-acíclicas.

Una pasada de semi-joins de abajo hacia arriba sobre el join tree (postorden
desde la raíz); la consulta es verdadera si la relación raíz sigue no vacía.
Los semi-joins usan MultiIndex.isin de pandas.
"""

import networkx as nx
import pandas as pd

from ..core.database import Database
from ..core.errors import InvalidQuery, NotAcyclic
from ..core.model import Query, hypergraph_of
from ..hypergraph.gyo import JoinTree, build_join_tree
from ..logger import get_logger

logger = get_logger(__name__)


def relation_frame(q: Query, db: Database, label: str) -> pd.DataFrame:
    """DataFrame de la relación con columnas = variables del átomo (dtype object)."""
    atom = q.atom(label)
    rel = db[label]
    if not atom.schema:
        return pd.DataFrame(index=pd.RangeIndex(len(rel)))
    columns = list(atom.variable_names)
    if not rel.rows:
        return pd.DataFrame(columns=columns, dtype=object)
    return pd.DataFrame.from_records([tuple(row) for row in rel.rows], columns=columns)


def _as_index(frame: pd.DataFrame) -> pd.Index:
    if len(frame.columns) == 1:
        return pd.Index(frame.iloc[:, 0].tolist())
    return pd.MultiIndex.from_frame(frame)


def left_semi_join(left: pd.DataFrame, right: pd.DataFrame) -> pd.DataFrame:
    """Filas de `left` con pareja en `right` sobre las columnas comunes."""
    on = [c for c in left.columns if c in right.columns]
    if not on:
        # sin columnas comunes el semi-join solo exige que `right` no esté vacía
        return left if len(right) else left.iloc[0:0]
    if left.empty:
        return left
    mask = _as_index(left[on]).isin(_as_index(right[on].drop_duplicates()))
    return left.loc[mask]


def yannakakis_bool(q: Query, db: Database, join_tree: JoinTree | None = None) -> bool:
    """
    Raises:
        NotAcyclic: la consulta no tiene join tree
    """
    if any(v.is_interval for v in q.variables.values()):
        raise InvalidQuery("Yannakakis solo evalúa consultas EJ")
    tree = join_tree or build_join_tree(hypergraph_of(q))
    if tree is None:
        raise NotAcyclic(f"la consulta {q} no es α-acíclica")
    frames = {a.label: relation_frame(q, db, a.label) for a in q.atoms}
    if any(len(f.index) == 0 for f in frames.values()):
        return False
    parents = dict(nx.bfs_predecessors(tree.tree, tree.root))
    for node in nx.dfs_postorder_nodes(tree.tree, tree.root):
        parent = parents.get(node)
        if parent is None:
            continue
        frames[parent] = left_semi_join(frames[parent], frames[node])
        logger.debug("[EVAL] semi-join %s ⋉ %s → %s filas", parent, node, len(frames[parent]))
        if len(frames[parent].index) == 0:
            return False
    return len(frames[tree.root].index) > 0


__all__ = ["relation_frame", "left_semi_join", "yannakakis_bool"]
