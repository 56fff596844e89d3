"""
Reducción GYO y join trees.

Reglas, aplicadas hasta punto fijo:
  (1) quitar un vértice que aparece en una sola arista;
  (2) quitar una arista contenida en otra arista distinta (la contenedora
      pasa a ser su padre en el join tree).
Una arista que queda vacía sin contenedora se retira como raíz de su
componente. El hipergrafo es α-acíclico si y solo si no queda ninguna arista.
"""

from dataclasses import dataclass

import networkx as nx

from ..core.model import Hypergraph
from ..logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class GyoStep:
    rule: int               # 1 = vértice, 2 = arista
    edge: str               # arista afectada
    vertex: str | None = None
    into: str | None = None  # contenedora (regla 2); None = arista vacía retirada


@dataclass(frozen=True, slots=True)
class JoinTree:
    """Árbol cuyos nodos son etiquetas de aristas."""

    tree: nx.Graph
    root: str

    def relabeled(self, mapping: dict[str, str]) -> "JoinTree":
        """Mismo árbol con los nodos renombrados (los que no están en `mapping` se conservan)."""
        return JoinTree(nx.relabel_nodes(self.tree, mapping, copy=True), mapping.get(self.root, self.root))

    def satisfies_connectivity(self, h: Hypergraph) -> bool:
        """Para cada vértice, los nodos cuya arista lo contiene forman un subárbol conexo."""
        for v in h.vertices:
            holders = h.edges_of(v)
            if holders and not nx.is_connected(self.tree.subgraph(holders)):
                return False
        return True


def gyo_reduce(h: Hypergraph) -> tuple[Hypergraph, list[GyoStep]]:
    """Aplica las reglas GYO de forma determinista; devuelve residuo y traza."""
    edges: dict[str, set[str]] = {lbl: set(vs) for lbl, vs in h.edges}
    trace: list[GyoStep] = []
    changed = True
    while changed and edges:
        changed = False
        # Regla 1
        counts: dict[str, list[str]] = {}
        for lbl, vs in edges.items():
            for v in vs:
                counts.setdefault(v, []).append(lbl)
        for v in sorted(counts):
            holders = counts[v]
            if len(holders) == 1:
                edges[holders[0]].discard(v)
                trace.append(GyoStep(1, holders[0], vertex=v))
                changed = True
        # Regla 2 (una retirada por vuelta: las contenciones cambian tras cada una)
        for lbl, vs in edges.items():
            into = next((o for o, ws in edges.items() if o != lbl and vs <= ws), None)
            if into is not None or (not vs and len(edges) == 1):
                trace.append(GyoStep(2, lbl, into=into))
                del edges[lbl]
                changed = True
                break
    residual_vertices = frozenset().union(*edges.values()) if edges else frozenset()
    residual = Hypergraph(
        residual_vertices,
        tuple((lbl, frozenset(vs)) for lbl, vs in edges.items()),
        h.interval_vertices & residual_vertices,
    )
    logger.debug("[GYO] %s pasos, residuo %s aristas", len(trace), len(residual.edges))
    return residual, trace


def is_alpha_acyclic(h: Hypergraph) -> bool:
    residual, _ = gyo_reduce(h)
    return not residual.edges


def build_join_tree(h: Hypergraph) -> JoinTree | None:
    """Join tree a partir de la traza GYO; None si el hipergrafo es cíclico."""
    residual, trace = gyo_reduce(h)
    if residual.edges:
        return None
    tree = nx.Graph()
    tree.add_nodes_from(h.labels)
    roots: list[str] = []
    for step in trace:
        if step.rule != 2:
            continue
        if step.into is None:
            roots.append(step.edge)
        else:
            tree.add_edge(step.edge, step.into)
    # Los componentes no comparten vértices: se enlazan por sus raíces.
    for a, b in zip(roots, roots[1:]):
        tree.add_edge(a, b)
    return JoinTree(tree, roots[-1] if roots else h.labels[0])


__all__ = ["GyoStep", "JoinTree", "gyo_reduce", "is_alpha_acyclic", "build_join_tree"]
