"""
Ciclos de Berge, ι-aciclicidad y Berge-aciclicidad.

Un ciclo de Berge de longitud n ≥ 2 es (e1, v1, e2, v2, ..., en, vn, e1) con
aristas distintas, vértices distintos y v_i ∈ e_i ∩ e_{i+1}. Un hipergrafo es
ι-acíclico si no tiene ciclos de Berge de longitud > 2, y Berge-acíclico si
no tiene ninguno.
"""

from dataclasses import dataclass

import networkx as nx

from ..core.errors import InvariantViolation
from ..core.model import Hypergraph
from ..logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class BergeCycle:
    """edges[i] y edges[i+1] (cíclico) comparten vertices[i]."""

    edges: tuple[str, ...]
    vertices: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def validate(self, h: Hypergraph) -> None:
        n = self.length
        if n < 2 or len(self.vertices) != n:
            raise InvariantViolation(f"ciclo de Berge mal formado: {self}")
        if len(set(self.edges)) != n or len(set(self.vertices)) != n:
            raise InvariantViolation(f"aristas o vértices repetidos: {self}")
        for i, v in enumerate(self.vertices):
            if v not in h.edge(self.edges[i]) or v not in h.edge(self.edges[(i + 1) % n]):
                raise InvariantViolation(f"{v} no está en {self.edges[i]} ∩ {self.edges[(i + 1) % n]}")

    def __str__(self) -> str:
        parts = []
        for e, v in zip(self.edges, self.vertices):
            parts += [e, f"[{v}]"]
        return "–".join([*parts, self.edges[0]])


def incidence_graph(h: Hypergraph) -> nx.Graph:
    """Grafo bipartito aristas ↔ vértices; nodos ("e", etiqueta) y ("v", nombre)."""
    g = nx.Graph()
    for lbl, vs in h.edges:
        g.add_node(("e", lbl), kind="edge")
        for v in vs:
            g.add_node(("v", v), kind="vertex")
            g.add_edge(("e", lbl), ("v", v))
    return g


def find_berge_cycle(h: Hypergraph, min_len: int = 3) -> BergeCycle | None:
    """
    Búsqueda en profundidad sobre el grafo de incidencia con caminos simples
    (aristas y vértices sin repetir). Devuelve el primer ciclo de longitud
    ≥ min_len en orden determinista, o None.
    """
    if min_len < 2:
        raise ValueError("min_len debe ser ≥ 2")
    g = incidence_graph(h)
    labels = list(h.labels)

    def neighbours(node):
        return sorted(g.neighbors(node), key=lambda n: (n[0], labels.index(n[1]) if n[0] == "e" else n[1]))

    def extend(path_e: list[str], path_v: list[str]) -> BergeCycle | None:
        current = ("e", path_e[-1])
        for _, v in neighbours(current):
            if v in path_v:
                continue
            if len(path_e) >= min_len and path_e[0] in h.edges_of(v) and len(path_e) >= 2:
                return BergeCycle(tuple(path_e), tuple(path_v + [v]))
            for _, e in neighbours(("v", v)):
                if e in path_e:
                    continue
                found = extend(path_e + [e], path_v + [v])
                if found is not None:
                    return found
        return None

    for start in labels:
        cycle = extend([start], [])
        if cycle is not None:
            cycle.validate(h)
            logger.debug("[BERGE] ciclo %s (longitud %s)", cycle, cycle.length)
            return cycle
    return None


def is_iota_acyclic(h: Hypergraph) -> bool:
    """Sin ciclos de Berge de longitud > 2."""
    return find_berge_cycle(h, 3) is None


def is_berge_acyclic(h: Hypergraph) -> bool:
    return find_berge_cycle(h, 2) is None


def is_iota_acyclic_semantic(h: Hypergraph) -> bool:
    """Cada miembro de τ(h) es α-acíclico (enumeración completa, acotada por TAU_MAX_MEMBERS)."""
    from ..reduction.tau import tau
    from .gyo import is_alpha_acyclic

    return all(is_alpha_acyclic(member) for member in tau(h))


__all__ = [
    "BergeCycle",
    "incidence_graph",
    "find_berge_cycle",
    "is_iota_acyclic",
    "is_berge_acyclic",
    "is_iota_acyclic_semantic",
]
