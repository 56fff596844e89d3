"""
Definiciones literales sobre familias de conjuntos: conjunto inducido,
minimización, conformalidad, ciclo-libertad y γ-aciclicidad.

Las comprobaciones son exhaustivas sobre subconjuntos de vértices y están
acotadas por VERTEX_CAP.
"""

from collections.abc import Iterable
from itertools import combinations, permutations

import networkx as nx

from .. import config as app_config
from ..core.errors import SizeLimitExceeded
from ..core.model import Hypergraph

EdgeFamily = frozenset[frozenset[str]]


def _family(edges: Hypergraph | Iterable[Iterable[str]]) -> list[frozenset[str]]:
    if isinstance(edges, Hypergraph):
        return [vs for _, vs in edges.edges]
    return [frozenset(e) for e in edges]


def induced_set(edges: Hypergraph | Iterable[Iterable[str]], S: Iterable[str]) -> EdgeFamily:
    """E[S] = {e ∩ S : e ∈ E} ∖ {∅}."""
    target = frozenset(S)
    return frozenset(e & target for e in _family(edges) if e & target)


def minimisation(edges: Iterable[Iterable[str]]) -> EdgeFamily:
    """M(E): aristas maximales respecto de la inclusión."""
    family = {frozenset(e) for e in edges}
    return frozenset(e for e in family if not any(e < f for f in family))


def _check_cap(h: Hypergraph, cap: int | None) -> None:
    limit = app_config.VERTEX_CAP if cap is None else cap
    if len(h.vertices) > limit:
        raise SizeLimitExceeded(f"{len(h.vertices)} vértices supera el tope {limit}")


def _subsets(h: Hypergraph, min_size: int):
    vertices = sorted(h.vertices)
    for size in range(min_size, len(vertices) + 1):
        for S in combinations(vertices, size):
            yield frozenset(S)


def is_conformal(h: Hypergraph, cap: int | None = None) -> bool:
    """No existe S con |S| ≥ 3 y M(E[S]) = {S ∖ {x} : x ∈ S}."""
    _check_cap(h, cap)
    for S in _subsets(h, 3):
        if minimisation(induced_set(h, S)) == frozenset(S - {x} for x in S):
            return False
    return True


def _is_hamiltonian_cycle(S: frozenset[str], pairs: EdgeFamily) -> bool:
    if len(pairs) != len(S) or any(len(p) != 2 for p in pairs):
        return False
    g = nx.Graph(tuple(p) for p in pairs)
    return set(g.nodes) == set(S) and all(d == 2 for _, d in g.degree) and nx.is_connected(g)


def is_cycle_free(h: Hypergraph, cap: int | None = None) -> bool:
    """
    No existe tupla (v1..vn), n ≥ 3, con M(E[{v_i}]) = {{v_i, v_i+1}} ∪ {{v_n, v_1}}.
    Se recorre por subconjuntos: el orden de la tupla es el del ciclo resultante.
    """
    _check_cap(h, cap)
    for S in _subsets(h, 3):
        if _is_hamiltonian_cycle(S, minimisation(induced_set(h, S))):
            return False
    return True


def is_gamma_acyclic(h: Hypergraph, cap: int | None = None) -> bool:
    """Ciclo-libre y sin x, y, z con {x,y}, {x,z}, {x,y,z} ∈ E[{x,y,z}]."""
    if not is_cycle_free(h, cap):
        return False
    for triple in combinations(sorted(h.vertices), 3):
        induced = induced_set(h, triple)
        for x, y, z in permutations(triple):
            if {frozenset((x, y)), frozenset((x, z)), frozenset((x, y, z))} <= induced:
                return False
    return True


def drop_singleton_vertices(h: Hypergraph) -> Hypergraph:
    """Quita vértices en una sola arista y luego las aristas que quedan vacías."""
    singletons = {v for v in h.vertices if len(h.edges_of(v)) == 1}
    edges = tuple((lbl, vs - singletons) for lbl, vs in h.edges if vs - singletons)
    vertices = h.vertices - singletons
    return Hypergraph(vertices, edges, h.interval_vertices & vertices)


__all__ = [
    "EdgeFamily",
    "induced_set",
    "minimisation",
    "is_conformal",
    "is_cycle_free",
    "is_gamma_acyclic",
    "drop_singleton_vertices",
]
