"""
Forma canónica de hipergrafos pequeños (etiquetas ignoradas, multiconjunto de aristas).

Primero se refinan colores tipo Weisfeiler-Lehman sobre el grafo de
incidencia; luego se prueban solo las biyecciones que respetan las celdas de
color, en orden de color, y se toma la lista de aristas mínima.
"""

from itertools import permutations, product

from .. import config as app_config
from ..core.errors import SizeLimitExceeded
from ..core.model import Hypergraph
from .berge import incidence_graph

CanonicalForm = tuple[int, tuple[tuple[int, ...], ...]]


def _refined_vertex_cells(h: Hypergraph) -> list[list[str]]:
    g = incidence_graph(h)
    colors = {node: (node[0], g.degree(node)) for node in g.nodes}
    ranked = {sig: i for i, sig in enumerate(sorted(set(colors.values())))}
    colors = {node: ranked[sig] for node, sig in colors.items()}
    while True:
        sigs = {
            node: (colors[node], tuple(sorted(colors[n] for n in g.neighbors(node))))
            for node in g.nodes
        }
        ranked = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        refined = {node: ranked[sig] for node, sig in sigs.items()}
        if len(set(refined.values())) == len(set(colors.values())):
            break
        colors = refined
    cells: dict[int, list[str]] = {}
    for node, color in colors.items():
        if node[0] == "v":
            cells.setdefault(color, []).append(node[1])
    # vértices aislados (sin aristas) no están en el grafo de incidencia
    isolated = sorted(h.vertices - {n[1] for n in g.nodes if n[0] == "v"})
    ordered = [sorted(cells[c]) for c in sorted(cells)]
    return ([isolated] if isolated else []) + ordered


def canonical_form(h: Hypergraph, cap: int | None = None) -> CanonicalForm:
    limit = app_config.VERTEX_CAP if cap is None else cap
    if len(h.vertices) > limit:
        raise SizeLimitExceeded(f"isomorfismo: {len(h.vertices)} vértices supera el tope {limit}")
    cells = _refined_vertex_cells(h)
    edge_sets = [vs for _, vs in h.edges]
    best: tuple[tuple[int, ...], ...] | None = None
    for choice in product(*(permutations(cell) for cell in cells)):
        index = {v: i for i, v in enumerate(v for cell in choice for v in cell)}
        form = tuple(sorted(tuple(sorted(index[v] for v in e)) for e in edge_sets))
        if best is None or form < best:
            best = form
    return len(h.vertices), best or ()


def isomorphism_classes(hs: list[Hypergraph], cap: int | None = None) -> list[list[int]]:
    """Agrupa índices de `hs` por forma canónica, en orden de primera aparición."""
    groups: dict[CanonicalForm, list[int]] = {}
    for i, h in enumerate(hs):
        groups.setdefault(canonical_form(h, cap), []).append(i)
    return list(groups.values())


__all__ = ["CanonicalForm", "canonical_form", "isomorphism_classes"]
