"""
Ancho hipertree fraccional por órdenes de eliminación.

fhtw(H) = min sobre órdenes de eliminación del máximo ρ* de las bolsas
generadas. Al eliminar v con E ya eliminados, la bolsa es v más los vértices
no eliminados alcanzables desde v pasando solo por E en el grafo primal. La
búsqueda es una programación dinámica sobre subconjuntos eliminados
(2^n estados, n ≤ FHTW_VERTEX_CAP).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

import networkx as nx

from .. import config as app_config
from ..core.errors import InvalidDecomposition, InvariantViolation, SizeLimitExceeded
from ..core.model import Hypergraph
from ..hypergraph.isomorphism import isomorphism_classes
from ..logger import get_logger
from ..reduction.simplify import simplify_hypergraphs
from ..reduction.tau import tau
from .cover import EdgeCover, fractional_edge_cover

logger = get_logger(__name__)


@dataclass(frozen=True)
class TreeDecomposition:
    """(T, χ): `bags` por nodo del árbol `tree`."""

    bags: dict[int, frozenset[str]]
    tree: nx.Graph = field(compare=False)

    @property
    def width_bags(self) -> list[frozenset[str]]:
        return [self.bags[n] for n in sorted(self.bags)]


def validate_decomposition(h: Hypergraph, td: TreeDecomposition) -> None:
    """
    Raises:
        InvalidDecomposition: el árbol no es árbol, alguna arista no cabe en una
            bolsa, o las bolsas de un vértice no forman un subárbol conexo
    """
    if set(td.tree.nodes) != set(td.bags):
        raise InvalidDecomposition("nodos del árbol y bolsas no coinciden")
    if td.bags and not nx.is_tree(td.tree):
        raise InvalidDecomposition("la estructura no es un árbol")
    for lbl, vs in h.edges:
        if not any(vs <= bag for bag in td.bags.values()):
            raise InvalidDecomposition(f"la arista {lbl} no cabe en ninguna bolsa")
    for v in h.vertices:
        holders = [n for n, bag in td.bags.items() if v in bag]
        if not holders:
            raise InvalidDecomposition(f"el vértice {v} no aparece en ninguna bolsa")
        if not nx.is_connected(td.tree.subgraph(holders)):
            raise InvalidDecomposition(f"las bolsas de {v} no son conexas")


# ---------------------------------------------------------------------------
# Programación dinámica sobre subconjuntos
# ---------------------------------------------------------------------------

class _Eliminator:
    def __init__(self, h: Hypergraph):
        self.h = h
        self.names = sorted(h.vertices)
        index = {v: i for i, v in enumerate(self.names)}
        self.adj = [0] * len(self.names)
        for _, vs in h.edges:
            mask = sum(1 << index[v] for v in vs)
            for v in vs:
                self.adj[index[v]] |= mask & ~(1 << index[v])

    def bag(self, eliminated: int, v: int) -> int:
        """Máscara de {v} ∪ vecinos no eliminados alcanzables vía `eliminated`."""
        seen = 1 << v
        frontier = [v]
        out = 1 << v
        while frontier:
            u = frontier.pop()
            for w in range(len(self.names)):
                bit = 1 << w
                if self.adj[u] & bit and not seen & bit:
                    seen |= bit
                    if eliminated & bit:
                        frontier.append(w)
                    else:
                        out |= bit
        return out

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(n for i, n in enumerate(self.names) if mask >> i & 1)

    def cost(self, mask: int) -> Fraction:
        return fractional_edge_cover(self.h, self.names_of(mask)).value


def fhtw(h: Hypergraph, cap: int | None = None) -> tuple[Fraction, TreeDecomposition]:
    """
    Valor exacto y descomposición testigo que lo alcanza.

    Raises:
        SizeLimitExceeded: más de FHTW_VERTEX_CAP vértices
    """
    limit = app_config.FHTW_VERTEX_CAP if cap is None else cap
    n = len(h.vertices)
    if n > limit:
        raise SizeLimitExceeded(f"fhtw: {n} vértices supera el tope {limit}")
    if n == 0:
        tree = nx.Graph()
        tree.add_node(0)
        return Fraction(0), TreeDecomposition({0: frozenset()}, tree)

    elim = _Eliminator(h)
    full = (1 << n) - 1
    best: list[Fraction | None] = [None] * (full + 1)
    choice = [0] * (full + 1)
    best[0] = Fraction(0)
    for mask in range(1, full + 1):
        for v in range(n):
            if not mask >> v & 1:
                continue
            prev = mask ^ (1 << v)
            value = max(best[prev], elim.cost(elim.bag(prev, v)))
            if best[mask] is None or value < best[mask]:
                best[mask], choice[mask] = value, v

    order: list[int] = []
    mask = full
    while mask:
        order.append(choice[mask])
        mask ^= 1 << choice[mask]
    order.reverse()

    td = _decomposition(elim, order)
    value = best[full]
    width = decomposition_width(h, td)
    if width != value:
        raise InvariantViolation(f"el testigo tiene ancho {width}, se esperaba {value}")
    logger.debug("[WIDTHS] fhtw=%s orden=%s", value, [elim.names[v] for v in order])
    return value, td


def _decomposition(elim: _Eliminator, order: list[int]) -> TreeDecomposition:
    position = {v: t for t, v in enumerate(order)}
    bags: dict[int, frozenset[str]] = {}
    tree = nx.Graph()
    eliminated = 0
    for t, v in enumerate(order):
        mask = elim.bag(eliminated, v)
        bags[t] = elim.names_of(mask)
        tree.add_node(t)
        later = [position[u] for u in range(len(elim.names)) if mask >> u & 1 and u != v]
        if later:
            tree.add_edge(t, min(later))
        elif t + 1 < len(order):
            tree.add_edge(t, t + 1)
        eliminated |= 1 << v
    return TreeDecomposition(bags, tree)


def decomposition_width(h: Hypergraph, td: TreeDecomposition) -> Fraction:
    return max((fractional_edge_cover(h, bag).value for bag in td.bags.values()), default=Fraction(0))


# ---------------------------------------------------------------------------
# Ancho ij (cota superior vía fhtw) y predicción de tamaños
# ---------------------------------------------------------------------------

def ijw_fhtw_upper(h: Hypergraph, cap: int | None = None) -> Fraction:
    """max(1, max fhtw sobre los miembros simplificados de τ(h)) ≥ ijw(h)."""
    members = simplify_hypergraphs(tau(h))
    return max([Fraction(1), *(fhtw(m, cap)[0] for m in members)])


def predict_counts(h: Hypergraph) -> tuple[int, dict[str, int]]:
    """(∏ k_[X]!, por arista ∏ k_[X] sobre sus variables de join)."""
    joins = h.join_vertices()
    queries = prod(factorial(len(h.edges_of(v))) for v in joins)
    variants = {
        lbl: prod(len(h.edges_of(v)) for v in joins if v in vs)
        for lbl, vs in h.edges
    }
    return queries, variants


@dataclass(frozen=True)
class MemberWidth:
    hypergraph: Hypergraph
    value: Fraction
    decomposition: TreeDecomposition
    bag_covers: tuple[EdgeCover, ...]
    cls: int


@dataclass(frozen=True)
class WidthAnalysis:
    tau_count: int
    members: tuple[MemberWidth, ...]
    classes: tuple[tuple[int, ...], ...]
    upper: Fraction
    exact: bool

    def class_values(self) -> list[Fraction]:
        return [self.members[c[0]].value for c in self.classes]


def width_report(h: Hypergraph, cap: int | None = None, iso_cap: int | None = None) -> WidthAnalysis:
    """
    fhtw de cada miembro simplificado de τ(h), clases de isomorfismo y la
    cota superior. `exact` solo cuando la cota vale 1 (subw = fhtw = 1).
    """
    members = tau(h)
    simplified = simplify_hypergraphs(members)
    classes = isomorphism_classes(simplified, iso_cap)
    class_of = {i: c for c, group in enumerate(classes) for i in group}
    rows: list[MemberWidth] = []
    for i, m in enumerate(simplified):
        value, td = fhtw(m, cap)
        validate_decomposition(m, td)
        covers = tuple(fractional_edge_cover(m, td.bags[n]) for n in sorted(td.bags))
        rows.append(MemberWidth(m, value, td, covers, class_of[i]))
    upper = max([Fraction(1), *(r.value for r in rows)])
    logger.info(
        "[WIDTHS] τ=%s, simplificados=%s, clases=%s, cota=%s",
        len(members), len(simplified), len(classes), upper,
    )
    return WidthAnalysis(len(members), tuple(rows), tuple(tuple(c) for c in classes), upper, upper == 1)


__all__ = [
    "TreeDecomposition",
    "validate_decomposition",
    "fhtw",
    "decomposition_width",
    "ijw_fhtw_upper",
    "predict_counts",
    "MemberWidth",
    "WidthAnalysis",
    "width_report",
]
