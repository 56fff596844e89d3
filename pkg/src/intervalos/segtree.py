"""
Árbol de segmentos sobre un conjunto finito de intervalos cerrados.

Con los extremos ordenados p1 < ... < pm, las hojas son los 2m+1 segmentos
elementales (-inf,p1), [p1,p1], (p1,p2), ..., [pm,pm], (pm,+inf), rellenados a
la derecha hasta una potencia de dos con hojas vacías. Los nodos se guardan en
disposición de heap (raíz = 1, hijos 2i y 2i+1) y se identifican por cadena de
bits: raíz "", hijo izquierdo b+"0", derecho b+"1". u es ancestro de v si y
solo si u es prefijo de v.

Cada intervalo se inserta en los nodos maximales cuyo segmento contiene
(seg(v) ⊆ x y seg(padre(v)) ⊄ x): esa es su partición canónica CP(x).
"""

from bisect import bisect_left
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core.errors import UnknownInterval
from .core.rational import Interval, format_rational
from .logger import get_logger

logger = get_logger(__name__)

NodeId = str


@dataclass(frozen=True, slots=True)
class Segment:
    """Segmento de la recta con extremos abiertos/cerrados; None = infinito."""

    lo: Fraction | None
    hi: Fraction | None
    lo_closed: bool
    hi_closed: bool
    empty: bool = False

    def contains(self, p: Fraction) -> bool:
        if self.empty:
            return False
        above = self.lo is None or p > self.lo or (self.lo_closed and p == self.lo)
        below = self.hi is None or p < self.hi or (self.hi_closed and p == self.hi)
        return above and below

    def within(self, x: Interval) -> bool:
        """seg ⊆ [x.l, x.r] (los segmentos no acotados nunca lo están)."""
        if self.empty:
            return True
        if self.lo is None or self.hi is None:
            return False
        return self.lo >= x.l and self.hi <= x.r

    def meets(self, x: Interval) -> bool:
        if self.empty:
            return False
        left_of = self.hi is not None and (self.hi < x.l or (self.hi == x.l and not self.hi_closed))
        right_of = self.lo is not None and (self.lo > x.r or (self.lo == x.r and not self.lo_closed))
        return not (left_of or right_of)

    def __str__(self) -> str:
        if self.empty:
            return "∅"
        lo = "-inf" if self.lo is None else format_rational(self.lo)
        hi = "+inf" if self.hi is None else format_rational(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo},{hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True, slots=True)
class CanonicalPartition:
    interval: Interval
    nodes: tuple[NodeId, ...]

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __contains__(self, node: object) -> bool:
        return node in self.nodes


def is_ancestor(u: NodeId, v: NodeId) -> bool:
    """u ∈ anc(v) (incluye u == v)."""
    return v.startswith(u)


def ancestors(v: NodeId) -> list[NodeId]:
    """anc(v) de la raíz a v, ambos incluidos."""
    return [v[:i] for i in range(len(v) + 1)]


class SegmentTree:
    """
    Árbol completo con hojas de profundidad uniforme.

    Args:
        intervals: intervalos cerrados de entrada (lista no vacía; se admiten repetidos)
    """

    def __init__(self, intervals: Sequence[Interval]):
        if not intervals:
            raise ValueError("el árbol de segmentos necesita al menos un intervalo")
        self.inputs: tuple[Interval, ...] = tuple(intervals)
        self.points: list[Fraction] = sorted({p for x in self.inputs for p in (x.l, x.r)})
        real = 2 * len(self.points) + 1
        self.depth = max(1, (real - 1).bit_length())
        self.leaf_count = 1 << self.depth
        self._real_leaves = real
        self._segments: dict[int, Segment] = {}
        self._canonical: dict[int, list[int]] = {}
        self._cp_cache: dict[tuple[Fraction, Fraction], tuple[NodeId, ...]] = {}
        for idx, x in enumerate(self.inputs):
            for node in self._insert(x):
                self._canonical.setdefault(self._heap(node), []).append(idx)
        logger.debug(
            "[SEGTREE] %s intervalos, %s extremos, %s hojas, altura %s",
            len(self.inputs), len(self.points), self.leaf_count, self.depth,
        )

    # -----------------------------------------------------------------------
    # Geometría de nodos
    # -----------------------------------------------------------------------

    @property
    def height(self) -> int:
        return self.depth

    @staticmethod
    def _heap(node: NodeId) -> int:
        return (1 << len(node)) | (int(node, 2) if node else 0)

    def _leaf_range(self, node: NodeId) -> tuple[int, int]:
        """Hojas [first, last) bajo el nodo."""
        shift = self.depth - len(node)
        first = (int(node, 2) if node else 0) << shift
        return first, first + (1 << shift)

    def _leaf_segment(self, j: int) -> Segment:
        if j >= self._real_leaves:
            return Segment(None, None, False, False, empty=True)
        i, odd = divmod(j, 2)
        if odd:
            p = self.points[i]
            return Segment(p, p, True, True)
        lo = self.points[i - 1] if i > 0 else None
        hi = self.points[i] if i < len(self.points) else None
        return Segment(lo, hi, False, False)

    def segment(self, node: NodeId) -> Segment:
        """seg(v): unión de los segmentos elementales bajo v."""
        key = self._heap(node)
        seg = self._segments.get(key)
        if seg is None:
            first, end = self._leaf_range(node)
            last = min(end, self._real_leaves) - 1
            if first > last:
                seg = Segment(None, None, False, False, empty=True)
            else:
                a, b = self._leaf_segment(first), self._leaf_segment(last)
                seg = Segment(a.lo, b.hi, a.lo_closed, b.hi_closed)
            self._segments[key] = seg
        return seg

    # -----------------------------------------------------------------------
    # Inserción (nodos maximales contenidos en x)
    # -----------------------------------------------------------------------

    def _insert(self, x: Interval) -> list[NodeId]:
        found: list[NodeId] = []
        stack: list[NodeId] = [""]
        while stack:
            node = stack.pop()
            seg = self.segment(node)
            if seg.empty:
                continue
            if seg.within(x):
                found.append(node)
            elif seg.meets(x) and len(node) < self.depth:
                # derecho primero: la pila devuelve los nodos de izquierda a derecha
                stack.append(node + "1")
                stack.append(node + "0")
        return found

    def canonical_partition(self, x: Interval) -> CanonicalPartition:
        """
        CP(x): nodos cuyos segmentos particionan x, de izquierda a derecha.

        Raises:
            UnknownInterval: si algún extremo de x no está en la rejilla
        """
        key = (x.l, x.r)
        nodes = self._cp_cache.get(key)
        if nodes is None:
            for p in key:
                pos = bisect_left(self.points, p)
                if pos == len(self.points) or self.points[pos] != p:
                    raise UnknownInterval(f"extremo {format_rational(p)} fuera de la rejilla del árbol")
            nodes = tuple(self._insert(x))
            self._cp_cache[key] = nodes
        return CanonicalPartition(x, nodes)

    def leaf_of(self, p: Fraction) -> NodeId:
        """leaf(p): la hoja cuyo segmento elemental contiene p."""
        pos = bisect_left(self.points, p)
        j = 2 * pos + 1 if pos < len(self.points) and self.points[pos] == p else 2 * pos
        return format(j, f"0{self.depth}b")

    def canonical_subset(self, node: NodeId) -> list[Interval]:
        """I_v: intervalos de entrada guardados en el nodo."""
        return [self.inputs[i] for i in self._canonical.get(self._heap(node), [])]

    def stab_query(self, p: Fraction) -> list[Interval]:
        """Intervalos de entrada que contienen p: ⋃ I_v sobre anc(leaf(p))."""
        hits: list[int] = []
        for node in ancestors(self.leaf_of(p)):
            hits.extend(self._canonical.get(self._heap(node), []))
        return [self.inputs[i] for i in sorted(set(hits))]

    def nodes(self) -> list[NodeId]:
        """Todos los nodos en preorden."""
        out: list[NodeId] = []
        stack = [""]
        while stack:
            node = stack.pop()
            out.append(node)
            if len(node) < self.depth:
                stack.append(node + "1")
                stack.append(node + "0")
        return out

    def dump(self) -> str:
        """Volcado textual: nodo, segmento y subconjunto canónico (raíz = ε)."""
        lines = []
        for node in self.nodes():
            seg = self.segment(node)
            if seg.empty:
                continue
            subset = ", ".join(str(x) for x in self.canonical_subset(node))
            lines.append(f"{'  ' * len(node)}{node or 'ε'}  {seg}  {{{subset}}}")
        return "\n".join(lines)


def build(intervals: Sequence[Interval]) -> SegmentTree:
    """Construye el árbol sobre `intervals` (Alg. de inserción en nodos maximales)."""
    return SegmentTree(intervals)


__all__ = [
    "NodeId",
    "Segment",
    "CanonicalPartition",
    "SegmentTree",
    "build",
    "is_ancestor",
    "ancestors",
]
