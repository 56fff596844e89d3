"""
El predicado de intersección y sus reescrituras sobre un árbol de segmentos.

Cada reescritura es un verificador independiente; sobre cualquier conjunto S
de intervalos de entrada del árbol todas coinciden con check_direct:

- rewriting1: existe i tal que leaf(x_i.l) tiene un ancestro en CP(x_j) para todo j ≠ i.
- rewriting2: existe σ y nodos u_1..u_k con u_k = leaf(x_σk.l), u_j ∈ CP(x_σj) ∩ anc(u_{j+1}).
- rewriting3: lo mismo en forma de bits, u_j = b_1∘...∘b_j.
- disjoint: conjuntos de tuplas ordenadas (anc/sanc según σ_{j-1} < σ_j); con
  extremos izquierdos distintos el testigo es único.

Las permutaciones se recorren en orden lexicográfico de posiciones de S.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .core.database import Database, Relation, database_epsilon
from .core.errors import InvariantViolation
from .core.model import Query
from .core.rational import Interval, intersect_all
from .logger import get_logger
from .reduction.splits import bitstring_splits
from .segtree import NodeId, SegmentTree, ancestors, is_ancestor

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class PredicateWitness:
    """σ (posiciones en S) + tupla de nodos u_1..u_k y su forma en bits."""

    permutation: tuple[int, ...]
    nodes: tuple[NodeId, ...]

    @property
    def bits(self) -> tuple[str, ...]:
        out, prev = [], ""
        for u in self.nodes:
            out.append(u[len(prev):])
            prev = u
        return tuple(out)

    def validate(self, S: Sequence[Interval], t: SegmentTree) -> None:
        """Comprueba los invariantes del testigo; InvariantViolation si falla."""
        k = len(S)
        if sorted(self.permutation) != list(range(k)) or len(self.nodes) != k:
            raise InvariantViolation(f"testigo mal formado: {self}")
        if self.nodes[-1] != t.leaf_of(S[self.permutation[-1]].l):
            raise InvariantViolation("u_k no es la hoja del extremo izquierdo de σ_k")
        for j in range(k - 1):
            if not is_ancestor(self.nodes[j], self.nodes[j + 1]):
                raise InvariantViolation(f"u_{j + 1} no es ancestro de u_{j + 2}")
            if self.nodes[j] not in t.canonical_partition(S[self.permutation[j]]):
                raise InvariantViolation(f"u_{j + 1} no está en CP(x_σ{j + 1})")


def check_direct(S: Sequence[Interval]) -> bool:
    """max l ≤ min r."""
    return intersect_all(S) is not None


def check_rewriting1(S: Sequence[Interval], t: SegmentTree) -> bool:
    cps = [set(t.canonical_partition(x)) for x in S]
    for i, x in enumerate(S):
        anc = set(ancestors(t.leaf_of(x.l)))
        if all(cps[j] & anc for j in range(len(S)) if j != i):
            return True
    return False


def _chain(S: Sequence[Interval], t: SegmentTree, sigma: tuple[int, ...]) -> tuple[NodeId, ...] | None:
    """Única tupla de nodos de la reescritura 2 para σ fija, o None."""
    k = len(sigma)
    nodes: list[NodeId] = [t.leaf_of(S[sigma[-1]].l)]
    for j in range(k - 2, -1, -1):
        below = nodes[0]
        candidates = [v for v in t.canonical_partition(S[sigma[j]]) if is_ancestor(v, below)]
        if len(candidates) > 1:
            raise InvariantViolation(
                f"σ={sigma}: {len(candidates)} nodos de CP sobre el camino de {below!r}"
            )
        if not candidates:
            return None
        nodes.insert(0, candidates[0])
    return tuple(nodes)


def check_rewriting2(S: Sequence[Interval], t: SegmentTree) -> PredicateWitness | None:
    for sigma in permutations(range(len(S))):
        nodes = _chain(S, t, sigma)
        if nodes is not None:
            return PredicateWitness(sigma, nodes)
    return None


def check_rewriting3(S: Sequence[Interval], t: SegmentTree) -> PredicateWitness | None:
    k = len(S)
    cps = [set(t.canonical_partition(x)) for x in S]
    for sigma in permutations(range(k)):
        leaf = t.leaf_of(S[sigma[-1]].l)
        for parts in bitstring_splits(leaf, k):
            prefix, nodes = "", []
            for b in parts:
                prefix += b
                nodes.append(prefix)
            if all(nodes[j] in cps[sigma[j]] for j in range(k - 1)):
                return PredicateWitness(sigma, tuple(nodes))
    return None


def check_disjoint(S: Sequence[Interval], t: SegmentTree) -> list[PredicateWitness]:
    """
    Todos los (σ, tupla) de los conjuntos de tuplas ordenadas que satisfacen el
    predicado disjunto. v_{j-1} puede igualar a v_j solo si σ_{j-1} < σ_j.
    """
    k = len(S)
    witnesses: list[PredicateWitness] = []
    for sigma in permutations(range(k)):
        nodes: list[NodeId] = [t.leaf_of(S[sigma[-1]].l)]
        ok = True
        for j in range(k - 2, -1, -1):
            below = nodes[0]
            # v_{k-1} siempre admite anc; para j < k-1 la inclusión depende del orden de σ
            strict = j < k - 2 and not sigma[j] < sigma[j + 1]
            candidates = [
                v for v in t.canonical_partition(S[sigma[j]])
                if is_ancestor(v, below) and not (strict and v == below)
            ]
            if not candidates:
                ok = False
                break
            nodes.insert(0, candidates[0])
        if ok:
            witnesses.append(PredicateWitness(sigma, tuple(nodes)))
    return witnesses


def perturb_left_endpoints(db: Database, q: Query) -> Database:
    """
    Relación i (1..n, orden de átomos): [x.l + i·δ, x.r + n·δ] con δ = ε/n, de
    modo que n·δ < hueco mínimo. Intervalos de relaciones distintas quedan con
    extremos izquierdos distintos y las intersecciones no cambian.
    """
    n = len(q.atoms)
    delta = database_epsilon(db) / n
    shifted: dict[str, Relation] = dict(db.items())
    for i, atom in enumerate(q.atoms, start=1):
        if atom.label not in db:
            continue
        rel = db[atom.label]
        left, right = Fraction(i) * delta, Fraction(n) * delta
        rows = tuple(
            tuple(c.shifted(left, right) if isinstance(c, Interval) else c for c in row)
            for row in rel.rows
        )
        shifted[atom.label] = Relation(rel.name, rel.schema, rows, rel.provenance)
    logger.debug("[PREDICATE] perturbación δ=%s sobre %s relaciones", delta, n)
    return Database(shifted)


__all__ = [
    "PredicateWitness",
    "check_direct",
    "check_rewriting1",
    "check_rewriting2",
    "check_rewriting3",
    "check_disjoint",
    "perturb_left_endpoints",
]
