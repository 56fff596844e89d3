"""
Número de cobertura fraccional por aristas ρ*(S).

    min Σ_e x_e   s.a.  Σ_{e ∋ v} x_e ≥ 1  (v ∈ S),  x ≥ 0

Se resuelve el dual de empaquetamiento (max Σ y_v, Σ_{v ∈ e∩S} y_v ≤ 1) con
el simplex exacto; las x_e salen de los duales. Cada resultado se verifica
contra el certificado primal/dual antes de devolverlo.
"""

import threading
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from cachetools import LRUCache

from .. import config as app_config
from ..core.errors import InvariantViolation, UncoverableVertex
from ..core.model import Hypergraph
from ..logger import get_logger
from ..metrics import RHO_CACHE, update_cache_stats
from .simplex import maximize_packing

logger = get_logger(__name__)

# Clave: (aristas (etiqueta, e ∩ S) en orden, S). Compartido entre hilos del evaluador.
_rho_cache: LRUCache = LRUCache(maxsize=app_config.RHO_CACHE_MAXSIZE)
_rho_lock = threading.Lock()


@dataclass(frozen=True, slots=True)
class EdgeCover:
    value: Fraction
    weights: dict[str, Fraction]

    def covers(self, h: Hypergraph, S: Iterable[str]) -> bool:
        return all(
            sum((self.weights.get(lbl, Fraction(0)) for lbl in h.edges_of(v)), Fraction(0)) >= 1
            for v in S
        )


def _solve(restricted: tuple[tuple[str, frozenset[str]], ...], target: tuple[str, ...]) -> EdgeCover:
    if not target:
        return EdgeCover(Fraction(0), {lbl: Fraction(0) for lbl, _ in restricted})
    useful = [(lbl, vs) for lbl, vs in restricted if vs]
    A = [[Fraction(1) if v in vs else Fraction(0) for v in target] for _, vs in useful]
    result = maximize_packing(A, [Fraction(1)] * len(useful), [Fraction(1)] * len(target))
    weights = {lbl: Fraction(0) for lbl, _ in restricted}
    for (lbl, _), x in zip(useful, result.dual):
        weights[lbl] = x

    # certificado: x cubre, y empaqueta y ambos valores coinciden
    primal = sum(weights.values(), Fraction(0))
    covered = all(sum((weights[l] for l, vs in useful if v in vs), Fraction(0)) >= 1 for v in target)
    packed = all(
        sum((y for v, y in zip(target, result.primal) if v in vs), Fraction(0)) <= 1
        for _, vs in useful
    )
    if not (covered and packed and primal == result.value and min(weights.values()) >= 0):
        raise InvariantViolation(f"certificado del LP inválido para S={target}")
    return EdgeCover(result.value, weights)


def fractional_edge_cover(h: Hypergraph, S: Iterable[str] | None = None) -> EdgeCover:
    """
    ρ*(S) exacto con pesos por etiqueta de arista (S = todos los vértices por defecto).

    Raises:
        UncoverableVertex: algún vértice de S no está en ninguna arista
    """
    target = tuple(sorted(h.vertices if S is None else set(S)))
    for v in target:
        if not h.edges_of(v):
            raise UncoverableVertex(f"el vértice {v!r} no está en ninguna arista")
    wanted = frozenset(target)
    restricted = tuple((lbl, vs & wanted) for lbl, vs in h.edges)
    key = (restricted, target)
    with _rho_lock:
        cached = _rho_cache.get(key)
    if cached is not None:
        RHO_CACHE.labels(result="hit").inc()
        return cached
    RHO_CACHE.labels(result="miss").inc()
    cover = _solve(restricted, target)
    with _rho_lock:
        _rho_cache[key] = cover
        update_cache_stats("rho", len(_rho_cache))
    return cover


def rho_star(h: Hypergraph, S: Iterable[str] | None = None) -> Fraction:
    return fractional_edge_cover(h, S).value


def clear_rho_cache() -> None:
    with _rho_lock:
        _rho_cache.clear()
        update_cache_stats("rho", 0)


__all__ = ["EdgeCover", "fractional_edge_cover", "rho_star", "clear_rho_cache"]
