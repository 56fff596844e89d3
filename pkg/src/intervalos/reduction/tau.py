"""τ(H): la reducción aplicada solo al hipergrafo."""

from itertools import permutations
from math import factorial, prod

from .. import config as app_config
from ..core.errors import SizeLimitExceeded
from ..core.model import Hypergraph
from ..logger import get_logger
from .onestep import onestep_hypergraph

logger = get_logger(__name__)


def tau_size(h: Hypergraph) -> int:
    """∏ k_[X]! sobre los vértices de intervalo en ≥ 2 aristas."""
    return prod(factorial(len(h.edges_of(v))) for v in h.join_vertices())


def _drop_local_intervals(h: Hypergraph) -> Hypergraph:
    local = h.interval_vertices
    edges = tuple((lbl, vs - local) for lbl, vs in h.edges)
    return Hypergraph(h.vertices - local, edges, frozenset())


def tau(h: Hypergraph, max_members: int | None = None) -> list[Hypergraph]:
    """
    Miembros de τ(h) en el mismo orden que `reduce_full` produce las consultas:
    variables en orden lexicográfico, permutaciones en orden lexicográfico de
    etiquetas. Las variables de intervalo de una sola arista desaparecen.

    Raises:
        SizeLimitExceeded: si ∏ k! supera `max_members` (TAU_MAX_MEMBERS por defecto)
    """
    limit = app_config.TAU_MAX_MEMBERS if max_members is None else max_members
    expected = tau_size(h)
    if expected > limit:
        raise SizeLimitExceeded(f"τ tendría {expected} miembros, tope {limit}")
    members = [h]
    for var in h.join_vertices():
        members = [
            onestep_hypergraph(m, var, sigma)
            for m in members
            for sigma in permutations(sorted(m.edges_of(var)))
        ]
    out: list[Hypergraph] = []
    seen = set()
    for m in members:
        m = _drop_local_intervals(m)
        sig = m.signature()
        if sig not in seen:
            seen.add(sig)
            out.append(m)
    logger.debug("[REDUCE] τ: %s miembros (%s esperados)", len(out), expected)
    return out


__all__ = ["tau", "tau_size"]
