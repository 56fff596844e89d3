"""
Generador sintético de bases de datos para una consulta.

Por relación, `rows` tuplas: intervalos [l, l + w] con l uniforme sobre
[0, grid) y w uniforme en [0, max_width] o geométrica de media ~max_width;
puntos enteros uniformes en [0, point_range). Determinista por semilla.
"""

from fractions import Fraction

import numpy as np

from ..core.database import Database, Relation
from ..core.model import Query
from ..core.rational import Interval
from ..logger import get_logger
from ..schemas import SyntheticSpec

logger = get_logger(__name__)


def _widths(rng: np.random.Generator, spec: SyntheticSpec, n: int) -> np.ndarray:
    if spec.width_distribution == "geometric":
        p = 1.0 / (1 + spec.max_width)
        return np.minimum(rng.geometric(p, size=n) - 1, 4 * max(spec.max_width, 1))
    return rng.integers(0, spec.max_width + 1, size=n)


def gen_synthetic(q: Query, spec: SyntheticSpec | None = None, seed: int = 7) -> Database:
    """Una relación por átomo de q, en orden de consulta."""
    spec = spec or SyntheticSpec()
    rng = np.random.default_rng(seed)
    relations = {}
    for atom in q.atoms:
        columns = []
        for var in atom.schema:
            if var.is_interval:
                left = rng.integers(0, spec.grid, size=spec.rows)
                width = _widths(rng, spec, spec.rows)
                columns.append([
                    Interval(Fraction(int(l)), Fraction(int(l + w))) for l, w in zip(left, width)
                ])
            else:
                values = rng.integers(0, spec.point_range, size=spec.rows)
                columns.append([Fraction(int(v)) for v in values])
        rows = tuple(zip(*columns)) if columns else tuple(() for _ in range(spec.rows))
        relations[atom.label] = Relation(atom.label, atom.schema, rows)
    logger.debug("[SYNTH] seed=%s, %s filas por relación, %s relaciones", seed, spec.rows, len(relations))
    return Database(relations)


__all__ = ["gen_synthetic"]
