"""
Benchmark: barrido de tamaños × semillas sobre datos sintéticos.

Por cada (N, semilla) se genera la base, se evalúa con la estrategia pedida
y se guarda una fila (N, seed, phase, seconds) por fase más `total`. La
pendiente log-log se ajusta con numpy.polyfit sobre la mediana de `total`
por N.
"""

from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from ..core.model import Query
from ..evaluation.pipeline import Strategy, eval_ij
from ..logger import get_logger, log_scope
from ..schemas import BenchRow, SyntheticSpec
from .synthetic import gen_synthetic

logger = get_logger(__name__)


def run_bench(
    q: Query,
    sizes: Sequence[int],
    seeds: Sequence[int],
    spec: SyntheticSpec | None = None,
    strategy: Strategy | str = Strategy.AUTO,
    workers: int | None = None,
) -> list[BenchRow]:
    base = spec or SyntheticSpec()
    rows: list[BenchRow] = []
    for n in sizes:
        # rejilla proporcional a N: la selectividad se mantiene al crecer
        sized = base.model_copy(update={"rows": n, "grid": max(base.grid, 4 * n)})
        for seed in seeds:
            db = gen_synthetic(q, sized, seed)
            with log_scope(f"bench n={n} seed={seed}"):
                report = eval_ij(q, db, strategy, workers)
            for phase, seconds in report.timings.items():
                rows.append(BenchRow(n=n, seed=seed, phase=phase, seconds=seconds))
            rows.append(BenchRow(n=n, seed=seed, phase="total", seconds=sum(report.timings.values())))
            logger.info("[BENCH] N=%s seed=%s: %.4fs, resultado %s", n, seed, rows[-1].seconds, report.result)
    return rows


def bench_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in rows], columns=["n", "seed", "phase", "seconds"])


def fit_slope(rows: Sequence[BenchRow], phase: str = "total") -> float | None:
    """Pendiente de log(segundos) frente a log(N); None con menos de dos tamaños."""
    frame = bench_frame(rows)
    totals = frame[frame["phase"] == phase].groupby("n")["seconds"].median()
    totals = totals[totals > 0]
    if len(totals) < 2:
        return None
    slope, _ = np.polyfit(np.log(totals.index.to_numpy(dtype=float)), np.log(totals.to_numpy()), 1)
    return float(slope)


def write_bench_csv(rows: Sequence[BenchRow], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    bench_frame(rows).to_csv(path, index=False, lineterminator="\n")


__all__ = ["run_bench", "bench_frame", "fit_slope", "write_bench_csv"]
