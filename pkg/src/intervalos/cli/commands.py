"""
Subcomandos de la CLI: cada uno delega en los módulos de la librería y
devuelve un modelo de reporte (pydantic) listo para serializar.
"""

from pathlib import Path

from ..core.database import Database
from ..core.errors import SizeLimitExceeded
from ..core.model import Query, hypergraph_of
from ..evaluation.pipeline import Strategy, classify_query, eval_ij
from ..hypergraph.berge import find_berge_cycle, is_berge_acyclic, is_iota_acyclic
from ..hypergraph.gyo import is_alpha_acyclic
from ..hypergraph.structure import is_gamma_acyclic
from ..logger import get_logger
from ..metrics import track_phase
from ..reduction.algorithm import ReductionOutput, reduce_full, size_bound
from ..reduction.simplify import simplify_hypergraphs
from ..reduction.tau import tau, tau_size
from ..schemas import AnalyzeReport, EvalReport, ReduceReport, WidthReport, WidthRow
from ..widths.fhtw import predict_counts, width_report
from .io import save_database

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def analyze(q: Query, vertex_cap: int | None = None) -> AnalyzeReport:
    """Clases de aciclicidad, ciclo de Berge testigo y conteos de τ."""
    with track_phase("analyze"):
        h = hypergraph_of(q)
        try:
            gamma = is_gamma_acyclic(h, vertex_cap)
        except SizeLimitExceeded:
            logger.warning("[CLI] γ-aciclicidad omitida: %s vértices", len(h.vertices))
            gamma = None
        try:
            simplified = len(simplify_hypergraphs(tau(h)))
        except SizeLimitExceeded:
            logger.warning("[CLI] τ supera el tope; sin conteo simplificado")
            simplified = None
        cycle = find_berge_cycle(h, 3)
        _, variants = predict_counts(h)
        report = AnalyzeReport(
            query=str(q),
            kind=q.kind,
            alpha=is_alpha_acyclic(h),
            gamma=gamma,
            iota=is_iota_acyclic(h),
            berge=is_berge_acyclic(h),
            berge_cycle=str(cycle) if cycle else None,
            tau=tau_size(h),
            simplified=simplified,
            relation_variants=variants,
            classification=str(classify_query(q)["classification"]),
        )
    logger.info("[CLI] analyze: α=%s γ=%s ι=%s τ=%s", report.alpha, report.gamma, report.iota, report.tau)
    return report


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------

def reduction_size_bounds(q: Query, db: Database, reduction: ReductionOutput) -> dict[str, int]:
    """Cota de filas por relación transformada, aplicando el factor de cada variable resuelta."""
    heights = dict(reduction.tree_heights)
    bounds: dict[str, int] = {}
    for member in reduction.queries:
        for atom in member.atoms:
            if atom.label in bounds:
                continue
            rows = len(db[atom.origin])
            if atom.key is not None:
                for var, position in atom.key.positions:
                    if var in heights:
                        rows = size_bound(heights[var], position, rows)
            bounds[atom.label] = rows
    return bounds


def reduce_command(q: Query, db: Database, out: str | Path | None = None) -> ReduceReport:
    """
    Reduce q sobre db. Con `out`, escribe en ese directorio `queries.txt`
    (una consulta EJ por línea) y un CSV por relación transformada.
    """
    reduction = reduce_full(q, db)
    report = ReduceReport(
        query=str(q),
        join_variables=list(reduction.join_variables),
        queries=[str(m) for m in reduction.queries],
        relation_sizes=reduction.database.sizes(),
        size_bounds=reduction_size_bounds(q, db, reduction),
    )
    if out is not None:
        target = Path(out)
        save_database(reduction.database, target)
        (target / "queries.txt").write_text(
            "".join(f"{line}\n" for line in report.queries), encoding="utf-8", newline="\n",
        )
        report.output = str(target)
    for label, size in report.relation_sizes.items():
        bound = report.size_bounds.get(label)
        if bound is not None and size > bound:
            logger.warning("[CLI] %s: %s filas supera la cota %s", label, size, bound)
    return report


# ---------------------------------------------------------------------------
# eval / oracle
# ---------------------------------------------------------------------------

def eval_command(
    q: Query,
    db: Database,
    strategy: Strategy | str = Strategy.AUTO,
    workers: int | None = None,
    vertex_cap: int | None = None,
    max_oracle_cells: int | None = None,
) -> EvalReport:
    return eval_ij(q, db, strategy, workers, vertex_cap, max_oracle_cells)


def oracle_command(q: Query, db: Database, max_oracle_cells: int | None = None) -> EvalReport:
    return eval_ij(q, db, Strategy.ORACLE, max_oracle_cells=max_oracle_cells)


# ---------------------------------------------------------------------------
# widths
# ---------------------------------------------------------------------------

def widths_command(q: Query, vertex_cap: int | None = None) -> WidthReport:
    """fhtw por miembro simplificado de τ, clases de isomorfismo y cota del ancho ij."""
    with track_phase("widths"):
        analysis = width_report(hypergraph_of(q), vertex_cap)
    rows = [
        WidthRow(
            member=i,
            hypergraph=str(m.hypergraph),
            cls=m.cls,
            fhtw=m.value,
            bags=[sorted(m.decomposition.bags[n]) for n in sorted(m.decomposition.bags)],
            rho=[c.value for c in m.bag_covers],
        )
        for i, m in enumerate(analysis.members)
    ]
    return WidthReport(
        query=str(q),
        tau=analysis.tau_count,
        simplified=len(analysis.members),
        classes=[list(c) for c in analysis.classes],
        class_fhtw=analysis.class_values(),
        ijw_fhtw_upper=analysis.upper,
        exact=analysis.exact,
        rows=rows,
    )


__all__ = [
    "analyze",
    "reduction_size_bounds",
    "reduce_command",
    "eval_command",
    "oracle_command",
    "widths_command",
]
