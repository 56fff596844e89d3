"""
Evaluación de consultas EIJ de punta a punta.

reduce_full → simplify → por cada consulta EJ de la disyunción se elige
motor: Yannakakis si es α-acíclica, evaluación por descomposición (testigo
de fhtw) si cabe en el tope de vértices, y join multivía si no. El resultado
es el OR de los miembros con salida temprana; con `workers > 1` los miembros
corren en un pool de hilos y un Event cancela los pendientes.

Cuando el resultado es verdadero se reconstruye un testigo (una fila
original por átomo) vía proveniencia y se verifica directamente.
"""

import contextvars
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .. import config as app_config
from ..core.database import Database, Relation, project_relation, validate
from ..core.errors import InvariantViolation, SizeLimitExceeded
from ..core.model import Query, hypergraph_of
from ..hypergraph.berge import find_berge_cycle
from ..hypergraph.gyo import JoinTree, build_join_tree
from ..logger import get_logger, log_scope
from ..metrics import SUBQUERIES_SKIPPED, record_engine_run, track_phase
from ..reduction.algorithm import ReductionOutput, reduce_full
from ..reduction.simplify import simplify
from ..schemas import EvalReport, SubqueryReport
from ..widths.fhtw import TreeDecomposition, fhtw
from .decomposition import decomp_eval
from .leapfrog import wcoj_bool, wcoj_witness
from .oracle import Witness, check_witness, oracle_witness
from .yannakakis import yannakakis_bool

logger = get_logger(__name__)


class Strategy(str, Enum):
    AUTO = "auto"
    ORACLE = "oracle"
    REDUCE_YANNAKAKIS = "reduce-yannakakis"
    REDUCE_DECOMP = "reduce-decomp"


# ---------------------------------------------------------------------------
# Plan por grupo de simplificación
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Plan:
    engine: str  # yannakakis | decomp | wcoj
    join_tree: JoinTree | None = None
    decomposition: TreeDecomposition | None = None


def _plan(q: Query, strategy: Strategy, vertex_cap: int) -> _Plan:
    h = hypergraph_of(q)
    tree = build_join_tree(h)
    if strategy is Strategy.AUTO and tree is not None:
        return _Plan("yannakakis", join_tree=tree)
    if strategy is Strategy.REDUCE_YANNAKAKIS:
        if tree is not None:
            return _Plan("yannakakis", join_tree=tree)
        logger.warning("[EVAL] %s no es α-acíclica; se usa wcoj", q)
        return _Plan("wcoj")
    try:
        _, td = fhtw(h, vertex_cap)
    except SizeLimitExceeded:
        logger.warning("[EVAL] %s supera el tope de %s vértices; se usa wcoj", q, vertex_cap)
        return _Plan("wcoj")
    return _Plan("decomp", decomposition=td)


def _run(plan: _Plan, q: Query, db: Database) -> bool:
    if plan.engine == "yannakakis":
        # el árbol del grupo usa etiquetas de origen; el miembro, las reducidas
        tree = plan.join_tree.relabeled({a.origin: a.label for a in q.atoms})
        return yannakakis_bool(q, db, tree)
    if plan.engine == "decomp":
        return decomp_eval(q, db, plan.decomposition)
    return wcoj_bool(q, db)


# ---------------------------------------------------------------------------
# Testigo
# ---------------------------------------------------------------------------

def _witness(member: Query, reduction: ReductionOutput, q: Query, db: Database) -> Witness:
    member_db = reduction.member_database(member)
    rows = wcoj_witness(member, member_db)
    if rows is None:
        raise InvariantViolation(f"el miembro {member} dio verdadero sin asignación")
    witness = {
        atom.origin: member_db[atom.label].provenance[rows[atom.label]]
        for atom in member.atoms
    }
    if not check_witness(q, db, witness):
        raise InvariantViolation(f"testigo inválido {witness}")
    return witness


# ---------------------------------------------------------------------------
# Orquestación
# ---------------------------------------------------------------------------

def _eval_oracle(q: Query, db: Database, max_cells: int | None, report: EvalReport) -> EvalReport:
    with track_phase("evaluate", report.timings):
        start = time.perf_counter()
        witness = oracle_witness(q, db, max_cells)
        seconds = time.perf_counter() - start
    record_engine_run("oracle", witness is not None, seconds)
    report.result = witness is not None
    report.witness = witness
    report.members = report.groups = 1
    report.subqueries.append(SubqueryReport(
        index=0, query=str(q), engine="oracle", result=report.result, seconds=seconds,
        rows=db.total_rows,
    ))
    return report


def eval_ij(
    q: Query,
    db: Database,
    strategy: Strategy | str = Strategy.AUTO,
    workers: int | None = None,
    vertex_cap: int | None = None,
    max_oracle_cells: int | None = None,
) -> EvalReport:
    """
    Evalúa q sobre db y devuelve el reporte (resultado, motor por consulta,
    tiempos, tamaños y testigo si es verdadera).

    Raises:
        MissingRelation, ArityMismatch, KindMismatch: la base no valida
        TooLargeForOracle: estrategia oracle sobre una entrada grande
    """
    strategy = Strategy(strategy)
    workers = app_config.EVAL_WORKERS if workers is None else workers
    cap = app_config.FHTW_VERTEX_CAP if vertex_cap is None else vertex_cap
    report = EvalReport(result=False, strategy=strategy.value)

    with track_phase("validate", report.timings):
        validate(db, q)
    if strategy is Strategy.ORACLE:
        return _eval_oracle(q, db, max_oracle_cells, report)

    with track_phase("reduce", report.timings):
        reduction = reduce_full(q, db)
    with track_phase("simplify", report.timings):
        groups = simplify(reduction.queries)
    report.relation_sizes = reduction.database.sizes()
    report.members = len(reduction.queries)
    report.groups = len(groups)

    # miembros proyectados, con su plan (uno por grupo)
    tasks: list[tuple[int, int, Query, Query, _Plan]] = []
    for g, group in enumerate(groups):
        plan = _plan(group.representative, strategy, cap)
        for member, original in zip(group.members, group.originals):
            tasks.append((len(tasks), g, member, original, plan))
    projected: dict[tuple[str, tuple[str, ...]], Relation] = {}
    for _, _, member, _, _ in tasks:
        for a in member.atoms:
            key = (a.label, a.variable_names)
            if key not in projected:
                rel = reduction.database[a.label]
                projected[key] = rel if rel.column_names == a.variable_names else project_relation(rel, a.variable_names)

    found = threading.Event()
    outcomes: list[SubqueryReport | None] = [None] * len(tasks)
    winner: list[Query] = []
    lock = threading.Lock()

    def evaluate(task) -> None:
        index, g, member, original, plan = task
        if found.is_set():
            outcomes[index] = SubqueryReport(index=index, query=str(member), group=g, engine=plan.engine)
            return
        member_db = Database({a.label: projected[(a.label, a.variable_names)] for a in member.atoms})
        start = time.perf_counter()
        try:
            with log_scope(f"q{index}"):
                result = _run(plan, member, member_db)
        except Exception:
            record_engine_run(plan.engine, None, time.perf_counter() - start)
            raise
        seconds = time.perf_counter() - start
        record_engine_run(plan.engine, result, seconds)
        outcomes[index] = SubqueryReport(
            index=index, query=str(member), group=g, engine=plan.engine,
            result=result, seconds=seconds, rows=member_db.total_rows,
        )
        if result:
            with lock:
                if not winner:
                    winner.append(original)
            found.set()

    with track_phase("evaluate", report.timings):
        if workers <= 1 or len(tasks) <= 1:
            for task in tasks:
                evaluate(task)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(contextvars.copy_context().run, evaluate, task) for task in tasks
                ]
                for fut in futures:
                    fut.result()

    report.subqueries = [o for o in outcomes if o is not None]
    skipped = sum(1 for o in report.subqueries if o.result is None)
    if skipped:
        SUBQUERIES_SKIPPED.inc(skipped)
    report.early_exit = skipped > 0
    report.result = found.is_set()
    if report.result:
        with track_phase("witness", report.timings):
            report.witness = _witness(winner[0], reduction, q, db)
    logger.info(
        "[EVAL] %s: %s miembros en %s grupos, motores %s, resultado %s",
        strategy.value, report.members, report.groups, report.engines, report.result,
    )
    return report


# ---------------------------------------------------------------------------
# Dicotomía
# ---------------------------------------------------------------------------

def classify_query(q: Query) -> dict[str, object]:
    """ι-acíclica → vía cuasi-lineal; si no, ciclo de Berge testigo (k ≥ 3) para la construcción de dureza."""
    h = hypergraph_of(q)
    cycle = find_berge_cycle(h, 3)
    if cycle is None:
        return {"iota": True, "classification": "quasi-linear", "cycle": None}
    return {"iota": False, "classification": f"hard: k-cycle k={cycle.length}", "cycle": str(cycle)}


__all__ = ["Strategy", "eval_ij", "classify_query"]
