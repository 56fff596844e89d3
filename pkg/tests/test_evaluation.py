import random
from fractions import Fraction

import pytest

from intervalos.cli.bench import fit_slope, run_bench
from intervalos.cli.catalog import catalog_query
from intervalos.cli.parser import parse_query
from intervalos.core.database import Database, Relation
from intervalos.core.errors import InvalidQuery, NotAcyclic, TooLargeForOracle
from intervalos.core.model import hypergraph_of
from intervalos.core.rational import Interval
from intervalos.evaluation.decomposition import decomp_eval
from intervalos.evaluation.leapfrog import wcoj_bool, wcoj_iter, wcoj_witness
from intervalos.evaluation.oracle import check_witness, oracle_eval, oracle_witness
from intervalos.evaluation.pipeline import Strategy, classify_query, eval_ij
from intervalos.evaluation.yannakakis import yannakakis_bool
from intervalos.schemas import SyntheticSpec
from intervalos.widths.fhtw import fhtw

EJ_QUERIES = [
    "R(A,B), S(B,C), T(A,C)",
    "R(A,B), S(B,C)",
    "R(A,B,C), S(C,D), T(D,A)",
    "R(A), S(A,B), T(B)",
    "R(A,B), S(A,B), T(B,C), U(C,A)",
]
ACYCLIC_EJ = ["R(A,B), S(B,C)", "R(A), S(A,B), T(B)", "R(A,B,C), S(B,C), T(A,B)", "R(A,B), S(A,C), T(A,D)"]


def _db(q, rows: dict[str, list[tuple]]) -> Database:
    def cell(v, raw):
        return Interval(*raw) if v.is_interval else Fraction(raw)

    return Database({
        a.label: Relation(a.label, a.schema, tuple(tuple(cell(v, c) for v, c in zip(a.schema, r)) for r in rows[a.label]))
        for a in q.atoms
    })


# ---------------------------------------------------------------------------
# Oráculo
# ---------------------------------------------------------------------------

def test_oracle_small_examples():
    q = parse_query("R([A]), S([A])")
    assert oracle_eval(q, _db(q, {"R": [(1, 2)], "S": [(2, 3)]}))
    assert not oracle_eval(q, _db(q, {"R": [(1, 2)], "S": [(3, 4)]}))

    q = parse_query("R([A],B), S([A],B)")
    db = _db(q, {"R": [((0, 5), 1), ((0, 5), 2)], "S": [((4, 9), 2)]})
    witness = oracle_witness(q, db)
    assert witness == {"R": 1, "S": 0}
    assert check_witness(q, db, witness)
    assert not check_witness(q, db, {"R": 0, "S": 0})


def test_oracle_empty_relation_is_false(triangle):
    db = _db(triangle, {"R": [((0, 1), (0, 1))], "S": [], "T": [((0, 1), (0, 1))]})
    assert not oracle_eval(triangle, db)


def test_oracle_size_limit(triangle, make_database):
    db = make_database(triangle, random.Random(3), max_rows=4)
    db = Database({**dict(db), "R": Relation("R", db["R"].schema, db["R"].rows * 2)})
    with pytest.raises(TooLargeForOracle):
        oracle_eval(triangle, db, max_cells=1)


# ---------------------------------------------------------------------------
# Motores EJ
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("text", ACYCLIC_EJ)
def test_yannakakis_matches_oracle(text, make_database):
    q = parse_query(text)
    rng = random.Random(text)
    for _ in range(40):
        db = make_database(q, rng, max_rows=5)
        assert yannakakis_bool(q, db) == oracle_eval(q, db)


def test_yannakakis_rejects_cyclic_and_interval_queries(triangle, make_database):
    q = parse_query("R(A,B), S(B,C), T(A,C)")
    with pytest.raises(NotAcyclic):
        yannakakis_bool(q, make_database(q, random.Random(0)))
    with pytest.raises(InvalidQuery):
        yannakakis_bool(triangle, make_database(triangle, random.Random(0)))


@pytest.mark.parametrize("text", EJ_QUERIES)
def test_wcoj_and_decomposition_match_oracle(text, make_database):
    q = parse_query(text)
    _, td = fhtw(hypergraph_of(q))
    rng = random.Random(text)
    for _ in range(40):
        db = make_database(q, rng, max_rows=5)
        expected = oracle_eval(q, db)
        assert wcoj_bool(q, db) == expected
        assert decomp_eval(q, db, td) == expected
        rows = wcoj_witness(q, db)
        assert (rows is not None) == expected
        if rows is not None:
            assert check_witness(q, db, rows)


def test_wcoj_enumerates_every_answer():
    q = parse_query("R(A,B), S(B,C)")
    db = _db(q, {"R": [(1, 1), (2, 1), (3, 2)], "S": [(1, 5), (1, 6), (3, 7)]})
    answers = sorted((v["A"], v["B"], v["C"]) for v, _ in wcoj_iter(q, db))
    assert answers == [(1, 1, 5), (1, 1, 6), (2, 1, 5), (2, 1, 6)]


def test_wcoj_rejects_interval_queries(triangle, make_database):
    with pytest.raises(InvalidQuery):
        wcoj_bool(triangle, make_database(triangle, random.Random(0)))


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def test_eval_matches_oracle_with_witness(small_query, make_database):
    rng = random.Random(str(small_query))
    for _ in range(30):
        db = make_database(small_query, rng)
        report = eval_ij(small_query, db)
        assert report.result == oracle_eval(small_query, db)
        if report.result:
            assert report.witness is not None
            assert check_witness(small_query, db, report.witness)
        else:
            assert report.witness is None
            assert not report.early_exit


@pytest.mark.parametrize("s_row, expected", [(((1, 3), (0, 2)), True), (((3, 4), (0, 2)), False)])
@pytest.mark.parametrize("strategy", [Strategy.AUTO, Strategy.REDUCE_YANNAKAKIS])
def test_acyclic_path_runs_yannakakis_on_reduced_labels(s_row, expected, strategy):
    q = parse_query("R([A],[B]), S([B],[C])")
    db = _db(q, {"R": [((0, 2), (0, 2))], "S": [s_row]})
    report = eval_ij(q, db, strategy)
    assert report.result is expected
    assert set(report.engines) == {"yannakakis"}
    if expected:
        assert report.witness == {"R": 0, "S": 0}
        assert check_witness(q, db, report.witness)


def test_adding_rows_never_falsifies(small_query, make_database):
    rng = random.Random(f"monotone {small_query}")
    for _ in range(20):
        db = make_database(small_query, rng)
        if not eval_ij(small_query, db).result:
            continue
        extra = make_database(small_query, rng)
        grown = Database({
            lbl: Relation(lbl, rel.schema, rel.rows + extra[lbl].rows) for lbl, rel in db.items()
        })
        assert eval_ij(small_query, grown).result
        assert eval_ij(small_query, grown, Strategy.REDUCE_DECOMP).result


def test_strategies_and_workers_agree(small_query, make_database):
    rng = random.Random(5)
    for _ in range(5):
        db = make_database(small_query, rng)
        results = {
            eval_ij(small_query, db, strategy).result
            for strategy in Strategy
        }
        results.add(eval_ij(small_query, db, Strategy.AUTO, workers=4).result)
        results.add(eval_ij(small_query, db, Strategy.REDUCE_DECOMP, workers=3, vertex_cap=2).result)
        assert len(results) == 1


def test_report_shape_for_triangle(triangle, make_database):
    db = make_database(triangle, random.Random(8))
    report = eval_ij(triangle, db, Strategy.AUTO)
    assert report.members == 8
    assert report.groups == 1
    assert report.strategy == "auto"
    assert {"validate", "reduce", "simplify", "evaluate"} <= set(report.timings)
    # miembros triangulares: ningún grupo α-acíclico
    assert "yannakakis" not in report.engines
    if report.early_exit:
        assert any(s.result is None for s in report.subqueries)


def test_oracle_strategy_reports_single_subquery(triangle, make_database):
    db = make_database(triangle, random.Random(9))
    report = eval_ij(triangle, db, "oracle")
    assert report.members == 1
    assert report.subqueries[0].engine == "oracle"
    with pytest.raises(TooLargeForOracle):
        eval_ij(triangle, Database({**dict(db), "R": Relation("R", db["R"].schema, db["R"].rows * 2)}),
                "oracle", max_oracle_cells=1)


@pytest.mark.parametrize(
    "name, verdict",
    [
        ("triangle", "hard: k-cycle k=3"),
        ("triple-edge", "hard: k-cycle k=3"),
        ("star", "quasi-linear"),
        ("triple-edge-a", "quasi-linear"),
    ],
)
def test_classify_query(name, verdict):
    out = classify_query(catalog_query(name))
    assert out["classification"] == verdict
    assert out["iota"] == (verdict == "quasi-linear")


@pytest.mark.slow
def test_iota_acyclic_query_scales_quasi_linearly():
    q = catalog_query("path")
    spec = SyntheticSpec(max_width=4, point_range=50)
    rows = run_bench(q, [512, 1024, 2048, 4096], [1, 2], spec)
    slope = fit_slope(rows)
    assert slope is not None
    assert slope <= 1.25
