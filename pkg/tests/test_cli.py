import json
import logging
import random
from fractions import Fraction

import pytest

from intervalos.cli.catalog import CATALOG, catalog_query
from intervalos.cli.io import digest, load_database, parse_cell, save_database
from intervalos.cli.parser import format_query, parse_query, tokenize
from intervalos.cli.synthetic import gen_synthetic
from intervalos.core.errors import DuplicateVariableInAtom, KindMismatch, ParseError, QuerySyntaxError
from intervalos.core.model import Variable, VarKind
from intervalos.core.rational import Interval, RawInterval
from intervalos.logger import _RunFilter, bound_run, log_scope, run_id
from intervalos.main import main
from intervalos.reduction.algorithm import reduce_full
from intervalos.schemas import SyntheticSpec

INTERVAL_A = Variable("A", VarKind.INTERVAL)
POINT_B = Variable("B")
BITS_A1 = Variable("A1", origin="A", index=1)


# ---------------------------------------------------------------------------
# Parser de consultas
# ---------------------------------------------------------------------------

def test_parse_query_kinds_and_self_join_labels():
    q = parse_query("R([A],[B]), R([B],[C]), S([C],D)")
    assert q.labels == ("R#1", "R#2", "S")
    assert [a.relation for a in q.atoms] == ["R", "R", "S"]
    assert q.kind == "EIJ"


def test_tokenize_tracks_positions():
    tokens = tokenize("R([A],\n  B)")
    b = next(t for t in tokens if t.text == "B")
    assert (b.line, b.column) == (2, 3)
    assert tokens[-1].kind == "EOF"


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("R([A]) S([B])", 1, 8),
        ("R([A]),\nS([B]", 2, 6),
        ("R([A]); S([B])", 1, 7),
        ("R()", 1, 3),
    ],
)
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(QuerySyntaxError) as info:
        parse_query(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_semantic_errors():
    with pytest.raises(DuplicateVariableInAtom):
        parse_query("R(A,A)")
    with pytest.raises(KindMismatch):
        parse_query("R([A]), S(A)")


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_format_query_round_trips_catalog(name):
    entry = CATALOG[name]
    assert format_query(entry.query()) == entry.text


# ---------------------------------------------------------------------------
# Celdas
# ---------------------------------------------------------------------------

def test_parse_cell_values():
    assert parse_cell("[1,4]", INTERVAL_A, "t").close(Fraction(1)) == Interval(1, 4)
    assert parse_cell("(0, 2]", INTERVAL_A, "t") == RawInterval(Fraction(0), Fraction(2), False, True)
    assert parse_cell("3.25", POINT_B, "t") == Fraction(13, 4)
    assert parse_cell("0110", BITS_A1, "t") == "0110"
    assert parse_cell("", BITS_A1, "t") == ""


@pytest.mark.parametrize(
    "text, var, error",
    [
        ("3", INTERVAL_A, KindMismatch),
        ("[1,2]", POINT_B, KindMismatch),
        ("abc", POINT_B, ParseError),
        ("", POINT_B, ParseError),
        ("012", BITS_A1, ParseError),
        ("[x,2]", INTERVAL_A, ParseError),
    ],
)
def test_parse_cell_errors(text, var, error):
    with pytest.raises(error):
        parse_cell(text, var, "t")


# ---------------------------------------------------------------------------
# Bases en disco
# ---------------------------------------------------------------------------

def test_open_intervals_closed_with_database_epsilon(tmp_path):
    (tmp_path / "R.csv").write_text("[A],B\n(0,1),2\n[0,3),5\n", encoding="utf-8")
    db = load_database(tmp_path)
    # extremos {0,1,3}, hueco 1, dos intervalos → ε = 1/12
    assert db["R"].rows == (
        (Interval(Fraction(1, 12), Fraction(11, 12)), Fraction(2)),
        (Interval(0, Fraction(35, 12)), Fraction(5)),
    )


def test_bad_csv_rows(tmp_path):
    (tmp_path / "R.csv").write_text("[A],B\n[0,1]\n", encoding="utf-8")
    with pytest.raises(ParseError, match="R.csv:2"):
        load_database(tmp_path)


def test_unsupported_path(tmp_path):
    target = tmp_path / "base.txt"
    target.write_text("x", encoding="utf-8")
    with pytest.raises(ParseError):
        load_database(target)


@pytest.mark.parametrize("target", ["db", "db.json"])
def test_database_files_are_stable(tmp_path, target):
    db = gen_synthetic(catalog_query("mixed-path"), SyntheticSpec(rows=12, max_width=3), seed=4)
    first, second = tmp_path / "a" / target, tmp_path / "b" / target
    save_database(db, first)
    loaded = load_database(first)
    assert {k: v.rows for k, v in loaded.items()} == {k: v.rows for k, v in db.items()}
    save_database(loaded, second)
    assert digest(first) == digest(second)


def test_bitstring_columns_survive_disk(tmp_path, triangle, make_database):
    out = reduce_full(triangle, make_database(triangle, random.Random(2)))
    save_database(out.database, tmp_path)
    header = (tmp_path / "R_{1;1}.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "A1:bits,B1:bits"
    loaded = load_database(tmp_path)
    for label, rel in out.database.items():
        assert loaded[label].schema == rel.schema
        assert loaded[label].rows == rel.rows


def test_load_only_requested_labels(tmp_path, triangle):
    save_database(gen_synthetic(triangle, SyntheticSpec(rows=3)), tmp_path)
    assert set(load_database(tmp_path, ["R", "S"])) == {"R", "S"}


def test_synthetic_is_deterministic(triangle):
    spec = SyntheticSpec(rows=20, grid=50, max_width=5, width_distribution="geometric")
    a, b = gen_synthetic(triangle, spec, 11), gen_synthetic(triangle, spec, 11)
    assert {k: v.rows for k, v in a.items()} == {k: v.rows for k, v in b.items()}
    c = gen_synthetic(triangle, spec, 12)
    assert {k: v.rows for k, v in a.items()} != {k: v.rows for k, v in c.items()}
    assert all(len(rel) == 20 for rel in a.values())
    assert all(x.r - x.l <= 20 for x in a.intervals())


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------

def _run(capsys, *argv) -> tuple[int, dict]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else {})


def test_analyze_triangle(capsys):
    code, report = _run(capsys, "analyze", "--catalog", "triangle")
    assert code == 0
    out = report["output"]
    assert (out["alpha"], out["gamma"], out["iota"], out["berge"]) == (False, False, False, False)
    assert out["tau"] == 8
    assert out["simplified"] == 1
    assert out["relation_variants"] == {"R": 4, "S": 4, "T": 4}
    assert report["command"][:2] == ["intervalos", "analyze"]


def test_widths_triangle(capsys):
    code, report = _run(capsys, "widths", "--catalog", "triangle")
    assert code == 0
    assert report["output"]["ijw_fhtw_upper"] == "3/2"
    assert report["output"]["tau"] == 8


def test_eval_agrees_with_oracle(capsys):
    args = ("--catalog", "triangle", "--rows", "15", "--grid", "40", "--max-width", "6")
    code, evaluated = _run(capsys, "--seed", "3", "eval", *args)
    assert code == 0
    code, oracle = _run(capsys, "--seed", "3", "oracle", *args)
    assert code == 0
    assert evaluated["output"]["result"] == oracle["output"]["result"]


def test_eval_from_files(capsys, tmp_path):
    target = tmp_path / "db.json"
    code, _ = _run(capsys, "gen", "--catalog", "star", "--rows", "10", "--out", str(target))
    assert code == 0
    code, report = _run(capsys, "eval", "--catalog", "star", "--db", str(target), "--strategy", "reduce-yannakakis")
    assert code == 0
    assert "db" in report["digests"]
    assert report["output"]["strategy"] == "reduce-yannakakis"


def test_syntax_error_exit_code(capsys):
    code, report = _run(capsys, "analyze", "--query", "R([A],")
    assert code == 2
    assert report == {}


def test_oracle_limit_exit_code(capsys):
    code, _ = _run(capsys, "oracle", "--catalog", "triangle", "--rows", "5", "--max-oracle-cells", "1")
    assert code == 3


def test_reduce_writes_queries(capsys, tmp_path):
    out = tmp_path / "reduced"
    code, report = _run(capsys, "reduce", "--catalog", "triangle", "--rows", "4", "--out", str(out))
    assert code == 0
    lines = (out / "queries.txt").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 8
    assert lines == report["output"]["queries"]
    assert len(list(out.glob("*.csv"))) == 12


def test_bench_writes_csv(capsys, tmp_path):
    target = tmp_path / "bench.csv"
    code, report = _run(
        capsys, "bench", "--catalog", "path", "--sizes", "8", "16", "--seeds", "1", "--out", str(target),
    )
    assert code == 0
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,seed,phase,seconds"
    assert {line.split(",")[2] for line in lines[1:]} >= {"reduce", "evaluate", "total"}
    assert report["output"]["slope"] is None or isinstance(report["output"]["slope"], float)


def test_metrics_file_written(capsys, tmp_path):
    target = tmp_path / "metrics.prom"
    code, _ = _run(capsys, "--metrics-file", str(target), "analyze", "--catalog", "star")
    assert code == 0
    assert "intervalos_phase_duration_seconds" in target.read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------

def _filtered_record() -> logging.LogRecord:
    record = logging.LogRecord("intervalos", logging.INFO, __file__, 1, "mensaje", None, None)
    _RunFilter().filter(record)
    return record


def test_log_records_carry_run_and_nested_scope():
    with bound_run("abc12345") as rid, log_scope("bench n=8 seed=1"), log_scope("q2"):
        record = _filtered_record()
    assert rid == "abc12345"
    assert (record.run_id, record.scope) == ("abc12345", "/bench n=8 seed=1/q2")
    after = _filtered_record()
    assert (after.run_id, after.scope) == ("-", "")


def test_bound_run_generates_fresh_ids():
    with bound_run() as first:
        pass
    with bound_run() as second:
        pass
    assert len(first) == 8 and first != second


def test_main_releases_run_id(capsys):
    assert main(["analyze", "--catalog", "path"]) == 0
    capsys.readouterr()
    assert run_id.get() == "-"
