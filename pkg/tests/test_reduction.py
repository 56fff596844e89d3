import random
from fractions import Fraction

import pytest

from intervalos.cli.catalog import catalog_query
from intervalos.cli.commands import reduction_size_bounds
from intervalos.cli.parser import parse_query
from intervalos.core.database import Database, Relation
from intervalos.core.errors import (
    InvalidPermutation,
    InvalidQuery,
    MixedBitstringLengths,
    NoBergeCycle,
    NotIntervalVariable,
    SelfJoinUnsupported,
)
from intervalos.core.model import Hypergraph, hypergraph_of
from intervalos.core.rational import Interval
from intervalos.evaluation.leapfrog import wcoj_bool
from intervalos.hypergraph.berge import find_berge_cycle
from intervalos.evaluation.oracle import oracle_eval
from intervalos.reduction import (
    backward_transform,
    bitstring_splits,
    cycle_query,
    embed_cycle_query,
    fresh_names,
    iter_reduction,
    onestep_disjunction,
    onestep_hypergraph,
    onestep_query,
    reduce_full,
    simplify,
    simplify_hypergraphs,
    size_bound,
    split_count,
    tau,
    tau_size,
    transform_relation,
    tree_for,
)
from intervalos.widths.fhtw import predict_counts


# ---------------------------------------------------------------------------
# Piezas sueltas
# ---------------------------------------------------------------------------

def test_bitstring_splits():
    assert bitstring_splits("01", 2) == [("", "01"), ("0", "1"), ("01", "")]
    assert bitstring_splits("", 3) == [("", "", "")]
    assert bitstring_splits("011", 1) == [("011",)]
    assert len(bitstring_splits("0110101011", 3)) == split_count(10, 3) == 66


def test_fresh_names_avoid_collisions():
    assert fresh_names("A", 3, set()) == ["A1", "A2", "A3"]
    assert fresh_names("A", 2, {"A2"}) == ["A_1", "A_2"]
    assert fresh_names("A", 1, {"A1", "A_1"}) == ["A__1"]


def test_onestep_hypergraph_three_edges():
    h = Hypergraph.from_edges(
        [("e1", {"A", "B", "C"}), ("e2", {"A", "B", "C"}), ("e3", {"A"})], interval="ABC",
    )
    forward = onestep_hypergraph(h, "A", ("e1", "e2", "e3"))
    assert forward.edge("e1") == {"A1", "B", "C"}
    assert forward.edge("e2") == {"A1", "A2", "B", "C"}
    assert forward.edge("e3") == {"A1", "A2", "A3"}
    assert forward.interval_vertices == {"B", "C"}

    backward = onestep_hypergraph(h, "A", ("e3", "e2", "e1"))
    assert backward.edge("e3") == {"A1"}
    assert backward.edge("e1") == {"A1", "A2", "A3", "B", "C"}


def test_onestep_query_labels_and_schema():
    q = parse_query("R([A],[B],[C]), S([A],[B],[C]), T([A])")
    out = onestep_query(q, "A", ("R", "S", "T"))
    assert str(out) == "R_{1}(A1,[B],[C]), S_{2}(A1,A2,[B],[C]), T_{3}(A1,A2,A3)"
    assert len(onestep_disjunction(q, "A")) == 6


def test_onestep_rejects_bad_input(triangle):
    with pytest.raises(NotIntervalVariable):
        onestep_query(parse_query("R(A,B), S(B,C)"), "B", ("R", "S"))
    with pytest.raises(InvalidPermutation):
        onestep_query(triangle, "A", ("R", "S"))


def test_triangle_first_variable(triangle):
    members = onestep_disjunction(triangle, "A")
    assert [sigma for sigma, _ in members] == [("R", "T"), ("T", "R")]
    first = members[0][1]
    assert str(first) == "R_{1}(A1,[B]), S([B],[C]), T_{2}(A1,A2,[C])"


# ---------------------------------------------------------------------------
# Reducción completa
# ---------------------------------------------------------------------------

def test_reduce_full_triangle(triangle, make_database):
    db = make_database(triangle, random.Random(1), max_rows=3)
    out = reduce_full(triangle, db)
    assert len(out) == 8
    assert out.join_variables == ("A", "B", "C")
    assert str(out.queries[0]) == "R_{1;1}(A1,B1), S_{2;1}(B1,B2,C1), T_{2;2}(A1,A2,C1,C2)"
    expected = {f"{r}_{{{i};{j}}}" for r in "RST" for i in (1, 2) for j in (1, 2)}
    assert set(out.database) == expected
    assert all(m.kind == "EJ" for m in out.queries)


def test_predicted_counts_match_reduction(triangle, make_database):
    queries, variants = predict_counts(hypergraph_of(triangle))
    assert (queries, variants) == (8, {"R": 4, "S": 4, "T": 4})
    db = make_database(triangle, random.Random(4))
    out = reduce_full(triangle, db)
    per_origin: dict[str, int] = {}
    for label in out.database:
        origin = label.split("_")[0]
        per_origin[origin] = per_origin.get(origin, 0) + 1
    assert per_origin == variants


@pytest.mark.parametrize("name, count", [("triangle", 8), ("alpha-not-gamma", 24), ("triple-edge", 216)])
def test_tau_counts(name, count):
    h = hypergraph_of(catalog_query(name))
    assert tau_size(h) == count
    assert len(tau(h)) == count


def test_simplify_groups_by_shape():
    h = hypergraph_of(catalog_query("alpha-not-gamma"))
    assert len(simplify_hypergraphs(tau(h))) == 3


def test_simplify_queries_keeps_members(triangle, make_database):
    out = reduce_full(triangle, make_database(triangle, random.Random(6)))
    groups = simplify(out.queries)
    assert sum(len(g.members) for g in groups) == 8
    assert len(groups) == 1
    assert {a.label for a in groups[0].representative.atoms} == {"R", "S", "T"}


def test_reduction_preserves_truth(small_query, make_database):
    rng = random.Random(str(small_query))
    for _ in range(30):
        db = make_database(small_query, rng)
        expected = oracle_eval(small_query, db)
        out = reduce_full(small_query, db)
        assert any(wcoj_bool(m, out.member_database(m)) for m in out.queries) == expected


def test_each_step_preserves_truth(small_query, make_database):
    rng = random.Random(77)
    for _ in range(10):
        db = make_database(small_query, rng, max_rows=3)
        expected = oracle_eval(small_query, db)
        for step in iter_reduction(small_query, db):
            assert any(oracle_eval(m, step.database) for m in step.queries) == expected, step.variable


def test_sizes_within_bounds(triangle, make_database):
    rng = random.Random(12)
    for _ in range(10):
        db = make_database(triangle, rng, max_rows=6, coord=20)
        out = reduce_full(triangle, db)
        bounds = reduction_size_bounds(triangle, db, out)
        for label, rel in out.database.items():
            assert len(rel) <= bounds[label]


@pytest.mark.slow
def test_size_constant_is_stable_across_n():
    q = parse_query("R([A],B), S([A],C)")
    rewritten = onestep_query(q, "A", ("R", "S"))
    rng = random.Random(2)
    constants: dict[int, list[float]] = {1: [], 2: []}
    for exponent in range(8, 15):
        n = 2**exponent
        relations = {}
        for atom in q.atoms:
            rows = []
            for j in range(n):
                left = rng.randint(0, 8 * n)
                rows.append((Interval(left, left + rng.randint(0, 2 * n)), Fraction(j)))
            relations[atom.label] = Relation(atom.label, atom.schema, tuple(rows))
        db = Database(relations)
        tree = tree_for(db, q, "A")
        for position, (atom, target) in enumerate(zip(q.atoms, rewritten.atoms), start=1):
            out = transform_relation(db[atom.label], target, "A", position, 2, tree)
            assert len(out) <= size_bound(tree.height, position, n)
            # posición i < k: log^i; posición final: log^(i-1)
            constants[position].append(len(out) / (n * exponent))
    for values in constants.values():
        assert max(values) <= 2 * min(values), values


def test_provenance_points_to_original_rows(triangle, make_database):
    db = make_database(triangle, random.Random(21))
    out = reduce_full(triangle, db)
    for member in out.queries:
        for atom in member.atoms:
            rel = out.database[atom.label]
            assert all(0 <= p < len(db[atom.origin]) for p in rel.provenance)


# ---------------------------------------------------------------------------
# Vuelta atrás
# ---------------------------------------------------------------------------

def _bits_database(member, rng: random.Random, bits: int = 2, max_rows: int = 4) -> Database:
    relations = {}
    for atom in member.atoms:
        rows = {
            tuple(format(rng.randrange(2**bits), f"0{bits}b") for _ in atom.schema)
            for _ in range(rng.randint(1, max_rows))
        }
        relations[atom.label] = Relation(atom.label, atom.schema, tuple(sorted(rows)))
    return Database(relations)


def _reduced_triangle_member(triangle, make_database, labels: set[str]):
    out = reduce_full(triangle, make_database(triangle, random.Random(0)))
    return next(m for m in out.queries if set(m.labels) == labels)


def test_backward_preserves_truth_and_size(triangle, make_database):
    member = _reduced_triangle_member(triangle, make_database, {"R_{2;1}", "S_{2;2}", "T_{1;1}"})
    assert str(member) == "R_{2;1}(A1,A2,B1), S_{2;2}(B1,B2,C1,C2), T_{1;1}(A1,C1)"
    rng = random.Random(42)
    for _ in range(100):
        db_ej = _bits_database(member, rng)
        q_ij, db_ij = backward_transform(member, db_ej, triangle)
        assert q_ij is triangle
        assert db_ij.total_rows == db_ej.total_rows
        assert oracle_eval(triangle, db_ij) == wcoj_bool(member, db_ej)


def test_backward_rejects_mixed_lengths(triangle, make_database):
    member = reduce_full(triangle, make_database(triangle, random.Random(0))).queries[0]
    db_ej = _bits_database(member, random.Random(1))
    first = member.atoms[0]
    bad = Relation(first.label, first.schema, (("0",) * len(first.schema), ("01",) * len(first.schema)))
    db_bad = Database({**dict(db_ej), first.label: bad})
    with pytest.raises(MixedBitstringLengths):
        backward_transform(member, db_bad, triangle)


def test_backward_rejects_self_join(triangle, make_database):
    member = reduce_full(triangle, make_database(triangle, random.Random(0))).queries[0]
    with pytest.raises(SelfJoinUnsupported):
        backward_transform(member, Database({}), catalog_query("forked"))


# ---------------------------------------------------------------------------
# Dureza: embebido de la consulta de ciclo
# ---------------------------------------------------------------------------

def _cycle_database(k: int, rows: dict[int, list[tuple[int, int]]]) -> Database:
    source = cycle_query(k)
    return Database({
        f"S{j}": Relation(
            f"S{j}",
            source.atom(f"S{j}").schema,
            tuple((Fraction(a), Fraction(b)) for a, b in rows[j]),
        )
        for j in range(1, k + 1)
    })


def test_cycle_query_shape():
    assert str(cycle_query(3)) == "S1(X3,X1), S2(X1,X2), S3(X2,X3)"
    with pytest.raises(ValueError):
        cycle_query(2)


def test_embed_triangle_true_and_false(triangle):
    true_db = _cycle_database(3, {1: [(3, 1)], 2: [(1, 2)], 3: [(2, 3)]})
    q, db, cycle = embed_cycle_query(triangle, true_db)
    assert cycle.length == 3
    assert oracle_eval(q, db)

    false_db = _cycle_database(3, {1: [(3, 1)], 2: [(1, 2)], 3: [(2, 4)]})
    _, db, _ = embed_cycle_query(triangle, false_db)
    assert not oracle_eval(triangle, db)


@pytest.mark.parametrize("name", ["triangle", "triple-edge", "alpha-not-gamma", "lw4"])
def test_embedding_matches_cycle_query(name):
    target = catalog_query(name)
    k = find_berge_cycle(hypergraph_of(target), 3).length
    rng = random.Random(name)
    for _ in range(40):
        source = {
            j: [(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(1, 3))]
            for j in range(1, k + 1)
        }
        ej_db = _cycle_database(k, source)
        q, db, cycle = embed_cycle_query(target, ej_db)
        assert db.total_rows == ej_db.total_rows + len(target.atoms) - cycle.length
        assert oracle_eval(q, db) == oracle_eval(cycle_query(k), ej_db)


def test_embed_requires_cycle_and_intervals():
    with pytest.raises(NoBergeCycle):
        embed_cycle_query(catalog_query("star"), Database({}))
    with pytest.raises(InvalidQuery):
        embed_cycle_query(catalog_query("triangle-ej"), Database({}))


def test_embed_over_filler_uses_full_interval():
    target = parse_query("R([A],[B]), S([B],[C]), T([A],[C]), U([A])")
    ej_db = _cycle_database(3, {1: [(0, 0)], 2: [(0, 0)], 3: [(0, 0)]})
    _, db, _ = embed_cycle_query(target, ej_db)
    assert db["U"].rows == ((Interval(-1, 1),),)


# ---------------------------------------------------------------------------
# Consultas grandes
# ---------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("name", ["lw4", "clique4"])
def test_large_queries_simplify_to_81(name):
    h = hypergraph_of(catalog_query(name))
    assert tau_size(h) == 1296
    assert len(simplify_hypergraphs(tau(h))) == 81
