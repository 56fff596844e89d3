"""Fixtures compartidas: consultas del catálogo y generadores aleatorios deterministas."""

import random
from fractions import Fraction

import pytest

from intervalos.cli.catalog import catalog_query
from intervalos.cli.parser import parse_query
from intervalos.core.database import Database, Relation
from intervalos.core.model import Hypergraph, Query
from intervalos.core.rational import Interval
from intervalos.segtree import SegmentTree
from intervalos.widths.cover import clear_rho_cache


@pytest.fixture(autouse=True)
def _fresh_rho_cache():
    clear_rho_cache()
    yield


@pytest.fixture
def triangle() -> Query:
    return catalog_query("triangle")


@pytest.fixture
def fig3_tree() -> SegmentTree:
    return SegmentTree([Interval(1, 4), Interval(3, 4)])


def random_interval(rng: random.Random, coord: int, max_width: int = 3) -> Interval:
    left = rng.randint(0, coord)
    return Interval(Fraction(left), Fraction(left + rng.randint(0, max_width)))


def random_database(
    q: Query,
    rng: random.Random,
    max_rows: int = 4,
    coord: int = 8,
    points: int = 3,
) -> Database:
    """Base aleatoria pequeña para q (relaciones de 0..max_rows filas, en general no vacías)."""
    relations = {}
    for atom in q.atoms:
        n = rng.randint(1, max_rows)
        rows = []
        for _ in range(n):
            rows.append(tuple(
                random_interval(rng, coord) if v.is_interval else Fraction(rng.randint(0, points))
                for v in atom.schema
            ))
        relations[atom.label] = Relation(atom.label, atom.schema, tuple(rows))
    return Database(relations)


def random_hypergraph(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 5,
    max_edge_size: int = 3,
    interval: bool = True,
) -> Hypergraph:
    names = [chr(ord("A") + i) for i in range(rng.randint(1, max_vertices))]
    edges = []
    for e in range(rng.randint(1, max_edges)):
        size = rng.randint(1, min(max_edge_size, len(names)))
        edges.append((f"e{e}", frozenset(rng.sample(names, size))))
    return Hypergraph.from_edges(edges, interval=names if interval else ())


SMALL_QUERIES = [
    "R([A],[B]), S([B],[C]), T([A],[C])",
    "R([A],[B]), S([B],[C])",
    "R([A],B), S(B,[C]), T([A],[C])",
    "R([A],[B],[C]), S([A],[B])",
    "R([A]), S([A]), T([A])",
    "R([A],B), S([A],B)",
    "R(A,[B]), S([B],C), T(C,A)",
]


@pytest.fixture(params=SMALL_QUERIES)
def small_query(request) -> Query:
    return parse_query(request.param)


@pytest.fixture
def make_database():
    return random_database


@pytest.fixture
def make_hypergraph():
    return random_hypergraph


@pytest.fixture
def make_interval():
    return random_interval
