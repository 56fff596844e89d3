"""Tipos compartidos: racionales, intervalos, consultas, hipergrafos y bases de datos."""

from .database import Cell, Database, Relation, Row, database_epsilon, project_relation, validate
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _errors_all
from .model import Atom, Hypergraph, Query, ReducedRelationKey, Variable, VarKind, hypergraph_of
from .rational import (
    Interval,
    RawInterval,
    Rational,
    as_rational,
    closing_epsilon,
    dyadic_interval,
    format_rational,
    intersect_all,
    parse_rational,
)

__all__ = [
    "Cell",
    "Database",
    "Relation",
    "Row",
    "database_epsilon",
    "project_relation",
    "validate",
    "Atom",
    "Hypergraph",
    "Query",
    "ReducedRelationKey",
    "Variable",
    "VarKind",
    "hypergraph_of",
    "Interval",
    "RawInterval",
    "Rational",
    "as_rational",
    "closing_epsilon",
    "dyadic_interval",
    "format_rational",
    "intersect_all",
    "parse_rational",
    *_errors_all,
]
