"""Reducción IJ → EJ: pasos, algoritmo completo, τ, simplificación, vuelta atrás y dureza."""

from .algorithm import ReductionOutput, ReductionStep, iter_reduction, reduce_full, size_bound
from .backward import backward_transform
from .hardness import cycle_query, embed_cycle_query
from .onestep import (
    edge_order,
    fresh_names,
    onestep_database,
    onestep_disjunction,
    onestep_hypergraph,
    onestep_query,
    transform_relation,
    tree_for,
)
from .simplify import (
    SimplifiedQuery,
    project_singletons,
    query_signature,
    simplify,
    simplify_hypergraphs,
)
from .splits import bitstring_splits, split_count
from .tau import tau, tau_size

__all__ = [
    "ReductionOutput",
    "ReductionStep",
    "iter_reduction",
    "reduce_full",
    "size_bound",
    "backward_transform",
    "cycle_query",
    "embed_cycle_query",
    "edge_order",
    "fresh_names",
    "onestep_database",
    "onestep_disjunction",
    "onestep_hypergraph",
    "onestep_query",
    "transform_relation",
    "tree_for",
    "SimplifiedQuery",
    "project_singletons",
    "query_signature",
    "simplify",
    "simplify_hypergraphs",
    "bitstring_splits",
    "split_count",
    "tau",
    "tau_size",
]
