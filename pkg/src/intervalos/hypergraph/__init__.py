"""Aciclicidad de hipergrafos: GYO, join trees, ciclos de Berge, α/γ/ι/Berge, isomorfismo."""

from .berge import (
    BergeCycle,
    find_berge_cycle,
    incidence_graph,
    is_berge_acyclic,
    is_iota_acyclic,
    is_iota_acyclic_semantic,
)
from .gyo import GyoStep, JoinTree, build_join_tree, gyo_reduce, is_alpha_acyclic
from .isomorphism import canonical_form, isomorphism_classes
from .structure import (
    drop_singleton_vertices,
    induced_set,
    is_conformal,
    is_cycle_free,
    is_gamma_acyclic,
    minimisation,
)

__all__ = [
    "BergeCycle",
    "find_berge_cycle",
    "incidence_graph",
    "is_berge_acyclic",
    "is_iota_acyclic",
    "is_iota_acyclic_semantic",
    "GyoStep",
    "JoinTree",
    "build_join_tree",
    "gyo_reduce",
    "is_alpha_acyclic",
    "canonical_form",
    "isomorphism_classes",
    "drop_singleton_vertices",
    "induced_set",
    "is_conformal",
    "is_cycle_free",
    "is_gamma_acyclic",
    "minimisation",
]
