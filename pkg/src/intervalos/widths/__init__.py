"""Anchos: cobertura fraccional exacta (ρ*), fhtw por eliminación y cota superior del ancho ij."""

from .cover import EdgeCover, clear_rho_cache, fractional_edge_cover, rho_star
from .fhtw import (
    MemberWidth,
    TreeDecomposition,
    WidthAnalysis,
    decomposition_width,
    fhtw,
    ijw_fhtw_upper,
    predict_counts,
    validate_decomposition,
    width_report,
)
from .simplex import PackingTableau, SimplexResult, Unbounded, maximize_packing

__all__ = [
    "EdgeCover",
    "clear_rho_cache",
    "fractional_edge_cover",
    "rho_star",
    "MemberWidth",
    "TreeDecomposition",
    "WidthAnalysis",
    "decomposition_width",
    "fhtw",
    "ijw_fhtw_upper",
    "predict_counts",
    "validate_decomposition",
    "width_report",
    "PackingTableau",
    "SimplexResult",
    "Unbounded",
    "maximize_packing",
]
