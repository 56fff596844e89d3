"""Motores de evaluación booleana: oráculo, Yannakakis, join multivía, descomposición y pipeline IJ."""

from .decomposition import decomp_eval
from .leapfrog import variable_order, wcoj_bool, wcoj_iter, wcoj_witness
from .oracle import Witness, check_witness, oracle_eval, oracle_witness
from .pipeline import Strategy, classify_query, eval_ij
from .yannakakis import left_semi_join, relation_frame, yannakakis_bool

__all__ = [
    "decomp_eval",
    "variable_order",
    "wcoj_bool",
    "wcoj_iter",
    "wcoj_witness",
    "Witness",
    "check_witness",
    "oracle_eval",
    "oracle_witness",
    "Strategy",
    "classify_query",
    "eval_ij",
    "left_semi_join",
    "relation_frame",
    "yannakakis_bool",
]
