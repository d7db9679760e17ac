"""Classical combinators: Hecke traces, newspace dimensions and Petersson sums."""

from .arith import MobiusPair, cubefull_up_to, is_cubefull, mobius_pairs, squarefree_divisors
from .hurwitz import hurwitz_class_number
from .petersson import PeterssonValue, bessel_j, kloosterman, petersson_delta, petersson_delta_new
from .traces import LevelWeight, dim_cusp, dim_new, dim_new_atkin_lehner, trace_hecke, trace_hecke_new

__all__ = [
    "LevelWeight",
    "MobiusPair",
    "PeterssonValue",
    "bessel_j",
    "cubefull_up_to",
    "dim_cusp",
    "dim_new",
    "dim_new_atkin_lehner",
    "hurwitz_class_number",
    "is_cubefull",
    "kloosterman",
    "mobius_pairs",
    "petersson_delta",
    "petersson_delta_new",
    "squarefree_divisors",
    "trace_hecke",
    "trace_hecke_new",
]
