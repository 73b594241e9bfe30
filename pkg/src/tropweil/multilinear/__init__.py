"""Indexed bases and exact multilinear operations for the rank-4 lattices,
their wedge/symmetric powers, and the 210-dimensional target T."""

from .indexing import (
    CLASS_DIM,
    GAMMA_GP_DIM,
    PARAM_NAMES,
    SYM2GP,
    SYM2W,
    T_DIM,
    TRIPLES,
    WEDGE_PAIRS,
    class_index,
    class_name,
    class_unindex,
    dump_index_tables,
    gamma_gp_index,
    gamma_gp_unindex,
    index_tables,
    sym2gp_of,
    sym2w_of,
    t_index,
    t_name,
    t_unindex,
    wedge_name,
)
from .poly import ParamPoly
from .ops import (
    TVector,
    decompose_in_span,
    gamma_wedge_sym_part,
    gp_sym_product,
    gp_sym_square,
    primitive_direction,
    sym_square_embed,
    t_linear_independent,
    wedge2,
)
from .polarize import (
    CONST,
    Formal,
    PolarizedEquation,
    evaluation_check,
    mono_value,
    polarize_identity,
    vector,
)

__all__ = [
    "CLASS_DIM",
    "GAMMA_GP_DIM",
    "PARAM_NAMES",
    "SYM2GP",
    "SYM2W",
    "T_DIM",
    "TRIPLES",
    "WEDGE_PAIRS",
    "class_index",
    "class_name",
    "class_unindex",
    "dump_index_tables",
    "gamma_gp_index",
    "gamma_gp_unindex",
    "index_tables",
    "sym2gp_of",
    "sym2w_of",
    "t_index",
    "t_name",
    "t_unindex",
    "wedge_name",
    "ParamPoly",
    "TVector",
    "decompose_in_span",
    "gamma_wedge_sym_part",
    "gp_sym_product",
    "gp_sym_square",
    "primitive_direction",
    "sym_square_embed",
    "t_linear_independent",
    "wedge2",
    "CONST",
    "Formal",
    "PolarizedEquation",
    "evaluation_check",
    "mono_value",
    "polarize_identity",
    "vector",
]
