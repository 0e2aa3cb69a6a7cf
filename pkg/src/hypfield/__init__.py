"""Exact-arithmetic engine for the field of hyperelliptic functions.

The package derives, for any genus g >= 1, the polynomial expressions of
the curve parameters and of all two-index functions in the 3g generators,
machine-verifies that those expressions reduce the defining equations of
the ambient variety to zero, and backs the symbolic pipeline with genus-1
Weierstrass numerics and exact Jacobian-rank experiments.
"""

__version__ = "0.1.0"

from .relations import GenusContext
from .rewriter import RelationTable, build_table, reduce_expr
from .variety import p_eval, p_jacobian_rank, p_map, uniformize_check

__all__ = [
    "GenusContext",
    "RelationTable",
    "build_table",
    "reduce_expr",
    "uniformize_check",
    "p_map",
    "p_eval",
    "p_jacobian_rank",
    "__version__",
]
