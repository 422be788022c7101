"""Hulls of vector rank-metric codes and the equivalences that shrink them."""

__version__ = "0.1.0"

from rankhull.field import FieldTower, make_tower
from rankhull.linalg import Matrix, RowSpace, intersect, inverse, kernel, rank, rref
from rankhull.codes import (
    EquivalenceWitness,
    RankMetricCode,
    apply_witness,
    dual,
    hull,
    hull_dim,
    is_lcd,
    make_code,
    rank_weight,
    standardize_hull,
)
from rankhull.variation import build_Y, make_lcd, make_lcd_h1, reduce_hull
from rankhull.associated import (
    ExtensionBasis,
    MatrixCode,
    associate,
    dual_basis,
    extended_block_hull_chain,
    find_self_dual_basis,
    matrix_dual,
    matrix_hull,
    reduce_hull_matrix,
)

__all__ = [
    "EquivalenceWitness",
    "ExtensionBasis",
    "FieldTower",
    "Matrix",
    "MatrixCode",
    "RankMetricCode",
    "RowSpace",
    "apply_witness",
    "associate",
    "build_Y",
    "dual",
    "dual_basis",
    "extended_block_hull_chain",
    "find_self_dual_basis",
    "hull",
    "hull_dim",
    "intersect",
    "inverse",
    "is_lcd",
    "kernel",
    "make_code",
    "make_lcd",
    "make_lcd_h1",
    "make_tower",
    "matrix_dual",
    "matrix_hull",
    "rank",
    "rank_weight",
    "reduce_hull",
    "reduce_hull_matrix",
    "rref",
    "standardize_hull",
]
