"""有限域查表运算、线性代数与形式"""

from .field import SUPPORTED_ORDERS, Field, get_field
from .forms import (
    FORM_KINDS,
    FormSpec,
    ambient_dim,
    bilinear_matrix,
    canonical_kind,
    hyperbolic_basis,
    is_singular_vectors,
    is_totally_singular,
    perp,
    quadratic_values,
    radical,
    standard_form,
    witt_index,
)
from .linalg import (
    LinearSubspace,
    all_vectors,
    encode,
    matmul,
    normalize,
    normalize_rows,
    nullspace,
    projective_points,
    rank,
    rref,
)

__all__ = [
    "FORM_KINDS",
    "SUPPORTED_ORDERS",
    "Field",
    "FormSpec",
    "LinearSubspace",
    "all_vectors",
    "ambient_dim",
    "bilinear_matrix",
    "canonical_kind",
    "encode",
    "get_field",
    "hyperbolic_basis",
    "is_singular_vectors",
    "is_totally_singular",
    "matmul",
    "normalize",
    "normalize_rows",
    "nullspace",
    "perp",
    "projective_points",
    "quadratic_values",
    "radical",
    "rank",
    "rref",
    "standard_form",
    "witt_index",
]
