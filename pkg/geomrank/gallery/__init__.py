"""示例几何：交换性质反例、射影空间、随机几何与自然数上的无限几何"""

from .example2 import b_set, c_b_set, c_set, example2
from .nat_lines import (
    divisors,
    e1_collinear,
    e1_in_prime_set,
    e1_lines_through,
    e1_lines_union,
    e1_span,
    e1_verify_prime_span,
    is_prime,
)
from .projective import fano, projective_space, random_geometries, random_geometry

__all__ = [
    "b_set",
    "c_b_set",
    "c_set",
    "divisors",
    "e1_collinear",
    "e1_in_prime_set",
    "e1_lines_through",
    "e1_lines_union",
    "e1_span",
    "e1_verify_prime_span",
    "example2",
    "fano",
    "is_prime",
    "projective_space",
    "random_geometries",
    "random_geometry",
]
