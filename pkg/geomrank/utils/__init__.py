"""通用工具：异常、预算、日志、输出 Schema"""

from .budget import Budget, ensure_budget
from .errors import (
    BudgetExceeded,
    DegeneratePolarRank,
    DependentInput,
    DimensionMismatch,
    EmptyChain,
    GeomError,
    GeometryFormatError,
    InvalidChain,
    InvalidLine,
    InvalidPoint,
    InvariantViolation,
    NotASubspace,
    NotDistinct,
    NotGenerating,
    NotNice,
    UnsupportedField,
    UnsupportedParameter,
)
from .log import setup_logging

__all__ = [
    "Budget",
    "ensure_budget",
    "setup_logging",
    "GeomError",
    "BudgetExceeded",
    "DegeneratePolarRank",
    "DependentInput",
    "DimensionMismatch",
    "EmptyChain",
    "GeometryFormatError",
    "InvalidChain",
    "InvalidLine",
    "InvalidPoint",
    "InvariantViolation",
    "NotASubspace",
    "NotDistinct",
    "NotGenerating",
    "NotNice",
    "UnsupportedField",
    "UnsupportedParameter",
]
