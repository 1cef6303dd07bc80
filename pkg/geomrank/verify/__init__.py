"""内置几何注册表与验证套件"""

from .registry import builtin_names, is_polar_name, resolve_builtin, resolve_polar
from .suite import SUITES, list_checks, run_suite

__all__ = [
    "SUITES",
    "builtin_names",
    "is_polar_name",
    "list_checks",
    "resolve_builtin",
    "resolve_polar",
    "run_suite",
]
