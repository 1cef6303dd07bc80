"""独立集、生成集、生成秩与秩报告"""

from .generating import enumerate_bases, generating_rank, is_generating
from .independence import (
    check_order,
    greedy_basis,
    greedy_spanning,
    independence_witness,
    is_independent,
    is_independent_by_definition,
    max_independent,
)
from .report import rank_report

__all__ = [
    "check_order",
    "enumerate_bases",
    "generating_rank",
    "greedy_basis",
    "greedy_spanning",
    "independence_witness",
    "is_generating",
    "is_independent",
    "is_independent_by_definition",
    "max_independent",
    "rank_report",
]
