"""
生成集与生成秩

generating_rank 用迭代加深：子集大小 k 从下界开始递增，每个 k 按字典序穷举 k 元子集。
前缀剪枝：若下一个点已在前缀的 span 中，整条分支等价于更小的子集，已在更小的 k 被排除。
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, List, Optional

from loguru import logger

from geomrank.config.config import get_config
from geomrank.core.closure import span_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import PointSet, iter_bits, mask_of
from geomrank.rank.independence import greedy_spanning
from geomrank.utils.budget import Budget, ensure_budget
from geomrank.utils.errors import BudgetExceeded, UnsupportedParameter
from geomrank.utils.schemas import RankValue


def is_generating(G: Geometry, X: PointSet | Iterable[int], budget: Optional[Budget] = None) -> bool:
    """⟨X⟩ = P"""
    mask = X.mask if isinstance(X, PointSet) else PointSet.of(G.n_points, X).mask
    return span_mask(G, mask, budget=budget) == G.full_mask


def _search_size(G: Geometry, k: int, budget: Budget) -> Optional[List[int]]:
    """字典序搜索大小为 k 的生成集"""
    n = G.n_points
    full = G.full_mask
    chosen: List[int] = []

    def extend(start: int, closed: int) -> bool:
        depth = len(chosen)
        if depth == k:
            return closed == full
        for p in range(start, n - (k - depth) + 1):
            if closed >> p & 1:
                continue
            chosen.append(p)
            if extend(p + 1, span_mask(G, 1 << p, base=closed, budget=budget)):
                return True
            chosen.pop()
        return False

    return list(chosen) if extend(0, 0) else None


def generating_rank(
    G: Geometry, budget: Optional[Budget] = None, lower_hint: int = 1
) -> RankValue:
    """
    精确生成秩 rk_gen

    Args:
        G: 几何
        budget: 预算；超出时抛出 BudgetExceeded，partial 中带已知上下界
        lower_hint: 已知下界（例如嵌入维数）

    Returns:
        精确 RankValue，witness 为字典序最小的最小生成集（或贪心见证）
    """
    budget = ensure_budget(budget)
    greedy = greedy_spanning(G, range(G.n_points), budget)
    upper, upper_witness = len(greedy), greedy
    k = max(1, lower_hint)
    logger.debug(f"生成秩搜索: {G!r}, 贪心上界 {upper}")
    try:
        while k < upper:
            found = _search_size(G, k, budget)
            if found is not None:
                logger.debug(f"找到大小 {k} 的生成集 {found}")
                return RankValue.exact_value(k, found)
            logger.debug(f"大小 {k} 的子集均不生成")
            k += 1
    except BudgetExceeded as exc:
        exc.partial.update({"lower": k, "upper": upper, "witness": upper_witness})
        raise
    return RankValue.exact_value(upper, upper_witness)


def enumerate_bases(G: Geometry, budget: Optional[Budget] = None) -> List[List[int]]:
    """
    枚举全部基（极小生成集），只用于小几何

    Returns:
        按字典序排列的基列表
    """
    budget = ensure_budget(budget)
    limit = int(get_config().get("rank.enumerate_bases_max_points", 12))
    if G.n_points > limit:
        raise UnsupportedParameter(f"枚举全部基只支持不超过 {limit} 个点（当前 {G.n_points}）")
    generating = set()
    for size in range(G.n_points + 1):
        for subset in combinations(range(G.n_points), size):
            mask = mask_of(subset)
            if span_mask(G, mask, budget=budget) == G.full_mask:
                generating.add(mask)
    # 生成集向上封闭，只需检查去掉一个点的子集
    bases = [
        m for m in generating
        if not any((m & ~(1 << x)) in generating for x in iter_bits(m))
    ]
    return sorted((list(iter_bits(m)) for m in bases), key=lambda b: (len(b), b))
