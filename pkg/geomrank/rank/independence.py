"""
独立集

X 独立 ⇔ 对每个 x ∈ X 有 x ∉ ⟨X∖{x}⟩。
只检查极大真子集即可：若某个真子集 Y 满足 ⟨Y⟩ = ⟨X⟩，取 x ∈ X∖Y 就有 ⟨X∖{x}⟩ = ⟨X⟩。
由 span 的单调性，独立集的子集仍独立，回溯搜索可以按前缀剪枝。
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from geomrank.config.config import get_config
from geomrank.core.closure import span_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import PointSet, iter_bits, mask_of
from geomrank.utils.budget import Budget, ensure_budget
from geomrank.utils.errors import BudgetExceeded, InvalidPoint, NotDistinct


def _to_mask(G: Geometry, X: PointSet | Iterable[int]) -> int:
    if isinstance(X, PointSet):
        return X.mask
    return PointSet.of(G.n_points, X).mask


def is_independent_mask(G: Geometry, mask: int, budget: Optional[Budget] = None) -> bool:
    for x in iter_bits(mask):
        if span_mask(G, mask & ~(1 << x), budget=budget) >> x & 1:
            return False
    return True


def is_independent(G: Geometry, X: PointSet | Iterable[int], budget: Optional[Budget] = None) -> bool:
    """X 是否独立（极大真子集判据）"""
    return is_independent_mask(G, _to_mask(G, X), budget)


def is_independent_by_definition(G: Geometry, X: PointSet | Iterable[int]) -> bool:
    """按定义检查：X 的每个真子集 Y 都有 ⟨Y⟩ ⊊ ⟨X⟩（指数级，只用于小集合交叉验证）"""
    mask = _to_mask(G, X)
    full_span = span_mask(G, mask)
    points = list(iter_bits(mask))
    for size in range(len(points)):
        for subset in combinations(points, size):
            if span_mask(G, mask_of(subset)) == full_span:
                return False
    return True


def check_order(G: Geometry, order: Sequence[int]) -> List[int]:
    """校验有序点列：无重复，编号合法"""
    seen = 0
    result: List[int] = []
    for p in order:
        p = int(p)
        if p < 0 or p >= G.n_points:
            raise InvalidPoint(f"点 {p} 越界（几何只有 {G.n_points} 个点）")
        if seen >> p & 1:
            raise NotDistinct(f"有序点列中点 {p} 重复出现")
        seen |= 1 << p
        result.append(p)
    return result


def greedy_basis(G: Geometry, order: Sequence[int], budget: Optional[Budget] = None) -> List[int]:
    """
    按给定顺序贪心构造极大独立集

    依次扫描 order，当 x ∉ ⟨已保留⟩ 且加入后仍独立时保留 x。
    EP 成立时第二个条件自动满足，结果是 Γ 的一组基。

    Args:
        G: 几何
        order: P 的一个排列

    Returns:
        保留下来的点（按扫描顺序）
    """
    order = check_order(G, order)
    kept: List[int] = []
    kept_mask = 0
    closed = 0
    for x in order:
        if closed >> x & 1:
            continue
        candidate = kept_mask | (1 << x)
        if not is_independent_mask(G, candidate, budget):
            continue
        kept.append(x)
        kept_mask = candidate
        closed = span_mask(G, 1 << x, base=closed, budget=budget)
    return kept


def greedy_spanning(G: Geometry, order: Sequence[int], budget: Optional[Budget] = None) -> List[int]:
    """按顺序保留不在当前 span 中的点；order 覆盖 P 时结果一定生成 Γ"""
    kept: List[int] = []
    closed = 0
    for x in check_order(G, order):
        if closed >> x & 1:
            continue
        kept.append(x)
        closed = span_mask(G, 1 << x, base=closed, budget=budget)
    return kept


def _greedy_coclique(G: Geometry, seed_mask: int) -> int:
    """从 seed 出发按升序贪心扩张两两不共线的点集"""
    nb = G.neighbors
    chosen = 0
    for p in iter_bits(seed_mask):
        if not (nb[p] & ~(1 << p)) & chosen:
            chosen |= 1 << p
    for p in range(G.n_points):
        if chosen >> p & 1:
            continue
        if not (nb[p] & ~(1 << p)) & chosen:
            chosen |= 1 << p
    return chosen


def _perp_perp_seed(G: Geometry) -> int:
    """第一对不共线点 x, y 的 {x,y}^⊥⊥（包含 x, y）"""
    nb = G.neighbors
    for x in range(G.n_points):
        others = G.full_mask & ~nb[x]
        if not others:
            continue
        y = (others & -others).bit_length() - 1
        perp = nb[x] & nb[y]
        double = G.full_mask
        for z in iter_bits(perp):
            double &= nb[z]
        return double | (1 << x) | (1 << y)
    return 0


def _backtrack_independent(
    G: Geometry, size: int, budget: Budget, candidates: Optional[Sequence[int]] = None
) -> Optional[List[int]]:
    """按字典序搜索大小为 size 的独立集，独立性前缀剪枝"""
    pool = list(candidates) if candidates is not None else list(range(G.n_points))
    if size == 0:
        return []
    if size > len(pool):
        return None
    chosen: List[int] = []

    def extend(start: int, mask: int) -> bool:
        if len(chosen) == size:
            return True
        remaining = size - len(chosen)
        for idx in range(start, len(pool) - remaining + 1):
            p = pool[idx]
            candidate = mask | (1 << p)
            # 新点不能落在已选点的 span 中，已选点也不能落在加入新点后的 span 中
            if span_mask(G, mask, budget=budget) >> p & 1:
                continue
            if not is_independent_mask(G, candidate, budget):
                continue
            chosen.append(p)
            if extend(idx + 1, candidate):
                return True
            chosen.pop()
        return False

    return list(chosen) if extend(0, 0) else None


def independence_witness(
    G: Geometry, target: int, budget: Optional[Budget] = None
) -> Optional[List[int]]:
    """
    寻找大小至少为 target 的独立集

    先做贪心（两两不共线点集以及不同顺序的 greedy_basis），不够再按字典序回溯。
    找不到返回 None。

    Args:
        G: 几何
        target: 目标大小（≥ 0）
        budget: 预算

    Returns:
        独立点集（升序）或 None
    """
    budget = ensure_budget(budget)
    if target <= 0:
        return []
    if target > G.n_points:
        return None

    # 两两不共线的点集自身就是子空间，其每个子集也是，所以一定独立
    for seed in (_perp_perp_seed(G), 0):
        coclique = _greedy_coclique(G, seed)
        if coclique.bit_count() >= target:
            logger.debug(f"贪心不共线点集给出大小 {coclique.bit_count()} 的独立集")
            return list(iter_bits(coclique))

    for order in (range(G.n_points), range(G.n_points - 1, -1, -1)):
        kept = greedy_basis(G, list(order), budget)
        if len(kept) >= target:
            return sorted(kept)

    logger.debug(f"贪心未达到 {target}，开始回溯搜索")
    try:
        found = _backtrack_independent(G, target, budget)
    except BudgetExceeded as exc:
        exc.partial.update({"target": target})
        raise
    return sorted(found) if found is not None else None


def max_independent(
    G: Geometry, upper: Optional[int] = None, budget: Optional[Budget] = None
) -> Tuple[int, List[int], bool]:
    """
    最大独立集

    点数不超过 rank.exact_independence_max_points 时从上界往下精确搜索，否则只给贪心下界。

    Args:
        G: 几何
        upper: 已知上界（例如最长链长度）
        budget: 预算

    Returns:
        (大小, 见证, 是否精确)
    """
    budget = ensure_budget(budget)
    best: List[int] = []
    for seed in (_perp_perp_seed(G), 0):
        coclique = list(iter_bits(_greedy_coclique(G, seed)))
        if len(coclique) > len(best):
            best = coclique
    for order in (range(G.n_points), range(G.n_points - 1, -1, -1)):
        kept = sorted(greedy_basis(G, list(order), budget))
        if len(kept) > len(best):
            best = kept

    threshold = int(get_config().get("rank.exact_independence_max_points", 20))
    if G.n_points > threshold:
        return len(best), best, False

    top = G.n_points if upper is None else min(upper, G.n_points)
    for size in range(top, len(best), -1):
        found = _backtrack_independent(G, size, budget)
        if found is not None:
            return size, found, True
    return len(best), best, True
