"""
闭包（span）算子与子空间判定

span 用工作表不动点迭代：新加入的点逐个出队，检查经过它的每条直线，
若直线与当前集合至少交于两点则整条并入。
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional

from geomrank.core.geometry import Geometry
from geomrank.core.pointset import PointSet, iter_bits
from geomrank.utils.budget import Budget
from geomrank.utils.errors import NotASubspace


def span_mask(G: Geometry, mask: int, base: int = 0, budget: Optional[Budget] = None) -> int:
    """
    位图版 span

    Args:
        G: 几何
        mask: 待闭包的点集位图
        base: 已知是子空间的位图（增量计算时用），结果为 span(base ∪ mask)
        budget: 可选预算

    Returns:
        闭包位图
    """
    if budget is not None:
        budget.charge()
    current = base | mask
    queue = list(iter_bits(mask & ~base))
    line_masks = G.line_masks
    through = G.point_to_lines
    while queue:
        p = queue.pop()
        for li in through[p]:
            line = line_masks[li]
            missing = line & ~current
            if missing and (line & current).bit_count() >= 2:
                current |= missing
                queue.extend(iter_bits(missing))
    return current


def _as_mask(G: Geometry, X: PointSet | Iterable[int]) -> int:
    if isinstance(X, PointSet):
        return X.mask
    return PointSet.of(G.n_points, X).mask


def span(G: Geometry, X: PointSet | Iterable[int], budget: Optional[Budget] = None) -> PointSet:
    """包含 X 的最小子空间 ⟨X⟩"""
    return PointSet(G.n_points, span_mask(G, _as_mask(G, X), budget=budget))


def is_subspace_mask(G: Geometry, mask: int) -> bool:
    for line in G.line_masks:
        if line & ~mask and (line & mask).bit_count() >= 2:
            return False
    return True


def is_subspace(G: Geometry, S: PointSet | Iterable[int]) -> bool:
    """没有直线与 S 交于至少两点却不含于 S"""
    return is_subspace_mask(G, _as_mask(G, S))


def cover_masks(G: Geometry, mask: int, budget: Optional[Budget] = None) -> List[int]:
    """covers 的位图版本，调用方保证 mask 是子空间"""
    candidates: Dict[int, None] = {}
    for p in iter_bits(G.full_mask & ~mask):
        candidates[span_mask(G, 1 << p, base=mask, budget=budget)] = None
    minimal: List[int] = []
    for cand in sorted(candidates, key=int.bit_count):
        if any(k & ~cand == 0 for k in minimal):
            continue
        minimal.append(cand)
    minimal.sort(key=lambda m: tuple(iter_bits(m)))
    return minimal


def covers(G: Geometry, S: PointSet | Iterable[int], budget: Optional[Budget] = None) -> List[PointSet]:
    """
    S 的所有覆盖子空间

    即 {span(S∪{p}) : p ∉ S} 中的极小元（按包含关系），按规范顺序返回。
    """
    mask = _as_mask(G, S)
    if not is_subspace_mask(G, mask):
        raise NotASubspace(f"{PointSet(G.n_points, mask)} 不是子空间")
    return [PointSet(G.n_points, m) for m in cover_masks(G, mask, budget=budget)]


class SpanCache:
    """按位图缓存 span 结果，穷举搜索中反复使用"""

    def __init__(self, G: Geometry, budget: Optional[Budget] = None):
        self.G = G
        self.budget = budget
        self._cache: Dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        hit = self._cache.get(mask)
        if hit is None:
            hit = span_mask(self.G, mask, budget=self.budget)
            self._cache[mask] = hit
            self._cache.setdefault(hit, hit)
        return hit

    def extend(self, closed: int, p: int) -> int:
        """span(closed ∪ {p})，closed 必须是子空间"""
        key = closed | (1 << p)
        hit = self._cache.get(key)
        if hit is None:
            hit = span_mask(self.G, 1 << p, base=closed, budget=self.budget)
            self._cache[key] = hit
        return hit

    def __len__(self) -> int:
        return len(self._cache)
