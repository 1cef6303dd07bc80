"""极大链判定与扩张"""

from __future__ import annotations

from typing import List, Optional, Sequence, Union

from geomrank.chains.chain import Chain, Member, as_chain
from geomrank.core.closure import span_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import iter_bits
from geomrank.utils.budget import Budget
from geomrank.utils.schemas import MaximalityReport


def _between(G: Geometry, lo: int, hi: int, budget: Optional[Budget] = None) -> Optional[int]:
    """lo ⊊ hi 均为子空间时，返回最小的 p 对应的 span(lo∪{p}) ⊊ hi；hi 覆盖 lo 时返回 None"""
    for p in iter_bits(hi & ~lo):
        candidate = span_mask(G, 1 << p, base=lo, budget=budget)
        if candidate != hi:
            return candidate
    return None


def is_maximal_chain(
    G: Geometry, C: Union[Chain, Sequence[Member]], budget: Optional[Budget] = None
) -> MaximalityReport:
    """
    极大链判定

    依次检查：首成员为 ∅、末成员为 P、相邻成员构成覆盖；报告第一个不满足的条件。
    """
    chain = as_chain(G, C)
    masks = chain.masks
    if masks[0] != 0:
        return MaximalityReport(is_maximal=False, violation="first_not_empty")
    if masks[-1] != G.full_mask:
        return MaximalityReport(is_maximal=False, violation="last_not_full")
    for i, (lo, hi) in enumerate(zip(masks, masks[1:])):
        mid = _between(G, lo, hi, budget)
        if mid is not None:
            return MaximalityReport(
                is_maximal=False, violation="not_a_cover", index=i, between=list(iter_bits(mid))
            )
    return MaximalityReport(is_maximal=True)


def extend_to_maximal(
    G: Geometry, C: Union[Chain, Sequence[Member]], budget: Optional[Budget] = None
) -> Chain:
    """
    把链扩张为包含它的极大链

    缺少 ∅ 或 P 时补上；相邻对 (S, S') 不是覆盖时插入 span(S∪{p})（p 取最小可行点），
    直到所有相邻对都是覆盖。每次插入严格增加成员数，成员数不超过点数 + 1，故必然终止。
    """
    chain = as_chain(G, C)
    masks: List[int] = list(chain.masks)
    if masks[0] != 0:
        masks.insert(0, 0)
    if masks[-1] != G.full_mask:
        masks.append(G.full_mask)
    i = 0
    while i < len(masks) - 1:
        mid = _between(G, masks[i], masks[i + 1], budget)
        if mid is None:
            i += 1
        else:
            masks.insert(i + 1, mid)
    return Chain(G, masks, validate=False)
