"""
链与独立集之间的互相构造

- chain_from_independent：有序独立集 ξ ↦ 前缀 span 组成的链，长度 = |ξ|
- independent_from_chain：链 ↦ 每一步新增部分中各取一点
- condense_generating_chain：可能相关的生成序列 ↦ 去重后的严格链与引起跳跃的点
"""

from __future__ import annotations

import random
from typing import List, Literal, NamedTuple, Optional, Sequence, Union

from geomrank.chains.chain import Chain, Member, as_chain
from geomrank.chains.lattice import enumerate_subspaces
from geomrank.chains.maximal import is_maximal_chain
from geomrank.core.closure import span_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import iter_bits, lowest_bit
from geomrank.rank.independence import check_order, is_independent_mask
from geomrank.utils.budget import Budget
from geomrank.utils.errors import DependentInput, InvalidChain, InvariantViolation, NotGenerating
from geomrank.utils.schemas import BasisChainReport


class ChainPoints(NamedTuple):
    """从链中取出的点列及其独立性"""

    points: List[int]
    independent: bool


class CondensedChain(NamedTuple):
    chain: Chain
    points: List[int]


def _prefix_chain(G: Geometry, order: Sequence[int], budget: Optional[Budget] = None) -> List[int]:
    masks = [0]
    closed = 0
    for x in order:
        closed = span_mask(G, 1 << x, base=closed, budget=budget)
        masks.append(closed)
    return masks


def chain_from_independent(G: Geometry, xi: Sequence[int], budget: Optional[Budget] = None) -> Chain:
    """
    S_γ = ⟨ξ 的前 γ 个点⟩，γ = 0..|ξ|

    Raises:
        DependentInput: ξ 对应的点集不独立
    """
    order = check_order(G, xi)
    mask = 0
    for x in order:
        mask |= 1 << x
    if not is_independent_mask(G, mask, budget):
        raise DependentInput(f"点列 {order} 不独立")
    return Chain(G, _prefix_chain(G, order, budget), validate=False)


def independent_from_chain(
    G: Geometry,
    C: Union[Chain, Sequence[Member]],
    picker: Literal["canonical", "seeded"] = "canonical",
    seed: int = 0,
    assume_ep: bool = False,
) -> ChainPoints:
    """
    对每对相邻成员取 x_δ ∈ S_{δ+1} ∖ S_δ

    canonical 取编号最小的点，seeded 用种子随机取。
    EP 成立时结果一定独立；assume_ep=True 时若不独立则视为内部错误。

    Raises:
        EmptyChain: 链没有成员
        InvalidChain: 第一个成员不是空集
    """
    chain = as_chain(G, C)
    if chain.masks[0] != 0:
        raise InvalidChain("链的第一个成员必须是空集")
    rng = random.Random(seed)
    points: List[int] = []
    for lo, hi in zip(chain.masks, chain.masks[1:]):
        gap = hi & ~lo
        if picker == "canonical":
            points.append(lowest_bit(gap))
        else:
            points.append(rng.choice(list(iter_bits(gap))))
    mask = 0
    for p in points:
        mask |= 1 << p
    independent = is_independent_mask(G, mask)
    if assume_ep and not independent:
        raise InvariantViolation(f"EP 成立时从链取出的点列应独立: {points}")
    return ChainPoints(points, independent)


def condense_generating_chain(
    G: Geometry, xi: Sequence[int], budget: Optional[Budget] = None
) -> CondensedChain:
    """
    去掉前缀 span 序列中的重复项，得到严格递增链和引起每次跳跃的点 X'

    保证 ⟨X'⟩ = P 且 |X'| = 链长度。

    Raises:
        NotGenerating: ξ 不生成 Γ
    """
    order = check_order(G, xi)
    masks = _prefix_chain(G, order, budget)
    if masks[-1] != G.full_mask:
        raise NotGenerating(f"点列 {order} 不生成整个几何")
    condensed = [0]
    jumps: List[int] = []
    for x, m in zip(order, masks[1:]):
        if m != condensed[-1]:
            condensed.append(m)
            jumps.append(x)
    return CondensedChain(Chain(G, condensed, validate=False), jumps)


def is_basis_chain(G: Geometry, xi: Sequence[int], budget: Optional[Budget] = None) -> BasisChainReport:
    """
    有序独立集 ξ 的三个条件：X 是基、链顶为 P、链极大

    EP 成立时三者等价。
    """
    chain = chain_from_independent(G, xi, budget)
    top_full = chain.masks[-1] == G.full_mask
    return BasisChainReport(
        # 独立且生成即为基
        is_basis=top_full,
        top_is_full=top_full,
        chain_is_maximal=is_maximal_chain(G, chain).is_maximal,
        chain_length=chain.length,
    )


def chain_extensions_above_top(
    G: Geometry, xi: Sequence[int], budget: Optional[Budget] = None
) -> List[List[int]]:
    """
    与 C_{X,ξ} 全部成员可比、但不在其中、也不真包含链顶的子空间

    EP 成立时应为空列表；返回找到的反例。
    """
    chain = chain_from_independent(G, xi, budget)
    members = set(chain.masks)
    top = chain.masks[-1]
    offenders: List[List[int]] = []
    for T in enumerate_subspaces(G, budget):
        if T in members:
            continue
        comparable = all((T & ~m == 0) or (m & ~T == 0) for m in chain.masks)
        if not comparable:
            continue
        if not (T != top and top & ~T == 0):
            offenders.append(list(iter_bits(T)))
    return offenders
