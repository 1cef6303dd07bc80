"""奇异子空间、极秩与双曲线"""

from __future__ import annotations

import random
from typing import List, Literal, Optional, Tuple

from loguru import logger

from geomrank.config.config import get_config
from geomrank.core.closure import span_mask
from geomrank.core.pointset import PointSet, iter_bits, lowest_bit
from geomrank.gf.forms import hyperbolic_basis
from geomrank.gf.linalg import LinearSubspace
from geomrank.polar.space import PolarGeometry
from geomrank.utils.errors import BudgetExceeded, InvariantViolation, NotDistinct, UnsupportedParameter
from geomrank.utils.schemas import EmbeddingBounds, RankValue


def is_singular_mask(PG: PolarGeometry, mask: int) -> bool:
    """点集两两共线"""
    nb = PG.geometry.neighbors
    return all(nb[p] & mask == mask for p in iter_bits(mask))


def greedy_singular_chain(PG: PolarGeometry) -> List[int]:
    """
    奇异子空间的贪心链 ∅ ⊂ S_1 ⊂ ... ⊂ S_k

    每步加入编号最小的、与当前子空间全部点共线的点并取 span。
    奇异子空间是射影空间，满足 EP，所以贪心链已是最长的。
    """
    G = PG.geometry
    nb = G.neighbors
    chain = [0]
    while True:
        S = chain[-1]
        common = G.full_mask & ~S
        for p in iter_bits(S):
            common &= nb[p]
        if not common:
            return chain
        chain.append(span_mask(G, 1 << lowest_bit(common), base=S))


def polar_rank(PG: PolarGeometry, method: Literal["witt", "chain"] = "witt") -> int:
    """
    极秩

    witt 取形式的 Witt 指数；chain 取贪心奇异子空间链的长度。
    """
    if method == "witt":
        return PG.prk_algebraic
    if method == "chain":
        return len(greedy_singular_chain(PG)) - 1
    raise UnsupportedParameter(f"未知的极秩计算方法: {method}")


def maximal_singular_subspaces(PG: PolarGeometry) -> List[int]:
    """
    全部极大奇异子空间（共线图的极大团），位图按升序点元组排序

    Raises:
        BudgetExceeded: 个数超过 polar.nice_combinatorial_max_singulars
    """
    if PG._maximal_singulars is not None:
        return PG._maximal_singulars
    G = PG.geometry
    nb = [m & ~(1 << p) for p, m in enumerate(G.neighbors)]
    cap = int(get_config().get("polar.nice_combinatorial_max_singulars", 5000))
    found: List[int] = []
    # Bron–Kerbosch（带枢轴），集合均为位图
    stack: List[Tuple[int, int, int]] = [(0, G.full_mask, 0)]
    while stack:
        R, P, X = stack.pop()
        if not P and not X:
            found.append(R)
            if len(found) > cap:
                raise BudgetExceeded(f"极大奇异子空间超过 {cap} 个", {"found": len(found)})
            continue
        pivot = lowest_bit(P | X)
        for v in iter_bits(P & ~nb[pivot]):
            stack.append((R | (1 << v), P & nb[v], X & nb[v]))
            P &= ~(1 << v)
            X |= 1 << v
    found.sort(key=lambda m: tuple(iter_bits(m)))
    PG._maximal_singulars = found
    logger.debug(f"{PG!r} 共有 {len(found)} 个极大奇异子空间")
    return found


def hyperbolic_line(PG: PolarGeometry, x: int, y: int) -> List[int]:
    """
    两个不共线点张成的射影直线上的奇异点

    交错形式下整条射影直线都奇异，得到 q+1 个两两不共线、因而独立的点。
    """
    if x == y:
        raise NotDistinct(f"两点必须不同（当前 {x}）")
    if PG.geometry.collinear(x, y):
        raise UnsupportedParameter(f"点 {x} 与 {y} 共线，不张成双曲线")
    return list(iter_bits(PG.pullback_mask(PG.linear_span_of([x, y]))))


def disjoint_maximal_singulars(PG: PolarGeometry, seed: Optional[int] = None) -> Tuple[PointSet, PointSet]:
    """
    由双曲基得到两个不交的极大奇异子空间

    M 为 span(e_1..e_n) 中的奇异点，M' 为 span(f_1..f_n) 中的奇异点；seed 给定时随机选取奇异向量。
    返回前校验：不交、各自奇异、各自极大、点数为 (q^n - 1)/(q - 1)。
    """
    F = PG.field
    rng = random.Random(seed) if seed is not None else None
    pairs, _ = hyperbolic_basis(PG.form, rng=rng)
    if not pairs:
        raise InvariantViolation(f"{PG!r} 的 Witt 指数为 0")
    E = LinearSubspace(F, PG.form.dim, [e for e, _ in pairs])
    Fs = LinearSubspace(F, PG.form.dim, [f for _, f in pairs])
    M, M_prime = PG.pullback_mask(E), PG.pullback_mask(Fs)

    G = PG.geometry
    size = (PG.q ** len(pairs) - 1) // (PG.q - 1)
    if M & M_prime:
        raise InvariantViolation("M 与 M' 相交")
    for label, mask in (("M", M), ("M'", M_prime)):
        if mask.bit_count() != size:
            raise InvariantViolation(f"{label} 有 {mask.bit_count()} 个点，应为 {size}")
        if not is_singular_mask(PG, mask):
            raise InvariantViolation(f"{label} 不是奇异子空间")
        common = G.full_mask & ~mask
        for p in iter_bits(mask):
            common &= G.neighbors[p]
        if common:
            raise InvariantViolation(f"{label} 不是极大奇异子空间：点 {lowest_bit(common)} 与其全部共线")
    return PointSet(G.n_points, M), PointSet(G.n_points, M_prime)


def embedding_bounds(PG: PolarGeometry, rk_gen: Optional[RankValue] = None) -> EmbeddingBounds:
    """dim(e) ≥ 2·prk；rk_gen 精确时再检查 rk_gen ≥ dim(e) 与 dim(e) = rk_gen"""
    dim = PG.form.dim
    prk = PG.prk_algebraic
    exact = rk_gen is not None and rk_gen.exact
    return EmbeddingBounds(
        embedding_dim=dim,
        polar_rank=prk,
        dim_at_least_twice_prk=dim >= 2 * prk,
        rk_gen=rk_gen.value if exact else None,
        rk_gen_at_least_dim=(rk_gen.value >= dim) if exact else None,
        dim_equals_rk_gen=(rk_gen.value == dim) if exact else None,
    )
