"""
nice 子空间、商几何、极余秩与嵌入忠实性

nice 子空间：含两个不交极大奇异子空间的子空间。所有包含 span(M ∪ M') 的子空间都是 nice 的。
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, List, Literal, NamedTuple, Optional

from loguru import logger

from geomrank.core.closure import is_subspace_mask, span_mask
from geomrank.core.geometry import Geometry, build_geometry
from geomrank.core.pointset import PointSet, iter_bits
from geomrank.gf.forms import perp, witt_index
from geomrank.polar.singular import disjoint_maximal_singulars, maximal_singular_subspaces
from geomrank.polar.space import PolarGeometry, _mask
from geomrank.utils.errors import DegeneratePolarRank, NotASubspace, NotNice, UnsupportedParameter
from geomrank.utils.schemas import CorankReport, FaithfulnessReport, FaithfulnessViolation


def _contains_disjoint_pair(PG: PolarGeometry, mask: int) -> bool:
    inside = [m for m in maximal_singular_subspaces(PG) if m & ~mask == 0]
    return any(not (a & b) for a, b in combinations(inside, 2))


def is_nice(PG: PolarGeometry, S: PointSet | int | Iterable[int]) -> bool:
    """
    S 是否含两个不交的极大奇异子空间

    先做代数判定：[e(S)] 上形式的 Witt 指数小于极秩则不是；S = e⁻¹([e(S)]) 且 Witt 指数等于极秩则是。
    其余情形在 S 内组合搜索不交的极大奇异子空间对。

    Raises:
        NotASubspace: S 不是子空间
    """
    G = PG.geometry
    mask = _mask(G, S)
    if not is_subspace_mask(G, mask):
        raise NotASubspace(f"{PointSet(G.n_points, mask)} 不是子空间")
    U = PG.linear_span_of(mask)
    if witt_index(PG.form, U) < PG.prk_algebraic:
        return False
    if PG.pullback_mask(U) == mask:
        return True
    return _contains_disjoint_pair(PG, mask)


class Quotient(NamedTuple):
    """商几何 Γ(S)：点 i 对应子空间 classes[i] = span(S ∪ {representatives[i]})"""

    geometry: Geometry
    representatives: List[int]
    classes: List[int]


def quotient_geometry(PG: PolarGeometry, S: PointSet | int | Iterable[int]) -> Quotient:
    """
    以 span(S ∪ {x})（x ∉ S）为点的商几何

    过两个不同的点 span(S∪{x})、span(S∪{y}) 的线由 span(S∪{x,y}) 中全部这样的点组成。

    Raises:
        UnsupportedParameter: S = P
        NotNice: S 不是 nice 子空间
    """
    G = PG.geometry
    mask = _mask(G, S)
    if mask == G.full_mask:
        raise UnsupportedParameter("S = P 时商几何没有点")
    if not is_nice(PG, mask):
        raise NotNice(f"{PointSet(G.n_points, mask)} 不是 nice 子空间")

    classes: List[int] = []
    representatives: List[int] = []
    class_of = {}
    for x in iter_bits(G.full_mask & ~mask):
        if x in class_of:
            continue
        cls = span_mask(G, 1 << x, base=mask)
        idx = len(classes)
        classes.append(cls)
        representatives.append(x)
        for z in iter_bits(cls & ~mask):
            class_of.setdefault(z, idx)

    lines = set()
    for i, j in combinations(range(len(classes)), 2):
        joined = span_mask(G, classes[j], base=classes[i])
        members = sorted({class_of[z] for z in iter_bits(joined & ~mask)})
        if len(members) >= 2:
            lines.add(tuple(members))
    quotient = build_geometry(len(classes), sorted(lines), name=f"{G.name}/S")
    logger.debug(f"商几何 {quotient!r}")
    return Quotient(quotient, representatives, classes)


def _nice_chain(PG: PolarGeometry, start: int, rng: Optional[random.Random]) -> List[int]:
    """从 start 到 P 的极大子空间链，逐对插入 span(S ∪ {p}) 直到相邻成员都是覆盖"""
    G = PG.geometry
    masks = [start] if start == G.full_mask else [start, G.full_mask]
    i = 0
    while i < len(masks) - 1:
        lo, hi = masks[i], masks[i + 1]
        candidates = list(iter_bits(hi & ~lo))
        if rng is not None:
            rng.shuffle(candidates)
        inserted = False
        for p in candidates:
            mid = span_mask(G, 1 << p, base=lo)
            if mid != hi:
                masks.insert(i + 1, mid)
                inserted = True
                break
        if not inserted:
            i += 1
    return masks


def corank(
    PG: PolarGeometry,
    method: Literal["chain", "perp"] = "chain",
    embedding: str = "natural",
    seed: Optional[int] = None,
) -> CorankReport:
    """
    极余秩

    perp：[e(M) ∪ e(M')] 的正交补的向量维数；
    chain：从 span(M ∪ M') 到 P 的极大 nice 子空间链的长度。
    seed 同时影响 (M, M') 的选取与插入时的点序。

    Raises:
        DegeneratePolarRank: 极秩 < 2
        UnsupportedParameter: 非自然嵌入或未知方法
    """
    if PG.prk_algebraic < 2:
        raise DegeneratePolarRank(f"极秩 {PG.prk_algebraic} < 2，余秩无定义")
    if embedding != "natural":
        raise UnsupportedParameter(f"只支持自然嵌入（当前 {embedding}）")
    M, M_prime = disjoint_maximal_singulars(PG, seed)
    G = PG.geometry
    if method == "perp":
        W = perp(PG.form, PG.linear_span_of(M.mask | M_prime.mask))
        return CorankReport(
            method="perp",
            value=W.rank,
            M=M.to_list(),
            M_prime=M_prime.to_list(),
            witness_subspace=W.basis.tolist(),
            ambient_dim=PG.form.dim,
        )
    if method == "chain":
        start = span_mask(G, M.mask | M_prime.mask)
        rng = random.Random(seed) if seed is not None else None
        chain = _nice_chain(PG, start, rng)
        return CorankReport(
            method="chain",
            value=len(chain) - 1,
            M=M.to_list(),
            M_prime=M_prime.to_list(),
            witness_chain=[list(iter_bits(m)) for m in chain],
            ambient_dim=PG.form.dim,
        )
    raise UnsupportedParameter(f"未知的余秩计算方法: {method}")


def _violation(PG: PolarGeometry, S: int, M: int, M_prime: int, X: List[int]) -> Optional[FaithfulnessViolation]:
    U = PG.linear_span_of(S)
    pulled = PG.pullback_mask(U)
    if pulled == S:
        return None
    return FaithfulnessViolation(
        S=list(iter_bits(S)),
        pullback=list(iter_bits(pulled)),
        span_dim=U.rank,
        M=list(iter_bits(M)),
        M_prime=list(iter_bits(M_prime)),
        X=X,
    )


def check_faithful(
    PG: PolarGeometry,
    embedding: str = "natural",
    mode: Literal["exhaustive_minimal", "sampled"] = "exhaustive_minimal",
    seed: int = 0,
    trials: int = 200,
) -> FaithfulnessReport:
    """
    检查 S = e⁻¹([e(S)]) 是否对测试的 nice 子空间成立

    exhaustive_minimal：全部不交极大奇异对的 S_0 = span(M ∪ M') 及其单点扩张；
    sampled：随机不交对加上 0..2 个随机点。

    Returns:
        FaithfulnessReport，附带第一个违反
    """
    if embedding != "natural":
        raise UnsupportedParameter(f"只支持自然嵌入（当前 {embedding}）")
    G = PG.geometry
    maximals = maximal_singular_subspaces(PG)
    pairs = [(a, b) for a, b in combinations(maximals, 2) if not a & b]
    tested = set()

    def test(S: int, M: int, M_prime: int, X: List[int]) -> Optional[FaithfulnessViolation]:
        if S in tested:
            return None
        tested.add(S)
        return _violation(PG, S, M, M_prime, X)

    if mode == "exhaustive_minimal":
        for M, M_prime in pairs:
            S0 = span_mask(G, M | M_prime)
            found = test(S0, M, M_prime, [])
            if found is None:
                for x in iter_bits(G.full_mask & ~S0):
                    found = test(span_mask(G, 1 << x, base=S0), M, M_prime, [x])
                    if found is not None:
                        break
            if found is not None:
                return FaithfulnessReport(mode=mode, holds_on_tested=False, tested=len(tested), violation=found)
        return FaithfulnessReport(mode=mode, holds_on_tested=True, tested=len(tested))

    if mode == "sampled":
        rng = random.Random(seed)
        for _ in range(trials if pairs else 0):
            M, M_prime = rng.choice(pairs)
            X = sorted(rng.sample(range(G.n_points), rng.randint(0, min(2, G.n_points))))
            extra = 0
            for x in X:
                extra |= 1 << x
            found = test(span_mask(G, M | M_prime | extra), M, M_prime, X)
            if found is not None:
                return FaithfulnessReport(mode=mode, holds_on_tested=False, tested=len(tested), violation=found)
        return FaithfulnessReport(mode=mode, holds_on_tested=True, tested=len(tested))

    raise UnsupportedParameter(f"未知的忠实性检查模式: {mode}")
