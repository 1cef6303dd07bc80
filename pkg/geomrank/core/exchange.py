"""
交换性质 (EP) 检查

EP：若 y ∈ ⟨X∪{x}⟩ 且 y ∉ ⟨X⟩，则 x ∈ ⟨X∪{y}⟩。

穷举模式按位图升序遍历全部 X ⊆ P，报告第一个失败见证；
抽样模式每个点以 1/2 概率独立入选 X，随机数由种子决定。
"""

from __future__ import annotations

import random
from typing import Literal, Optional, Tuple

from loguru import logger

from geomrank.config.config import get_config
from geomrank.core.closure import SpanCache, span_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import iter_bits
from geomrank.utils.budget import Budget, ensure_budget
from geomrank.utils.errors import BudgetExceeded, InvariantViolation, UnsupportedParameter
from geomrank.utils.schemas import EPReport, EPWitness

EPMode = Literal["exhaustive", "sampled"]


def _scan(cache: SpanCache, X: int, full: int) -> Tuple[Optional[Tuple[int, int]], int]:
    """对固定的 X 扫描全部 (x, y)，返回第一个失败的 (x, y) 和检查次数"""
    S = cache(X)
    checks = 0
    for x in iter_bits(full & ~S):
        T = cache.extend(S, x)
        for y in iter_bits(T & ~S):
            checks += 1
            if y == x:
                continue
            if not cache.extend(S, y) >> x & 1:
                return (x, y), checks
    return None, checks


def replay_witness(G: Geometry, witness: EPWitness) -> bool:
    """重放见证：y ∈ ⟨X∪{x}⟩，y ∉ ⟨X⟩，x ∉ ⟨X∪{y}⟩ 三者同时成立"""
    X = 0
    for p in witness.X:
        X |= 1 << p
    x, y = witness.x, witness.y
    in_extended = bool(span_mask(G, X | (1 << x)) >> y & 1)
    in_base = bool(span_mask(G, X) >> y & 1)
    x_back = bool(span_mask(G, X | (1 << y)) >> x & 1)
    return in_extended and not in_base and not x_back


def check_exchange_property(
    G: Geometry,
    mode: EPMode = "exhaustive",
    seed: int = 0,
    trials: Optional[int] = None,
    budget: Optional[Budget] = None,
) -> EPReport:
    """
    检查交换性质

    Args:
        G: 几何
        mode: exhaustive 或 sampled
        seed: 抽样模式的随机种子
        trials: 抽样次数（缺省取配置 ep.sampled_trials）
        budget: 预算

    Returns:
        EPReport；失败时附带可重放的见证
    """
    budget = ensure_budget(budget)
    config = get_config()
    cache = SpanCache(G, budget)
    full = G.full_mask
    checks = 0

    if mode == "exhaustive":
        limit = int(config.get("ep.exhaustive_max_points", 16))
        if G.n_points > limit:
            raise BudgetExceeded(
                f"穷举 EP 检查只允许不超过 {limit} 个点（当前 {G.n_points}），请改用 sampled 模式",
                {"n_points": G.n_points, "limit": limit},
            )
        logger.debug(f"穷举检查 EP: {G!r}")
        for X in range(1 << G.n_points):
            found, done = _scan(cache, X, full)
            checks += done
            if found is not None:
                witness = EPWitness(X=list(iter_bits(X)), x=found[0], y=found[1])
                return _finish(G, EPReport(status="fails", mode=mode, witness=witness, checks_performed=checks))
        return EPReport(status="holds", mode=mode, checks_performed=checks)

    if mode == "sampled":
        n_trials = int(trials if trials is not None else config.get("ep.sampled_trials", 10_000))
        rng = random.Random(seed)
        logger.debug(f"抽样检查 EP: {G!r}, seed={seed}, trials={n_trials}")
        for _ in range(n_trials):
            X = rng.getrandbits(G.n_points) if G.n_points else 0
            found, done = _scan(cache, X, full)
            checks += done
            if found is not None:
                witness = EPWitness(X=list(iter_bits(X)), x=found[0], y=found[1])
                return _finish(G, EPReport(status="fails", mode=mode, witness=witness, checks_performed=checks))
        return EPReport(status="sampled_ok", mode=mode, checks_performed=checks)

    raise UnsupportedParameter(f"未知的 EP 检查模式: {mode}")


def _finish(G: Geometry, report: EPReport) -> EPReport:
    if report.witness is None or not replay_witness(G, report.witness):
        raise InvariantViolation(f"EP 见证无法重放: {report.witness}")
    logger.debug(f"EP 不成立，见证 {report.witness}")
    return report
