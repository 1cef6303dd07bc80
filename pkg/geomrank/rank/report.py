"""
秩汇总报告

每个子操作使用一份独立的新预算；某一项超预算时以上下界形式写入报告，不让整个报告失败。
"""

from __future__ import annotations

from typing import List, Optional

from loguru import logger

from geomrank.chains.lattice import longest_chain
from geomrank.config.config import get_config
from geomrank.core.exchange import check_exchange_property
from geomrank.core.geometry import Geometry
from geomrank.rank.generating import enumerate_bases, generating_rank, is_generating
from geomrank.rank.independence import greedy_basis, max_independent
from geomrank.utils.budget import Budget, ensure_budget
from geomrank.utils.errors import BudgetExceeded, InvariantViolation
from geomrank.utils.schemas import EPReport, RankReport, RankValue


def _ep_report(G: Geometry, budget: Budget, seed: int) -> EPReport:
    limit = int(get_config().get("ep.exhaustive_max_points", 16))
    if G.n_points <= limit:
        try:
            return check_exchange_property(G, "exhaustive", budget=budget.fresh())
        except BudgetExceeded:
            logger.warning("穷举 EP 检查超预算，改用抽样模式")
    return check_exchange_property(G, "sampled", seed=seed, budget=budget.fresh())


def _rk_wo(G: Geometry, budget: Budget) -> RankValue:
    try:
        length, _ = longest_chain(G, budget.fresh())
    except BudgetExceeded as exc:
        return RankValue.bounds(int(exc.partial.get("lower", 0)), None)
    return RankValue.exact_value(length)


def _rk_gen(G: Geometry, budget: Budget) -> RankValue:
    try:
        return generating_rank(G, budget.fresh())
    except BudgetExceeded as exc:
        partial = exc.partial
        return RankValue.bounds(int(partial["lower"]), int(partial["upper"]), list(partial["witness"]))


def _basis_sizes(G: Geometry, budget: Budget, rk_gen: RankValue) -> tuple[List[int], bool]:
    limit = int(get_config().get("rank.enumerate_bases_max_points", 12))
    if G.n_points <= limit:
        try:
            return sorted(len(b) for b in enumerate_bases(G, budget.fresh())), True
        except BudgetExceeded:
            logger.warning("基枚举超预算，只报告找到的基")
    sizes: List[int] = []
    if rk_gen.exact and rk_gen.witness is not None:
        sizes.append(len(rk_gen.witness))
    for order in (range(G.n_points), range(G.n_points - 1, -1, -1)):
        kept = greedy_basis(G, list(order))
        # greedy_basis 的结果独立，生成时即为基
        if is_generating(G, kept):
            sizes.append(len(kept))
    return sorted(sizes), False


def _assert_invariants(G: Geometry, report: RankReport) -> None:
    for name, value in (("rk_gen", report.rk_gen), ("rk_wo", report.rk_wo)):
        if value.upper is not None and value.lower > value.upper:
            raise InvariantViolation(f"{name} 下界 {value.lower} 大于上界 {value.upper}")
    if report.rk_gen.exact and report.rk_wo.exact and report.rk_gen.value > report.rk_wo.value:
        raise InvariantViolation(f"rk_gen={report.rk_gen.value} 大于最长链长度 {report.rk_wo.value}")
    if report.rk_wo.exact and report.rk_ind_lower > report.rk_wo.value:
        raise InvariantViolation(f"独立集大小 {report.rk_ind_lower} 超过最长链长度 {report.rk_wo.value}")
    if report.ep.status == "holds":
        if len(set(report.basis_sizes)) > 1:
            raise InvariantViolation(f"EP 成立但基的大小不一: {report.basis_sizes}")
        if report.rk_gen.exact and report.rk_wo.exact and report.rk_gen.value != report.rk_wo.value:
            raise InvariantViolation("EP 成立但 rk_gen 与最长链长度不等")
        for order in (range(G.n_points), range(G.n_points - 1, -1, -1)):
            if not is_generating(G, greedy_basis(G, list(order))):
                raise InvariantViolation("EP 成立但 greedy_basis 的结果不生成")


def rank_report(G: Geometry, budget: Optional[Budget] = None, seed: int = 0) -> RankReport:
    """
    汇总 rk_gen、最长链长度、独立集下界、EP 与基的大小

    Args:
        G: 几何
        budget: 预算上限（每个子操作各用一份新的）
        seed: 抽样 EP 检查的种子

    Returns:
        RankReport，返回前校验各字段之间的不变量
    """
    budget = ensure_budget(budget)
    logger.info(f"计算秩报告: {G!r}")
    ep = _ep_report(G, budget, seed)
    rk_wo = _rk_wo(G, budget)
    rk_gen = _rk_gen(G, budget)
    if not rk_gen.exact and rk_wo.exact:
        # rk_gen ≤ 最长链长度
        upper = rk_wo.value if rk_gen.upper is None else min(rk_gen.upper, rk_wo.value)
        rk_gen = RankValue.bounds(rk_gen.lower, upper, rk_gen.witness if upper == rk_gen.upper else None)

    upper = rk_wo.value if rk_wo.exact else None
    try:
        ind_size, ind_witness, ind_exact = max_independent(G, upper, budget.fresh())
    except BudgetExceeded:
        ind_witness = sorted(greedy_basis(G, list(range(G.n_points))))
        ind_size, ind_exact = len(ind_witness), False

    sizes, exhaustive = _basis_sizes(G, budget, rk_gen)
    report = RankReport(
        rk_gen=rk_gen,
        rk_wo=rk_wo,
        rk_ind_lower=ind_size,
        rk_ind_exact=ind_exact,
        rk_ind_witness=ind_witness,
        ep=ep,
        basis_sizes=sizes,
        basis_sizes_exhaustive=exhaustive,
    )
    _assert_invariants(G, report)
    return report
