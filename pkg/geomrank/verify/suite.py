"""
验证套件

paper：固定的验收检查（例 2、射影空间、极空间秩与余秩、忠实性、自然数几何）；
fuzz：带种子的随机几何性质检验（rk_gen ≤ 最长链、EP 下的等式、链与独立集的互相转换）。
检查失败只记入结果，不抛出；结果按检查名排序，每项都附带单独重放的命令行。
"""

from __future__ import annotations

import random
import time
from typing import Any, Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

from loguru import logger

from geomrank.chains import (
    Chain,
    chain_from_independent,
    condense_generating_chain,
    enumerate_subspaces,
    independent_from_chain,
    iter_maximal_chains,
    longest_chain,
    maximal_chain_lengths,
)
from geomrank.config.config import get_config
from geomrank.core.closure import cover_masks, span_mask
from geomrank.core.exchange import check_exchange_property, replay_witness
from geomrank.core.geometry import Geometry
from geomrank.gallery.example2 import b_point, c_point, c_set, example2
from geomrank.gallery.nat_lines import e1_collinear, e1_span, e1_verify_prime_span
from geomrank.gallery.projective import random_geometries
from geomrank.polar import (
    check_faithful,
    corank,
    disjoint_maximal_singulars,
    hyperbolic_line,
    polar_rank,
    quotient_geometry,
)
from geomrank.rank import generating_rank, greedy_basis, is_generating, is_independent
from geomrank.utils.errors import GeomError, InvariantViolation, UnsupportedParameter
from geomrank.utils.schemas import CheckResult, EPWitness, SuiteResult
from geomrank.verify.registry import resolve_builtin, resolve_polar

SUITES = ("paper", "fuzz")

# 随机几何上每个几何最多检查的极大链条数
_FUZZ_ROUNDTRIP_CHAINS = 200


class Check(NamedTuple):
    """一项检查：run() 返回 (期望值, 计算值)"""

    name: str
    run: Callable[[], Tuple[Any, Any]]
    provenance: str


# ---------------------------------------------------------------- 通用性质


def _ep_status(G: Geometry, known: Optional[EPWitness] = None) -> str:
    """小几何穷举；超过穷举上限时重放已知见证"""
    limit = int(get_config().get("ep.exhaustive_max_points", 16))
    if G.n_points <= limit or known is None:
        return check_exchange_property(G, mode="exhaustive").status
    return "fails" if replay_witness(G, known) else "unknown"


def _sample_maximal_chains(G: Geometry, count: int, seed: int) -> Iterator[Chain]:
    """沿覆盖关系随机游走得到 count 条极大链（可能重复）"""
    rng = random.Random(seed)
    cover_cache: Dict[int, List[int]] = {}
    for _ in range(count):
        path = [0]
        while path[-1] != G.full_mask:
            S = path[-1]
            if S not in cover_cache:
                cover_cache[S] = cover_masks(G, S)
            path.append(rng.choice(cover_cache[S]))
        yield Chain(G, path, validate=False)


def _maximal_chains(G: Geometry, limit: int, seed: int) -> Iterator[Chain]:
    """极大链总数不超过 limit 时逐条穷举，否则随机抽 limit 条"""
    total = sum(maximal_chain_lengths(G).lengths.values())
    if total <= limit:
        logger.debug(f"{G.name}: 穷举全部 {total} 条极大链")
        return iter_maximal_chains(G)
    logger.debug(f"{G.name}: 极大链共 {total} 条，随机抽取 {limit} 条")
    return _sample_maximal_chains(G, limit, seed)


def _roundtrip_violations(G: Geometry, ep_holds: bool, limit: int, seed: int = 0) -> List[str]:
    """
    链与独立集互相转换的性质

    - 独立集 X 对应的前缀链长度为 |X|
    - 极大链取出的点列总是生成，其前缀 span 链恰好还原原链；EP 成立时点列还独立
    - EP 成立时，去掉一个中间成员后的链取出的点列不是基
    """
    problems: List[str] = []
    witness = greedy_basis(G, list(range(G.n_points)))
    if chain_from_independent(G, witness).length != len(witness):
        problems.append(f"{G.name}: 独立集 {witness} 的链长度不等于 {len(witness)}")
    for index, chain in enumerate(_maximal_chains(G, limit, seed)):
        picked = independent_from_chain(G, chain)
        if not is_generating(G, picked.points):
            problems.append(f"{G.name}: 极大链 {chain.to_lists()} 的点列不生成")
            break
        if picked.independent:
            rebuilt = chain_from_independent(G, picked.points)
        else:
            rebuilt = condense_generating_chain(G, picked.points).chain
        if rebuilt.masks != chain.masks:
            problems.append(f"{G.name}: 点列 {picked.points} 的前缀链 {rebuilt.to_lists()} 未还原 {chain.to_lists()}")
        if ep_holds and not picked.independent:
            problems.append(f"{G.name}: EP 成立但极大链 {chain.to_lists()} 的点列不独立")
        if ep_holds and chain.length >= 2:
            # 轮流去掉不同位置的中间成员
            drop = 1 + index % (chain.length - 1)
            shorter = independent_from_chain(G, chain.masks[:drop] + chain.masks[drop + 1 :])
            if shorter.independent and is_generating(G, shorter.points):
                problems.append(f"{G.name}: 非极大链（去掉第 {drop} 个成员）的点列 {shorter.points} 是基")
        if problems:
            break
    return problems


def _fuzz_outcome(seed: int, trials: int) -> Dict[str, List[str]]:
    """对 trials 个随机几何逐个检查，返回各性质的违反说明"""
    violations: Dict[str, List[str]] = {"rank_bound": [], "ep_equalities": [], "roundtrip": []}
    for index, G in enumerate(random_geometries(seed, trials)):
        G.name = f"random#{index}"
        rk_gen = generating_rank(G).value
        longest, _ = longest_chain(G)
        if rk_gen > longest:
            violations["rank_bound"].append(f"{G.name}: rk_gen {rk_gen} > 最长链 {longest}")
        ep_holds = check_exchange_property(G, mode="exhaustive").status == "holds"
        if ep_holds:
            lengths = maximal_chain_lengths(G).distinct
            if rk_gen != longest or lengths != [longest]:
                violations["ep_equalities"].append(
                    f"{G.name}: EP 成立但 rk_gen={rk_gen}，最长链={longest}，极大链长度={lengths}"
                )
        violations["roundtrip"].extend(_roundtrip_violations(G, ep_holds, _FUZZ_ROUNDTRIP_CHAINS, seed + index))
    return violations


def _fuzz_checks(seed: int, trials: int) -> List[Check]:
    cache: Dict[str, Dict[str, List[str]]] = {}

    def outcome() -> Dict[str, List[str]]:
        if "value" not in cache:
            logger.info(f"随机几何检验: seed={seed}, trials={trials}")
            cache["value"] = _fuzz_outcome(seed, trials)
        return cache["value"]

    def make(key: str) -> Callable[[], Tuple[Any, Any]]:
        return lambda: ([], outcome()[key][:5])

    return [
        Check(f"fuzz.{key}", make(key), "DERIVED")
        for key in ("rank_bound", "ep_equalities", "roundtrip")
    ]


# ---------------------------------------------------------------- paper 检查


def _example2(n: int) -> Tuple[Any, Any]:
    G = example2(n)
    known = EPWitness(X=[c_point(n, 1), c_point(n, 2)], x=b_point(n, 1), y=c_point(n, 3))
    computed = {
        "rk_gen": generating_rank(G).value,
        "longest_chain": longest_chain(G)[0],
        "ep": _ep_status(G, known),
        "C_independent": is_independent(G, c_set(n)),
    }
    expected = {"rk_gen": 3, "longest_chain": 1 + n, "ep": "fails", "C_independent": True}
    return expected, computed


def _projective(name: str, rank: int, ep_mode: str, subspaces: Optional[int]) -> Tuple[Any, Any]:
    G = resolve_builtin(name)
    computed = {
        "ep": check_exchange_property(G, mode=ep_mode).status,
        "rk_gen": generating_rank(G).value,
        "chain_lengths": maximal_chain_lengths(G).distinct,
    }
    expected = {
        "ep": "holds" if ep_mode == "exhaustive" else "sampled_ok",
        "rk_gen": rank,
        "chain_lengths": [rank],
    }
    if subspaces is not None:
        computed["subspaces"] = len(enumerate_subspaces(G))
        expected["subspaces"] = subspaces
    return expected, computed


def _roundtrip(name: str, ep_holds: bool) -> Tuple[Any, Any]:
    """ep_holds 由 projective.* 与 example2.* 检查单独验证"""
    limit = int(get_config().get("suite.roundtrip_max_chains", 1000))
    return [], _roundtrip_violations(resolve_builtin(name), ep_holds, limit)[:5]


def _sp45() -> Tuple[Any, Any]:
    PG = resolve_polar("sp:2:5")
    G = PG.geometry
    x = 0
    y = next(p for p in range(G.n_points) if p != x and not G.collinear(x, p))
    line = hyperbolic_line(PG, x, y)
    computed = {
        "rk_gen": generating_rank(G).value,
        "hyperbolic_line_size": len(line),
        "hyperbolic_line_independent": is_independent(G, line),
        "chain_lower_bound": chain_from_independent(G, line).length,
    }
    expected = {"rk_gen": 4, "hyperbolic_line_size": 6, "hyperbolic_line_independent": True, "chain_lower_bound": 6}
    return expected, computed


def _polar_ranks(name: str, n: int) -> Tuple[Any, Any]:
    PG = resolve_polar(name)
    return {"witt": n, "chain": n}, {"witt": polar_rank(PG, "witt"), "chain": polar_rank(PG, "chain")}


def _corank(name: str, value: int) -> Tuple[Any, Any]:
    PG = resolve_polar(name)
    computed = {
        "perp": corank(PG, method="perp").value,
        "chain": sorted({corank(PG, method="chain", seed=s).value for s in (None, 1, 2, 3)}),
    }
    return {"perp": value, "chain": [value]}, computed


def _faithfulness() -> Tuple[Any, Any]:
    sp = resolve_polar("sp:2:2")
    q = resolve_polar("o-par:2:2")
    M, M_prime = disjoint_maximal_singulars(q)
    S = span_mask(q.geometry, M.mask | M_prime.mask)
    quotient = quotient_geometry(q, S).geometry
    rk_gen = generating_rank(sp.geometry).value
    computed = {
        "sp_rk_gen": rk_gen,
        "sp_corank_chain": corank(sp, method="chain").value,
        "sp_corank_perp": corank(sp, method="perp").value,
        "sp_faithful": check_faithful(sp).holds_on_tested,
        "q_corank_chain": corank(q, method="chain").value,
        "q_corank_perp": corank(q, method="perp").value,
        "q_faithful": check_faithful(q).holds_on_tested,
        "q_rank_decomposition": 2 * q.prk_algebraic + generating_rank(quotient).value,
    }
    expected = {
        "sp_rk_gen": 5,
        "sp_corank_chain": 1,
        "sp_corank_perp": 0,
        "sp_faithful": False,
        "q_corank_chain": 1,
        "q_corank_perp": 1,
        "q_faithful": True,
        "q_rank_decomposition": generating_rank(q.geometry).value,
    }
    return expected, computed


def _quotient_ep(name: str) -> Tuple[Any, Any]:
    PG = resolve_polar(name)
    M, M_prime = disjoint_maximal_singulars(PG)
    S = span_mask(PG.geometry, M.mask | M_prime.mask)
    quotient = quotient_geometry(PG, S).geometry
    return "holds", check_exchange_property(quotient, mode="exhaustive").status


def _e1_collinear(bound: int) -> Tuple[Any, Any]:
    disagreements = []
    for n in range(1, bound + 1):
        for m in range(n):
            try:
                e1_collinear(m, n)
            except InvariantViolation:
                disagreements.append([m, n])
    return [], disagreements[:5]


def _e1_span_pairs(bound: int, cap: int) -> Tuple[Any, Any]:
    mismatches = []
    for n in range(2, bound + 1):
        reference = e1_span([0, n], magnitude_cap=cap).points
        for m in range(1, n):
            if e1_collinear(m, n) and e1_span([m, n], magnitude_cap=cap).points != reference:
                mismatches.append([m, n])
    return [], mismatches[:5]


def _e1_primes(bound: int) -> Tuple[Any, Any]:
    report = e1_verify_prime_span(bound)
    computed = {c.name: c.status for c in report.checks}
    computed["line_closed_counterexample"] = (report.check("line_closed").counterexample or {}).get("line")
    computed["dependent_point"] = (report.check("x0_independent").counterexample or {}).get("point")
    expected = {
        "line_closed": "fail",
        "x0_in_T": "pass",
        "reachability": "pass",
        "dependence_evidence": "pass",
        "x0_independent": "fail",
        "line_closed_counterexample": 4,
        "dependent_point": 2,
    }
    return expected, computed


def _paper_checks(seed: int, trials: int) -> List[Check]:
    checks = [Check(f"example2.n{n}", lambda n=n: _example2(n), "PAPER") for n in range(3, 9)]
    checks += [
        Check("projective.fano", lambda: _projective("fano", 3, "exhaustive", None), "DERIVED"),
        Check("projective.pg32", lambda: _projective("pg:3:2", 4, "sampled", 67), "DERIVED"),
    ]
    checks += [
        Check(f"roundtrip.{name.replace(':', '_')}", lambda name=name, ep=ep: _roundtrip(name, ep), "PAPER")
        for name, ep in [("fano", True), ("pg:3:2", True)] + [(f"example2:{n}", False) for n in range(3, 9)]
    ]
    checks.append(Check("polar.sp45", _sp45, "PAPER"))
    checks += [
        Check(f"polar.rank.{name.replace(':', '_')}", lambda name=name, n=n: _polar_ranks(name, n), "DERIVED")
        for name, n in (("sp:2:2", 2), ("sp:2:3", 2), ("sp:3:2", 3), ("sp:3:3", 3), ("o-par:2:3", 2), ("o-minus:2:2", 2))
    ]
    checks += [
        Check(f"polar.corank.{name.replace(':', '_')}", lambda name=name, v=v: _corank(name, v), "DERIVED")
        for name, v in (("sp:2:3", 0), ("o-par:2:3", 1), ("o-minus:2:2", 2))
    ]
    checks.append(Check("polar.faithfulness", _faithfulness, "DERIVED"))
    checks += [
        Check(f"polar.quotient_ep.{name.replace(':', '_')}", lambda name=name: _quotient_ep(name), "PAPER")
        for name in ("o-par:2:3", "o-minus:2:2")
    ]
    checks += [
        Check("e1.collinear", lambda: _e1_collinear(200), "PAPER"),
        Check("e1.span_pairs", lambda: _e1_span_pairs(50, 2500), "PAPER"),
        Check("e1.primes", lambda: _e1_primes(100), "DERIVED"),
    ]
    checks += _fuzz_checks(seed, trials)
    return checks


# ---------------------------------------------------------------- 运行


def _replay(suite: str, name: str, seed: int, trials: int) -> str:
    command = f"python main.py verify --suite {suite} --check {name}"
    if name.startswith("fuzz."):
        command += f" --seed {seed} --trials {trials}"
    return command


def _run_check(check: Check, suite: str, seed: int, trials: int) -> CheckResult:
    replay = _replay(suite, check.name, seed, trials)
    started = time.monotonic()
    try:
        expected, computed = check.run()
    except GeomError as exc:
        logger.warning(f"检查 {check.name} 出错: {exc}")
        return CheckResult(
            name=check.name,
            status="fail",
            provenance=check.provenance,
            elapsed=time.monotonic() - started,
            replay=replay,
            detail=f"{type(exc).__name__}: {exc}",
        )
    elapsed = time.monotonic() - started
    passed = expected == computed
    logger.debug(f"检查 {check.name}: {'通过' if passed else '失败'}（{elapsed:.2f}s）")
    return CheckResult(
        name=check.name,
        status="pass" if passed else "fail",
        expected=expected,
        computed=computed,
        provenance=check.provenance,
        elapsed=elapsed,
        replay=replay,
        detail=None if passed else "计算值与期望值不符",
    )


def list_checks(suite: str, seed: Optional[int] = None, trials: Optional[int] = None) -> List[str]:
    """套件中的全部检查名（升序）"""
    return sorted(c.name for c in _build(suite, seed, trials)[0])


def _build(suite: str, seed: Optional[int], trials: Optional[int]) -> Tuple[List[Check], int, int]:
    config = get_config()
    seed = int(seed if seed is not None else config.get("suite.fuzz_seed", 42))
    trials = int(trials if trials is not None else config.get("suite.fuzz_trials", 500))
    if suite == "paper":
        return _paper_checks(seed, trials), seed, trials
    if suite == "fuzz":
        return _fuzz_checks(seed, trials), seed, trials
    raise UnsupportedParameter(f"未知的验证套件: {suite}，支持 {list(SUITES)}")


def run_suite(
    suite: str,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    only: Optional[List[str]] = None,
) -> SuiteResult:
    """
    运行验证套件

    Args:
        suite: paper 或 fuzz
        seed: 随机检验的种子（缺省 suite.fuzz_seed）
        trials: 随机几何个数（缺省 suite.fuzz_trials）
        only: 只运行这些检查名

    Returns:
        SuiteResult，检查按名字排序

    Raises:
        UnsupportedParameter: 未知套件或未知检查名
    """
    checks, seed, trials = _build(suite, seed, trials)
    if only:
        known = {c.name for c in checks}
        unknown = sorted(set(only) - known)
        if unknown:
            raise UnsupportedParameter(f"套件 {suite} 中没有检查: {unknown}")
        checks = [c for c in checks if c.name in set(only)]
    logger.info(f"运行验证套件 {suite}：{len(checks)} 项检查")
    results = [_run_check(c, suite, seed, trials) for c in sorted(checks, key=lambda c: c.name)]
    result = SuiteResult(suite=suite, seed=seed, checks=results)
    for failure in result.failures:
        logger.warning(f"检查失败 {failure.name}，重放: {failure.replay}")
    return result
