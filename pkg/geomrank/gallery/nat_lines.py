"""
自然数上的无限几何

点为全体自然数，直线 L_u = {k·u | 0 ≤ k ≤ u}（u ≥ 1）。每条直线都含 0。
几何是无限的，这里只提供精确谓词和有数值上限的闭包，不把它截断成有限 Geometry。

注意：⟨0, n⟩ 并不等于 ∪(L_u | u | n, n ≤ u²)，后者只是过 0 和 n 的直线之并
（e1_lines_union）。例如 8 ∈ L_4，而 L_8 ∋ 64，所以 ⟨0, 4⟩ 是无限集。
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional

import numpy as np
from loguru import logger

from geomrank.config.config import get_config
from geomrank.utils.errors import InvariantViolation, NotDistinct, UnsupportedParameter
from geomrank.utils.schemas import E1Check, E1SpanResult, E1VerificationReport


@lru_cache(maxsize=8)
def _smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[k] = k 的最小素因子（k ≥ 2）"""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, isqrt(limit) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    return spf


def _sieve_for(n: int) -> np.ndarray:
    limit = 1 << max(10, n.bit_length())
    return _smallest_prime_factors(limit)


def factorize(n: int) -> Dict[int, int]:
    if n < 1:
        raise UnsupportedParameter(f"只能分解正整数（当前 {n}）")
    spf = _sieve_for(n)
    factors: Dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        factors[p] = factors.get(p, 0) + 1
        n //= p
    return factors


def divisors(n: int) -> List[int]:
    """n 的全部正因子，升序"""
    result = [1]
    for p, k in factorize(n).items():
        result = [d * p**e for d in result for e in range(k + 1)]
    return sorted(result)


def is_prime(n: int) -> bool:
    return n >= 2 and int(_sieve_for(n)[n]) == n


def line(u: int, cap: Optional[int] = None) -> List[int]:
    """L_u（cap 给定时只保留 ≤ cap 的部分）"""
    if u < 1:
        raise UnsupportedParameter(f"直线编号 u 必须 ≥ 1（当前 {u}）")
    top = u if cap is None else min(u, cap // u)
    return [k * u for k in range(top + 1)]


def _check_natural(*values: int) -> None:
    for v in values:
        if v < 0:
            raise UnsupportedParameter(f"只接受自然数（当前 {v}）")


def e1_lines_through(p: int, q: int) -> List[int]:
    """
    全部满足 {p, q} ⊆ L_u 的 u

    u 必须整除 max(p, q)（非零）且 max(p, q) ≤ u²，对另一个非零点也须整除。

    Raises:
        NotDistinct: p = q
    """
    _check_natural(p, q)
    if p == q:
        raise NotDistinct(f"两点必须不同（当前 {p}）")
    lo, hi = min(p, q), max(p, q)
    return [u for u in divisors(hi) if hi <= u * u and lo % u == 0]


def e1_collinear(n: int, m: int) -> bool:
    """
    n, m 共线

    显式查找过两点的直线，同时按 gcd 判据计算（d = gcd(n, m)，共线当且仅当 n, m ≤ d²；
    有一点为 0 时恒共线），两者不一致视为内部错误。
    """
    explicit = bool(e1_lines_through(n, m))
    if min(n, m) == 0:
        criterion = True
    else:
        d = gcd(n, m)
        criterion = max(n, m) <= d * d
    if explicit != criterion:
        raise InvariantViolation(f"共线判定不一致: ({n}, {m}) 直线查找 {explicit}，gcd 判据 {criterion}")
    return explicit


def e1_lines_union(n: int) -> List[int]:
    """∪(L_u | u 整除 n, n ≤ u²)，即过 0 与 n 的全部直线之并"""
    _check_natural(n)
    if n == 0:
        raise NotDistinct("n 必须非零")
    points = set()
    for u in e1_lines_through(0, n):
        points.update(line(u))
    return sorted(points)


def e1_in_prime_set(n: int) -> bool:
    """n ∈ {0} ∪ {p·m | p 素数, 1 ≤ m ≤ p}；需要扫描全部素因子，例如 77 = 11·7"""
    _check_natural(n)
    if n == 0:
        return True
    return any(n // p <= p for p in factorize(n))


def e1_span(
    X: Iterable[int],
    magnitude_cap: Optional[int] = None,
    iteration_cap: Optional[int] = None,
) -> E1SpanResult:
    """
    有界闭包

    工作表先进先出；每条直线记录当前集合中落在其上的非零点数，加上 0 是否在集合中，
    达到 2 时整条直线（截到 [0, cap]）并入。

    Args:
        X: 有限自然数集
        magnitude_cap: 数值上限（缺省 e1.magnitude_cap）
        iteration_cap: 出队次数上限（缺省 e1.iteration_cap）

    Returns:
        converged：闭包精确；truncated：有直线超出上限，结果是 [0, cap] 内截断直线的闭包；
        iteration_cap：迭代次数用尽，结果只是部分闭包

    Raises:
        UnsupportedParameter: 输入含负数或超过上限
    """
    config = get_config()
    cap = int(magnitude_cap if magnitude_cap is not None else config.get("e1.magnitude_cap", 1_000_000))
    max_iter = int(iteration_cap if iteration_cap is not None else config.get("e1.iteration_cap", 10_000))
    start = sorted(set(int(x) for x in X))
    _check_natural(*start)
    if start and start[-1] > cap:
        raise UnsupportedParameter(f"输入 {start[-1]} 超过数值上限 {cap}")

    current = set(start)
    queue = deque(start)
    hits: Dict[int, int] = {}
    added_lines = set()
    zero_present = False
    truncated = False
    iterations = 0

    def add_line(u: int) -> None:
        nonlocal truncated
        added_lines.add(u)
        if u * u > cap:
            truncated = True
        for point in line(u, cap):
            if point not in current:
                current.add(point)
                queue.append(point)

    while queue:
        if iterations >= max_iter:
            logger.debug(f"e1_span 达到迭代上限 {max_iter}")
            return E1SpanResult(status="iteration_cap", points=sorted(current), iterations=iterations, magnitude_cap=cap)
        x = queue.popleft()
        iterations += 1
        if x == 0:
            zero_present = True
            for u, count in list(hits.items()):
                if count >= 1 and u not in added_lines:
                    add_line(u)
            continue
        for u in divisors(x):
            if x > u * u:
                continue
            hits[u] = hits.get(u, 0) + 1
            if u not in added_lines and hits[u] + zero_present >= 2:
                add_line(u)

    status = "truncated" if truncated else "converged"
    return E1SpanResult(status=status, points=sorted(current), iterations=iterations, magnitude_cap=cap)


def _primes_upto(N: int) -> List[int]:
    spf = _sieve_for(N)
    return [k for k in range(2, N + 1) if int(spf[k]) == k]


def _check_line_closed(N: int, T: set) -> E1Check:
    for u in range(1, isqrt(N) + 1):
        points = line(u)
        inside = [p for p in points if p in T]
        if len(inside) >= 2 and len(inside) < len(points):
            outside = [p for p in points if p not in T]
            return E1Check(
                name="line_closed",
                status="fail",
                detail=f"L_{u} 与 T 交于 {len(inside)} 点但不含于 T",
                counterexample={"line": u, "points": points, "outside": outside},
            )
    return E1Check(name="line_closed", status="pass", detail=f"所有 u² ≤ {N} 的直线都满足")


def e1_verify_prime_span(N: int, iteration_cap: Optional[int] = None) -> E1VerificationReport:
    """
    在 [0, N] 内检查素数集 X_0 = {0} ∪ 素数 与 T = {0} ∪ {p·m | p 素数, m ≤ p} 的关系

    子检查：
    - line_closed：每条 u² ≤ N 且与 T 交于至少两点的直线含于 T
    - x0_in_T：X_0 ∩ [0, N] ⊆ T
    - reachability：T 的每个元素都在某个 e1_span({0, p}) 中
    - dependence_evidence：每个 n ∉ T 都有素数 p ∈ ⟨(X_0∖{p}) ∪ {n}⟩
    - x0_independent：每个 p ∈ X_0 都有 p ∉ ⟨X_0∖{p}⟩

    每个子检查独立报告 pass/fail，失败时附带反例。
    """
    if N < 4:
        raise UnsupportedParameter(f"N 必须 ≥ 4（当前 {N}）")
    logger.info(f"验证自然数几何素数集，上界 {N}")
    T = {n for n in range(N + 1) if e1_in_prime_set(n)}
    primes = _primes_upto(N)
    X0 = [0] + primes
    checks: List[E1Check] = [_check_line_closed(N, T)]

    missing = [x for x in X0 if x not in T]
    checks.append(
        E1Check(name="x0_in_T", status="pass", detail=f"{len(X0)} 个元素均在 T 中")
        if not missing
        else E1Check(name="x0_in_T", status="fail", counterexample={"missing": missing})
    )

    reached = set()
    for p in primes:
        reached.update(e1_span([0, p], magnitude_cap=N, iteration_cap=iteration_cap).points)
    unreached = sorted(T - reached)
    checks.append(
        E1Check(name="reachability", status="pass", detail=f"T ∩ [0, {N}] 的 {len(T)} 个元素均可达")
        if not unreached
        else E1Check(name="reachability", status="fail", counterexample={"unreached": unreached[:20]})
    )

    no_evidence = []
    for n in range(N + 1):
        if n in T:
            continue
        found = False
        for p in primes:
            rest = [x for x in X0 if x != p] + [n]
            if p in e1_span(rest, magnitude_cap=N, iteration_cap=iteration_cap).points:
                found = True
                break
        if not found:
            no_evidence.append(n)
    checks.append(
        E1Check(name="dependence_evidence", status="pass", detail="每个 n ∉ T 都找到相关证据")
        if not no_evidence
        else E1Check(name="dependence_evidence", status="fail", counterexample={"without_evidence": no_evidence[:20]})
    )

    dependent = None
    for p in X0:
        rest = [x for x in X0 if x != p]
        if p in e1_span(rest, magnitude_cap=N, iteration_cap=iteration_cap).points:
            dependent = p
            break
    checks.append(
        E1Check(name="x0_independent", status="pass", detail="X_0 在 [0, N] 内独立")
        if dependent is None
        else E1Check(
            name="x0_independent",
            status="fail",
            detail=f"{dependent} ∈ ⟨X_0∖{{{dependent}}}⟩",
            counterexample={"point": dependent},
        )
    )
    return E1VerificationReport(bound=N, checks=checks)
