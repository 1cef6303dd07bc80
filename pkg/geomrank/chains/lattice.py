"""
子空间格上的遍历

子空间格沿覆盖关系从 ∅ 到 P。longest_chain 与 maximal_chain_lengths 共用一次后序遍历：
每个子空间在其全部覆盖子空间之后出栈，记忆化结果以位图为键。
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Callable, Dict, Iterator, List, Optional, Tuple, TypeVar

from loguru import logger

from geomrank.chains.chain import Chain
from geomrank.core.closure import cover_masks
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import iter_bits
from geomrank.utils.budget import Budget, ensure_budget
from geomrank.utils.errors import BudgetExceeded
from geomrank.utils.schemas import ChainLengthsReport

T = TypeVar("T")


def _subspace_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return mask.bit_count(), tuple(iter_bits(mask))


def _exceeded(budget: Budget, visited: int, what: str) -> BudgetExceeded:
    logger.warning(f"{what}: 访问的子空间数超过上限 {budget.lattice_subspaces}")
    return BudgetExceeded(
        f"{what}: 访问的子空间数超过上限 {budget.lattice_subspaces}", {"subspaces_visited": visited}
    )


def enumerate_subspaces(G: Geometry, budget: Optional[Budget] = None) -> List[int]:
    """
    沿覆盖关系广度优先枚举全部子空间

    任何真包含 S 的子空间都包含某个 span(S∪{p})，因此从 ∅ 出发能到达每个子空间。

    Returns:
        位图列表，按 (大小, 升序点元组) 排序
    """
    budget = ensure_budget(budget)
    seen = {0}
    queue = deque([0])
    while queue:
        S = queue.popleft()
        for cover in cover_masks(G, S, budget):
            if cover not in seen:
                seen.add(cover)
                if len(seen) > budget.lattice_subspaces:
                    raise _exceeded(budget, len(seen), "子空间枚举")
                queue.append(cover)
    return sorted(seen, key=_subspace_key)


def _fold_lattice(
    G: Geometry,
    budget: Budget,
    top_value: T,
    combine: Callable[[int, List[int], Dict[int, T]], T],
    what: str,
) -> Dict[int, T]:
    """
    后序遍历 ∅ 之上的子空间格

    Args:
        top_value: P 上的值
        combine: (S, S 的覆盖列表, 已完成的值表) -> S 上的值

    Returns:
        子空间位图 -> 值
    """
    full = G.full_mask
    done: Dict[int, T] = {full: top_value}
    pending_covers: Dict[int, List[int]] = {}
    stack = [0]
    while stack:
        S = stack[-1]
        if S in done:
            stack.pop()
            continue
        covers = pending_covers.get(S)
        if covers is None:
            covers = cover_masks(G, S, budget)
            pending_covers[S] = covers
            if len(done) + len(pending_covers) > budget.lattice_subspaces:
                raise _exceeded(budget, len(done) + len(pending_covers), what)
        todo = [c for c in covers if c not in done]
        if todo:
            stack.extend(reversed(todo))
            continue
        done[S] = combine(S, covers, done)
        del pending_covers[S]
        stack.pop()
    return done


def greedy_maximal_chain(G: Geometry, budget: Optional[Budget] = None) -> Chain:
    """每一步取规范顺序下第一个覆盖子空间，得到一条极大链"""
    masks = [0]
    while masks[-1] != G.full_mask:
        masks.append(cover_masks(G, masks[-1], budget)[0])
    return Chain(G, masks, validate=False)


def longest_chain(G: Geometry, budget: Optional[Budget] = None) -> Tuple[int, Chain]:
    """
    最长子空间链（有限情形下即 rk_C = rk_WO）

    Args:
        G: 几何
        budget: 预算，其中 lattice_subspaces 限制访问的子空间数

    Returns:
        (长度, 见证链)；见证在每一步取规范顺序下第一个达到最大值的覆盖

    Raises:
        BudgetExceeded: partial 中 lower 为一条贪心极大链的长度
    """
    budget = ensure_budget(budget)
    logger.info(f"最长链搜索: {G!r}")

    def combine(S: int, covers: List[int], done: Dict[int, Tuple[int, int]]) -> Tuple[int, int]:
        best = covers[0]
        for c in covers[1:]:
            if done[c][0] > done[best][0]:
                best = c
        return done[best][0] + 1, best

    try:
        table = _fold_lattice(G, budget, (0, -1), combine, "最长链")
    except BudgetExceeded as exc:
        lower = greedy_maximal_chain(G).length
        exc.partial.update({"lower": lower, "exact": False})
        raise
    masks = [0]
    while masks[-1] != G.full_mask:
        masks.append(table[masks[-1]][1])
    logger.debug(f"最长链长度 {table[0][0]}，访问子空间 {len(table)} 个")
    return table[0][0], Chain(G, masks, validate=False)


def maximal_chain_lengths(G: Geometry, budget: Optional[Budget] = None) -> ChainLengthsReport:
    """
    全部极大链的长度多重集

    Raises:
        BudgetExceeded: partial 中 lengths 只含贪心极大链，exhaustive 为 false
    """
    budget = ensure_budget(budget)

    def combine(S: int, covers: List[int], done: Dict[int, Counter]) -> Counter:
        total: Counter = Counter()
        for c in covers:
            for length, count in done[c].items():
                total[length + 1] += count
        return total

    try:
        table = _fold_lattice(G, budget, Counter({0: 1}), combine, "极大链枚举")
    except BudgetExceeded as exc:
        greedy = greedy_maximal_chain(G)
        exc.partial.update({"lengths": {greedy.length: 1}, "exhaustive": False})
        raise
    lengths = dict(sorted(table[0].items()))
    return ChainLengthsReport(lengths=lengths, exhaustive=True, subspaces_visited=len(table))


def iter_maximal_chains(G: Geometry, budget: Optional[Budget] = None) -> Iterator[Chain]:
    """按规范顺序逐条产出全部极大链（只用于小几何上的穷举检验）"""
    budget = ensure_budget(budget)
    cover_cache: Dict[int, List[int]] = {}
    path = [0]

    def covers_of(S: int) -> List[int]:
        if S not in cover_cache:
            cover_cache[S] = cover_masks(G, S, budget)
            if len(cover_cache) > budget.lattice_subspaces:
                raise _exceeded(budget, len(cover_cache), "极大链枚举")
        return cover_cache[S]

    def walk() -> Iterator[Chain]:
        S = path[-1]
        if S == G.full_mask:
            yield Chain(G, list(path), validate=False)
            return
        for c in covers_of(S):
            path.append(c)
            yield from walk()
            path.pop()

    yield from walk()
