"""
交换性质不成立的有限几何

点：a = 0，B = {b_1..b_n} = {1..n}，C = {c_1..c_n} = {n+1..2n}，f(b_i) = c_i。
直线：
- B 本身
- 三点线 {a, b_i, f(b_i)}
- 两点线 {b_i, c_j}，j ≠ i
- C 中任意两点

所有基大小为 3，而最长子空间链长度为 1 + n。
"""

from __future__ import annotations

from typing import List

from geomrank.core.geometry import Geometry, build_geometry
from geomrank.utils.errors import UnsupportedParameter

A = 0


def b_point(n: int, i: int) -> int:
    return i


def c_point(n: int, i: int) -> int:
    return n + i


def example2(n: int) -> Geometry:
    """
    构造 2n+1 个点、1 + n + n(n-1) + n(n-1)/2 条直线的几何

    Raises:
        UnsupportedParameter: n < 3
    """
    if n < 3:
        raise UnsupportedParameter(f"example2 要求 n ≥ 3（当前 {n}）")
    B = [b_point(n, i) for i in range(1, n + 1)]
    C = [c_point(n, i) for i in range(1, n + 1)]
    lines: List[List[int]] = [B]
    lines.extend([A, b_point(n, i), c_point(n, i)] for i in range(1, n + 1))
    lines.extend(
        [b_point(n, i), c_point(n, j)] for i in range(1, n + 1) for j in range(1, n + 1) if i != j
    )
    lines.extend([C[i], C[j]] for i in range(n) for j in range(i + 1, n))
    return build_geometry(2 * n + 1, lines, name=f"example2:{n}")


def b_set(n: int) -> List[int]:
    return list(range(1, n + 1))


def c_set(n: int) -> List[int]:
    return list(range(n + 1, 2 * n + 1))


def c_b_set(n: int, b: int) -> List[int]:
    """C_b = (C ∖ {f(b)}) ∪ {b}，同样是极大独立且不生成的子空间"""
    if not 1 <= b <= n:
        raise UnsupportedParameter(f"b 必须在 B = 1..{n} 中（当前 {b}）")
    return sorted([c for c in c_set(n) if c != c_point(n, b)] + [b])
