"""射影空间 PG(d, q) 与随机小几何"""

from __future__ import annotations

import random
from typing import Dict, List

from geomrank.config.config import get_config
from geomrank.core.geometry import Geometry, build_geometry
from geomrank.gf.field import get_field
from geomrank.gf.linalg import LinearSubspace, encode, projective_points
from geomrank.utils.errors import BudgetExceeded, UnsupportedParameter


def projective_space(d: int, q: int) -> Geometry:
    """
    PG(d, q)：V(d+1, q) 的一维子空间为点，二维子空间中的点集为线

    点按规范化向量（首个非零坐标为 1）的字典序编号。

    Raises:
        UnsupportedField: q 不受支持
        UnsupportedParameter: d < 1
        BudgetExceeded: 点数超过 polar.point_cap
    """
    if d < 1:
        raise UnsupportedParameter(f"射影维数 d 必须 ≥ 1（当前 {d}）")
    F = get_field(q)
    n_points = (q ** (d + 1) - 1) // (q - 1)
    cap = int(get_config().get("polar.point_cap", 2000))
    if n_points > cap:
        raise BudgetExceeded(f"PG({d},{q}) 有 {n_points} 个点，超过上限 {cap}", {"n_points": n_points})
    points = projective_points(F, d + 1)
    index: Dict[int, int] = {int(c): i for i, c in enumerate(encode(F, points))}
    lines = set()
    for i in range(n_points):
        for j in range(i + 1, n_points):
            line = LinearSubspace(F, d + 1, points[[i, j]]).projective_points()
            lines.add(tuple(sorted(index[int(c)] for c in encode(F, line))))
    return build_geometry(n_points, sorted(lines), name=f"pg:{d}:{q}")


def fano() -> Geometry:
    """Fano 平面 PG(2, 2)"""
    geometry = projective_space(2, 2)
    geometry.name = "fano"
    return geometry


def random_geometry(
    rng: random.Random,
    max_points: int = 9,
    max_lines: int = 12,
    min_line_size: int = 2,
    max_line_size: int = 4,
) -> Geometry:
    """
    随机小几何：点数 1..max_points，直线数 0..max_lines，每条直线 min..max 个点

    同一个 rng 状态总是生成同一个几何。
    """
    n = rng.randint(1, max_points)
    lines: List[List[int]] = []
    if n >= min_line_size:
        for _ in range(rng.randint(0, max_lines)):
            size = rng.randint(min_line_size, min(max_line_size, n))
            lines.append(sorted(rng.sample(range(n), size)))
    return build_geometry(n, lines, name="random")


def random_geometries(seed: int, count: int, **kwargs) -> List[Geometry]:
    rng = random.Random(seed)
    return [random_geometry(rng, **kwargs) for _ in range(count)]
