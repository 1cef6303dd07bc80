"""
有限经典极空间

点为形式的奇异射影点，线为完全奇异的射影直线；自然嵌入把点映到其规范化向量。
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional

import numpy as np
from loguru import logger

from geomrank.config.config import get_config
from geomrank.core.geometry import Geometry, build_geometry
from geomrank.core.pointset import PointSet, iter_bits
from geomrank.gf.field import get_field
from geomrank.gf.forms import FormSpec, bilinear_matrix, canonical_kind, is_singular_vectors, standard_form, witt_index
from geomrank.gf.linalg import LinearSubspace, encode, normalize_rows, projective_points
from geomrank.utils.errors import BudgetExceeded, InvariantViolation, UnsupportedParameter


def expected_point_count(kind: str, n: int, q: int) -> int:
    """(kind, n, q) 对应极空间的标准点数"""
    kind = canonical_kind(kind)
    if kind in ("sp", "o-par"):
        return (q ** (2 * n) - 1) // (q - 1)
    if kind == "o-plus":
        return (q**n - 1) * (q ** (n - 1) + 1) // (q - 1)
    if kind == "o-minus":
        return (q ** (n + 1) + 1) * (q**n - 1) // (q - 1)
    # H(2n-1, r²)
    r = int(round(q**0.5))
    d = 2 * n
    return (r**d - (-1) ** d) * (r ** (d - 1) - (-1) ** (d - 1)) // (r * r - 1)


class PolarGeometry:
    """
    带自然嵌入的极空间

    Attributes:
        geometry: 点线几何
        embedding: 第 i 行为点 i 的规范化向量
        form: 定义形式
        kind, n, q: 构造参数
        prk_algebraic: 形式的 Witt 指数
    """

    def __init__(self, geometry: Geometry, embedding: np.ndarray, form: FormSpec, kind: str, n: int, q: int):
        self.geometry = geometry
        self.embedding = embedding
        self.form = form
        self.kind = kind
        self.n = n
        self.q = q
        self.prk_algebraic = witt_index(form)
        self._index: Dict[int, int] = {int(c): i for i, c in enumerate(encode(form.field, embedding))}
        self._maximal_singulars: Optional[List[int]] = None

    @property
    def field(self):
        return self.form.field

    @property
    def name(self) -> str:
        return self.geometry.name

    def point_of(self, vector: Iterable[int]) -> int:
        """非零奇异向量对应的点编号"""
        v = normalize_rows(self.field, np.asarray(list(vector), dtype=np.int64).reshape(1, -1))
        code = int(encode(self.field, v)[0])
        if code not in self._index:
            raise UnsupportedParameter(f"向量 {list(vector)} 不是奇异点")
        return self._index[code]

    def linear_span_of(self, S: PointSet | int | Iterable[int]) -> LinearSubspace:
        """[e(S)]"""
        mask = _mask(self.geometry, S)
        rows = list(iter_bits(mask))
        if not rows:
            return LinearSubspace(self.field, self.form.dim)
        return LinearSubspace(self.field, self.form.dim, self.embedding[rows])

    def pullback_mask(self, U: LinearSubspace) -> int:
        """e⁻¹(U) 的位图"""
        inside = U.contains_all(self.embedding)
        mask = 0
        for i in np.flatnonzero(inside):
            mask |= 1 << int(i)
        return mask

    def pullback(self, U: LinearSubspace) -> PointSet:
        return PointSet(self.geometry.n_points, self.pullback_mask(U))

    def sidecar(self) -> dict:
        """嵌入旁车文件：点编号 -> 向量元素编码"""
        return {
            "field": self.field.tag(),
            "kind": self.kind,
            "n": self.n,
            "dim": self.form.dim,
            "vectors": self.embedding.tolist(),
        }

    def __repr__(self) -> str:
        return f"<PolarGeometry {self.kind}:{self.n}:{self.q}: {self.geometry.n_points} points, {self.geometry.n_lines} lines>"


def _mask(G: Geometry, S: PointSet | int | Iterable[int]) -> int:
    if isinstance(S, PointSet):
        return S.mask
    if isinstance(S, int):
        return S
    return PointSet.of(G.n_points, S).mask


def build_polar(kind: str, n: int, q: int) -> PolarGeometry:
    """
    构造极空间及其自然嵌入

    Args:
        kind: sp / o-par / o-plus / o-minus / herm，或 symplectic / parabolic / hyperbolic / elliptic / hermitian
        n: 极秩参数（Witt 指数）
        q: 域的阶

    Raises:
        UnsupportedParameter: 参数不受支持（herm 需打开 polar.enable_hermitian）
        BudgetExceeded: 点数超过 polar.point_cap
        InvariantViolation: 枚举出的点数与标准公式不符
    """
    kind = canonical_kind(kind)
    config = get_config()
    if kind == "herm" and not config.get("polar.enable_hermitian", False):
        raise UnsupportedParameter("hermitian 极空间未启用（设置 polar.enable_hermitian=true）")
    F = get_field(q)
    form = standard_form(kind, n, F)
    expected = expected_point_count(kind, n, q)
    cap = int(config.get("polar.point_cap", 2000))
    if expected > cap:
        raise BudgetExceeded(f"{kind}:{n}:{q} 有 {expected} 个点，超过上限 {cap}", {"n_points": expected})

    logger.info(f"构造极空间 {kind}:{n}:{q}（维数 {form.dim}）")
    candidates = projective_points(F, form.dim)
    points = candidates[is_singular_vectors(form, candidates)]
    if points.shape[0] != expected:
        raise InvariantViolation(f"{kind}:{n}:{q} 奇异点数 {points.shape[0]} 与公式 {expected} 不符")
    index = {int(c): i for i, c in enumerate(encode(F, points))}
    orthogonal = bilinear_matrix(form, points, points) == 0

    # 两个奇异点正交时，它们张成的射影直线完全奇异
    lines: List[List[int]] = []
    covered = [1 << i for i in range(expected)]
    for i in range(expected):
        for j in np.flatnonzero(orthogonal[i, i + 1 :]) + i + 1:
            j = int(j)
            if covered[i] >> j & 1:
                continue
            combos = F.add[points[i][None, :], F.mul[F.elements[:, None], points[j][None, :]]]
            members = {j} | {index[int(c)] for c in encode(F, normalize_rows(F, combos))}
            line_mask = 0
            for p in members:
                line_mask |= 1 << p
            for p in members:
                covered[p] |= line_mask
            lines.append(sorted(members))
    geometry = build_geometry(expected, lines, name=f"{kind}:{n}:{q}")
    logger.debug(f"极空间 {geometry!r}")
    return PolarGeometry(geometry, points, form, kind, n, q)
