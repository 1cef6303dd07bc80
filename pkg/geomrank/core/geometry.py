"""
点线几何数据模型

Geometry 在构造时完成校验、去重和直线排序，之后不可变。
JSON 格式：{"points": N, "lines": [[i, j, ...], ...]}，点编号从 0 开始。
"""

from __future__ import annotations

import json
import operator
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from geomrank.core.pointset import PointSet, iter_bits
from geomrank.utils.errors import GeometryFormatError, InvalidLine, InvalidPoint, InvariantViolation


class Geometry:
    """有限点线几何 Γ = (P, L)"""

    def __init__(self, n_points: int, line_masks: Sequence[int], name: str = ""):
        self.n_points = n_points
        self.name = name
        self.line_masks: Tuple[int, ...] = tuple(line_masks)
        self.full_mask = (1 << n_points) - 1
        through: List[List[int]] = [[] for _ in range(n_points)]
        for idx, mask in enumerate(self.line_masks):
            for p in iter_bits(mask):
                through[p].append(idx)
        self.point_to_lines: Tuple[Tuple[int, ...], ...] = tuple(tuple(t) for t in through)
        self._neighbors: Optional[Tuple[int, ...]] = None

    @property
    def lines(self) -> List[PointSet]:
        return [PointSet(self.n_points, m) for m in self.line_masks]

    @property
    def points(self) -> PointSet:
        return PointSet(self.n_points, self.full_mask)

    @property
    def n_lines(self) -> int:
        return len(self.line_masks)

    def pointset(self, points: Iterable[int]) -> PointSet:
        return PointSet.of(self.n_points, points)

    def empty(self) -> PointSet:
        return PointSet(self.n_points, 0)

    @property
    def neighbors(self) -> Tuple[int, ...]:
        """共线点位图（包含点自身），惰性计算"""
        if self._neighbors is None:
            nb = [1 << p for p in range(self.n_points)]
            for mask in self.line_masks:
                for p in iter_bits(mask):
                    nb[p] |= mask
            self._neighbors = tuple(nb)
        return self._neighbors

    def collinear(self, x: int, y: int) -> bool:
        return bool(self.neighbors[x] >> y & 1)

    def check_consistency(self) -> None:
        """双向校验 point_to_lines 与 lines"""
        for idx, mask in enumerate(self.line_masks):
            for p in iter_bits(mask):
                if idx not in self.point_to_lines[p]:
                    raise InvariantViolation(f"点 {p} 的直线索引缺少直线 {idx}")
        for p, idxs in enumerate(self.point_to_lines):
            for idx in idxs:
                if not self.line_masks[idx] >> p & 1:
                    raise InvariantViolation(f"直线 {idx} 不含点 {p}，但索引记录了它")

    def to_dict(self) -> dict:
        return {
            "points": self.n_points,
            "lines": [list(iter_bits(m)) for m in self.line_masks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Geometry):
            return NotImplemented
        return self.n_points == other.n_points and self.line_masks == other.line_masks

    def __hash__(self) -> int:
        return hash((self.n_points, self.line_masks))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Geometry{label}: {self.n_points} points, {self.n_lines} lines>"


def _line_key(mask: int) -> Tuple[int, ...]:
    return tuple(iter_bits(mask))


def build_geometry(n_points: int, lines: Iterable[Iterable[int]], name: str = "") -> Geometry:
    """
    构造并校验几何

    Args:
        n_points: 点数（点编号 0..n_points-1）
        lines: 直线列表，每条直线是点编号列表

    Returns:
        去重并按规范顺序排好直线的 Geometry
    """
    try:
        n_points = operator.index(n_points)
    except TypeError as exc:
        raise InvalidPoint(f"点数必须是整数，收到 {n_points!r}") from exc
    if n_points < 1:
        raise InvalidPoint(f"点数必须至少为 1，收到 {n_points}")
    masks = set()
    for raw in lines:
        try:
            raw = list(raw)
        except TypeError as exc:
            raise InvalidLine(f"直线必须是点编号列表，收到 {raw!r}") from exc
        mask = 0
        for p in raw:
            try:
                p = operator.index(p)
            except TypeError as exc:
                raise InvalidPoint(f"直线 {raw} 含非整数点 {p!r}") from exc
            if p < 0 or p >= n_points:
                raise InvalidPoint(f"直线 {raw} 含越界点 {p}")
            mask |= 1 << p
        if mask.bit_count() < 2:
            raise InvalidLine(f"直线 {raw} 少于两个点")
        masks.add(mask)
    ordered = sorted(masks, key=_line_key)
    geometry = Geometry(n_points, ordered, name=name)
    logger.debug(f"构造几何 {name or '<anonymous>'}: {n_points} 点, {len(ordered)} 线")
    return geometry


def geometry_from_dict(data: dict, name: str = "") -> Geometry:
    try:
        n_points = int(data["points"])
        lines = data["lines"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryFormatError(f"几何 JSON 缺少 points/lines 字段: {exc}") from exc
    if not isinstance(lines, list):
        raise GeometryFormatError("lines 必须是列表")
    return build_geometry(n_points, lines, name=name)


def load_geometry(path: str | Path) -> Geometry:
    """从 JSON 文件读取几何"""
    path = Path(path)
    if not path.exists():
        raise GeometryFormatError(f"几何文件不存在: {path}")
    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise GeometryFormatError(f"几何文件解析失败: {exc}") from exc
    return geometry_from_dict(data, name=path.stem)


def dump_geometry(geometry: Geometry, path: str | Path) -> Path:
    """把几何写成规范化 JSON"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(geometry.to_json(), encoding="utf-8")
    return path
