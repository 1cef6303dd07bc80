"""
PointSet：几何点集

用 Python 整数做位图（第 i 位对应点 i），配合 int.bit_count() 做快速计数。
规范遍历顺序为点编号升序；规范子集顺序为位图整数值升序。
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

from geomrank.utils.errors import InvalidPoint


def iter_bits(mask: int) -> Iterator[int]:
    """按升序遍历位图中的点编号"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def lowest_bit(mask: int) -> int:
    """位图中编号最小的点；空集返回 -1"""
    return (mask & -mask).bit_length() - 1


class PointSet:
    """不可变点集（绑定所属几何的点数）"""

    __slots__ = ("mask", "n_points")

    def __init__(self, n_points: int, mask: int = 0):
        if mask < 0 or mask >> n_points:
            raise InvalidPoint(f"点集包含越界的点（几何只有 {n_points} 个点）")
        self.n_points = n_points
        self.mask = mask

    @classmethod
    def of(cls, n_points: int, points: Iterable[int]) -> "PointSet":
        mask = 0
        for p in points:
            p = int(p)
            if p < 0 or p >= n_points:
                raise InvalidPoint(f"点 {p} 越界（几何只有 {n_points} 个点）")
            mask |= 1 << p
        return cls(n_points, mask)

    @classmethod
    def empty(cls, n_points: int) -> "PointSet":
        return cls(n_points, 0)

    @classmethod
    def full(cls, n_points: int) -> "PointSet":
        return cls(n_points, (1 << n_points) - 1)

    def _coerce(self, other: "PointSet | int") -> int:
        if isinstance(other, PointSet):
            return other.mask
        return int(other)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, p: object) -> bool:
        try:
            p = int(p)  # type: ignore[call-overload]
        except (TypeError, ValueError):
            return False
        return 0 <= p < self.n_points and bool(self.mask >> p & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PointSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self.mask == mask_of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: "PointSet") -> bool:
        # 真包含
        m = self._coerce(other)
        return self.mask != m and self.mask & ~m == 0

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def __gt__(self, other: "PointSet") -> bool:
        m = self._coerce(other)
        return self.mask != m and m & ~self.mask == 0

    def __ge__(self, other: "PointSet") -> bool:
        return self._coerce(other) & ~self.mask == 0

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n_points, self.mask | self._coerce(other))

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n_points, self.mask & self._coerce(other))

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n_points, self.mask & ~self._coerce(other))

    def with_point(self, p: int) -> "PointSet":
        return PointSet(self.n_points, self.mask | (1 << p))

    def without_point(self, p: int) -> "PointSet":
        return PointSet(self.n_points, self.mask & ~(1 << p))

    def complement(self) -> "PointSet":
        return PointSet(self.n_points, ((1 << self.n_points) - 1) & ~self.mask)

    def isdisjoint(self, other: "PointSet") -> bool:
        return self.mask & self._coerce(other) == 0

    def min(self) -> int:
        return lowest_bit(self.mask)

    def to_list(self) -> List[int]:
        return list(iter_bits(self.mask))

    def to_tuple(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def sort_key(self) -> Tuple[int, ...]:
        """规范顺序：按升序点列表做字典序比较"""
        return self.to_tuple()

    def __repr__(self) -> str:
        return f"PointSet({self.to_list()})"
