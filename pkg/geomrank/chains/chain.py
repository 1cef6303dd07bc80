"""子空间链"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple, Union

from geomrank.core.closure import is_subspace_mask
from geomrank.core.geometry import Geometry
from geomrank.core.pointset import PointSet, iter_bits
from geomrank.utils.errors import EmptyChain, InvalidChain

Member = Union[PointSet, int, Iterable[int]]


def _member_mask(G: Geometry, member: Member) -> int:
    if isinstance(member, PointSet):
        return member.mask
    if isinstance(member, int):
        return member
    return PointSet.of(G.n_points, member).mask


class Chain:
    """
    严格递增的子空间链

    length = 成员数 - 1。构造时校验每个成员都是子空间且相邻成员严格包含。
    """

    __slots__ = ("geometry", "masks")

    def __init__(self, G: Geometry, members: Sequence[Member], validate: bool = True):
        masks = tuple(_member_mask(G, m) for m in members)
        if not masks:
            raise EmptyChain("链至少需要一个成员")
        if validate:
            for i, m in enumerate(masks):
                if m >> G.n_points:
                    raise InvalidChain(f"第 {i} 个成员含越界点")
                if not is_subspace_mask(G, m):
                    raise InvalidChain(f"第 {i} 个成员 {list(iter_bits(m))} 不是子空间")
            for i in range(len(masks) - 1):
                lo, hi = masks[i], masks[i + 1]
                if lo == hi or lo & ~hi:
                    raise InvalidChain(f"第 {i} 与第 {i + 1} 个成员不是严格包含关系")
        self.geometry = G
        self.masks: Tuple[int, ...] = masks

    @property
    def members(self) -> List[PointSet]:
        return [PointSet(self.geometry.n_points, m) for m in self.masks]

    @property
    def length(self) -> int:
        return len(self.masks) - 1

    @property
    def bottom(self) -> PointSet:
        return PointSet(self.geometry.n_points, self.masks[0])

    @property
    def top(self) -> PointSet:
        return PointSet(self.geometry.n_points, self.masks[-1])

    def contains_chain(self, other: "Chain") -> bool:
        """other 的每个成员都是本链的成员"""
        own = set(self.masks)
        return all(m in own for m in other.masks)

    def __contains__(self, member: object) -> bool:
        if isinstance(member, PointSet):
            return member.mask in self.masks
        return False

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def to_lists(self) -> List[List[int]]:
        return [list(iter_bits(m)) for m in self.masks]

    def __repr__(self) -> str:
        return f"Chain(length={self.length}, members={self.to_lists()})"


def as_chain(G: Geometry, C: Union[Chain, Sequence[Member]]) -> Chain:
    if isinstance(C, Chain):
        return C
    return Chain(G, list(C))
