"""点线几何核心：数据模型、闭包算子、交换性质检查"""

from .closure import SpanCache, cover_masks, covers, is_subspace, is_subspace_mask, span, span_mask
from .exchange import check_exchange_property, replay_witness
from .geometry import Geometry, build_geometry, dump_geometry, geometry_from_dict, load_geometry
from .pointset import PointSet, iter_bits, mask_of

__all__ = [
    "Geometry",
    "PointSet",
    "SpanCache",
    "build_geometry",
    "check_exchange_property",
    "cover_masks",
    "covers",
    "dump_geometry",
    "geometry_from_dict",
    "is_subspace",
    "is_subspace_mask",
    "iter_bits",
    "load_geometry",
    "mask_of",
    "replay_witness",
    "span",
    "span_mask",
]
