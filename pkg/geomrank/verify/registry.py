"""
内置几何注册表

名字格式：fano、pg:d:q、example2:n、<kind>:n:q（kind 为 sp / o-par / o-plus / o-minus / herm 或其别名）。
验证套件、CLI 与 HTTP 层都通过这里取几何，不需要任何数据文件。
"""

from __future__ import annotations

from functools import lru_cache
from typing import List

from loguru import logger

from geomrank.core.geometry import Geometry
from geomrank.gallery.example2 import example2
from geomrank.gallery.projective import fano, projective_space
from geomrank.gf.forms import KIND_ALIASES, FORM_KINDS, canonical_kind
from geomrank.polar.space import PolarGeometry, build_polar
from geomrank.utils.errors import UnsupportedParameter


def _parse_ints(name: str, parts: List[str], expected: int) -> List[int]:
    if len(parts) != expected:
        raise UnsupportedParameter(f"内置几何名 {name!r} 需要 {expected} 个整数参数")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise UnsupportedParameter(f"内置几何名 {name!r} 的参数不是整数") from exc


def is_polar_name(name: str) -> bool:
    head = name.strip().lower().split(":", 1)[0]
    return head in FORM_KINDS or head in KIND_ALIASES


@lru_cache(maxsize=32)
def resolve_polar(name: str) -> PolarGeometry:
    """
    按名字构造极空间（带自然嵌入），结果缓存

    Raises:
        UnsupportedParameter: 名字不是极空间名
    """
    head, *rest = name.strip().lower().split(":")
    if not is_polar_name(head):
        raise UnsupportedParameter(f"{name!r} 不是极空间名")
    n, q = _parse_ints(name, rest, 2)
    return build_polar(canonical_kind(head), n, q)


@lru_cache(maxsize=32)
def resolve_builtin(name: str) -> Geometry:
    """
    按名字取内置几何，结果缓存

    Args:
        name: fano / pg:d:q / example2:n / <kind>:n:q

    Raises:
        UnsupportedParameter: 未知名字或参数错误
    """
    key = name.strip().lower()
    head, *rest = key.split(":")
    logger.debug(f"解析内置几何 {key}")
    if head == "fano" and not rest:
        return fano()
    if head == "pg":
        d, q = _parse_ints(name, rest, 2)
        return projective_space(d, q)
    if head == "example2":
        (n,) = _parse_ints(name, rest, 1)
        return example2(n)
    if is_polar_name(head):
        return resolve_polar(key).geometry
    raise UnsupportedParameter(f"未知的内置几何: {name}")


def builtin_names() -> List[str]:
    """可用名字的示例（帮助信息用）"""
    return ["fano", "pg:2:2", "pg:3:2", "example2:4", "sp:2:2", "o-par:2:3", "o-minus:2:2"]
