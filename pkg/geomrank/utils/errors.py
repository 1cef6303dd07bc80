"""
异常定义

所有对外可见的错误都继承自 GeomError，CLI 与 HTTP 层据此统一转换为退出码/状态码
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class GeomError(RuntimeError):
    """geomrank 异常基类"""

    def to_payload(self) -> Dict[str, Any]:
        return {"type": type(self).__name__, "message": str(self)}


class InvalidLine(GeomError):
    """直线少于两个点"""


class InvalidPoint(GeomError):
    """点编号越界"""


class NotASubspace(GeomError):
    """给定点集不是子空间"""


class DependentInput(GeomError):
    """输入点列不是独立集"""


class NotGenerating(GeomError):
    """输入点列不能生成整个几何"""


class EmptyChain(GeomError):
    """链没有任何成员"""


class InvalidChain(GeomError):
    """链成员不是子空间或不严格递增"""


class NotDistinct(GeomError):
    """要求两个不同的元素"""


class UnsupportedParameter(GeomError):
    """参数超出支持范围"""


class UnsupportedField(UnsupportedParameter):
    """不支持的有限域阶数"""


class DimensionMismatch(GeomError):
    """向量维数不一致"""


class NotNice(GeomError):
    """子空间不包含两个不相交的极大奇异子空间"""


class DegeneratePolarRank(GeomError):
    """极秩小于 2，余秩无定义"""


class GeometryFormatError(GeomError):
    """几何 JSON 文件格式错误"""


class InvariantViolation(GeomError):
    """内部不变量被破坏（说明实现有误）"""


class BudgetExceeded(GeomError):
    """
    超出计算预算

    partial 中携带已经得到的部分结果（上下界、部分多重集、已知下界等）
    """

    def __init__(self, message: str, partial: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.partial: Dict[str, Any] = dict(partial or {})

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload["partial"] = self.partial
        return payload
