"""
计算预算

Budget 统计 span 调用次数与墙钟时间，超出时抛出 BudgetExceeded。
所有带预算的操作都接受可选的 budget 参数，缺省时按全局配置新建一个。
"""

from __future__ import annotations

import time
from typing import Any, Dict, Optional

from loguru import logger

from geomrank.config.config import get_config
from geomrank.utils.errors import BudgetExceeded


class Budget:
    """span 调用次数 + 墙钟时间预算"""

    def __init__(
        self,
        span_calls: Optional[int] = None,
        wall_clock_seconds: Optional[float] = None,
        lattice_subspaces: Optional[int] = None,
    ):
        config = get_config()
        self.span_calls = int(span_calls if span_calls is not None else config.get("budget.span_calls", 10_000_000))
        self.wall_clock_seconds = float(
            wall_clock_seconds if wall_clock_seconds is not None else config.get("budget.wall_clock_seconds", 600.0)
        )
        self.lattice_subspaces = int(
            lattice_subspaces if lattice_subspaces is not None else config.get("budget.lattice_subspaces", 200_000)
        )
        self.used = 0
        self._started = time.monotonic()

    @classmethod
    def from_config(cls) -> "Budget":
        return cls()

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(span_calls=1 << 62, wall_clock_seconds=float("inf"), lattice_subspaces=1 << 62)

    def fresh(self) -> "Budget":
        """同样上限、计数清零的新预算（组合报告中每个子操作各用一份）"""
        return Budget(self.span_calls, self.wall_clock_seconds, self.lattice_subspaces)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._started

    def charge(self, calls: int = 1, partial: Optional[Dict[str, Any]] = None, what: str = "span"):
        """记一次（或多次）span 调用；超预算则抛出 BudgetExceeded"""
        self.used += calls
        if self.used > self.span_calls:
            logger.warning(f"{what}: span 调用次数超出预算 {self.span_calls}")
            raise BudgetExceeded(f"{what}: span 调用次数超出预算 {self.span_calls}", partial)
        # 每 1024 次检查一次时钟
        if self.used & 1023 == 0 and self.elapsed > self.wall_clock_seconds:
            logger.warning(f"{what}: 运行时间超出预算 {self.wall_clock_seconds}s")
            raise BudgetExceeded(f"{what}: 运行时间超出预算 {self.wall_clock_seconds}s", partial)


def ensure_budget(budget: Optional[Budget]) -> Budget:
    return budget if budget is not None else Budget.from_config()
