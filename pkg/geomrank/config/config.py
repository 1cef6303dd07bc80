"""
配置管理模块

支持环境变量覆盖和动态配置更新
所有搜索预算（span 调用次数、墙钟时间、格枚举上限）都集中在这里
"""

import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger

PROJECT_ROOT = Path(__file__).parent.parent.parent.resolve()


def _budget_from_env() -> int:
    """GEOM_BUDGET 允许科学计数法写法，例如 1e6"""
    raw = os.getenv("GEOM_BUDGET")
    if not raw:
        return 10_000_000
    try:
        return int(float(raw))
    except ValueError:
        logger.warning(f"GEOM_BUDGET={raw!r} 不是数字，使用默认值 10000000")
        return 10_000_000


class GlobalConfig:
    """
    全局配置管理器

    特性：
    - 支持环境变量覆盖（A__B 形式映射到嵌套键）
    - 支持 JSON 配置文件合并
    - 支持动态配置更新
    """

    def __init__(self, config_file: Optional[str] = None):
        self._config = self._load_default_config()

        # 加载配置文件（如果存在）
        if config_file and Path(config_file).exists():
            with open(config_file, "r", encoding="utf-8") as f:
                file_config = json.load(f)
                self._config = self._deep_merge(self._config, file_config)

        # 环境变量覆盖
        self._apply_env_overrides()

    def _load_default_config(self) -> Dict[str, Any]:
        """加载默认配置"""
        return {
            # 通用预算
            "budget": {
                "span_calls": _budget_from_env(),
                "wall_clock_seconds": float(os.getenv("GEOM_WALL_CLOCK", "600")),
                "lattice_subspaces": int(os.getenv("GEOM_LATTICE_CAP", "200000")),
            },

            # 交换性质检查
            "ep": {
                "exhaustive_max_points": int(os.getenv("EP_EXHAUSTIVE_MAX_POINTS", "16")),
                "sampled_trials": int(os.getenv("EP_SAMPLED_TRIALS", "10000")),
            },

            # 秩计算
            "rank": {
                "exact_independence_max_points": int(os.getenv("RANK_EXACT_IND_MAX_POINTS", "20")),
                "enumerate_bases_max_points": int(os.getenv("RANK_ENUMERATE_BASES_MAX_POINTS", "12")),
            },

            # 例 1（自然数几何）
            "e1": {
                "magnitude_cap": int(os.getenv("E1_MAGNITUDE_CAP", "1000000")),
                "iteration_cap": int(os.getenv("E1_ITERATION_CAP", "10000")),
            },

            # 极空间
            "polar": {
                "point_cap": int(os.getenv("POLAR_POINT_CAP", "2000")),
                "nice_combinatorial_max_singulars": int(os.getenv("POLAR_MAX_SINGULARS", "5000")),
                "enable_hermitian": os.getenv("POLAR_ENABLE_HERMITIAN", "false").lower() == "true",
            },

            # 验证套件
            "suite": {
                "fuzz_seed": int(os.getenv("SUITE_FUZZ_SEED", "42")),
                "fuzz_trials": int(os.getenv("SUITE_FUZZ_TRIALS", "500")),
                "roundtrip_max_chains": int(os.getenv("SUITE_ROUNDTRIP_MAX_CHAINS", "1000")),
            },

            # 项目路径
            "project_root": str(PROJECT_ROOT),
            "debug": os.getenv("DEBUG", "false").lower() == "true",

            # 部署模式
            "deployment_mode": os.getenv("DEPLOYMENT_MODE", "development"),
        }

    def _apply_env_overrides(self):
        """应用环境变量覆盖"""
        # 支持嵌套配置的环境变量（如 BUDGET__SPAN_CALLS -> config["budget"]["span_calls"]）
        for key, value in os.environ.items():
            if "__" in key:
                parts = key.lower().split("__")
                if parts[0] not in self._config:
                    continue
                self._set_nested(self._config, parts, value)

    def _set_nested(self, config: dict, parts: list, value: Any):
        """设置嵌套配置值"""
        key = parts[0]
        if len(parts) == 1:
            # 类型转换
            current = config.get(key)
            if isinstance(current, bool):
                config[key] = value.lower() in ("true", "1", "yes")
            elif isinstance(current, int):
                try:
                    config[key] = int(float(value))
                except ValueError:
                    logger.warning(f"配置项 {key}={value!r} 不是整数，保留 {current}")
            elif isinstance(current, float):
                try:
                    config[key] = float(value)
                except ValueError:
                    logger.warning(f"配置项 {key}={value!r} 不是数字，保留 {current}")
            else:
                config[key] = value
        else:
            if key not in config or not isinstance(config[key], dict):
                config[key] = {}
            self._set_nested(config[key], parts[1:], value)

    def _deep_merge(self, base: dict, override: dict) -> dict:
        """深度合并配置"""
        result = base.copy()
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key_path: str, default: Any = None) -> Any:
        """获取配置值（支持点号路径）"""
        keys = key_path.split(".")
        value = self._config
        for key in keys:
            if isinstance(value, dict):
                value = value.get(key)
                if value is None:
                    return default
            else:
                return default
        return value

    def set(self, key_path: str, value: Any):
        """动态更新配置值"""
        keys = key_path.split(".")
        config = self._config
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            config = config[key]
        config[keys[-1]] = value

    def update(self, updates: dict):
        """批量更新配置"""
        self._config = self._deep_merge(self._config, updates)

    @property
    def config(self) -> Dict[str, Any]:
        """获取完整配置"""
        return json.loads(json.dumps(self._config))


# 全局配置实例
_global_config: Optional[GlobalConfig] = None


@lru_cache(maxsize=1)
def _cached_config(config_file: Optional[str]) -> GlobalConfig:
    return GlobalConfig(config_file)


def get_config(config_file: Optional[str] = None) -> GlobalConfig:
    """
    获取全局配置实例（单例模式）

    Args:
        config_file: 配置文件路径（可选）

    Returns:
        GlobalConfig实例
    """
    global _global_config
    if _global_config is None:
        _global_config = _cached_config(config_file)
    return _global_config


def reset_config():
    """重置配置（用于测试）"""
    global _global_config
    _global_config = None
    _cached_config.cache_clear()
