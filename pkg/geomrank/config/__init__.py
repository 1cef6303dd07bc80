"""配置模块"""

from .config import PROJECT_ROOT, GlobalConfig, get_config, reset_config

__all__ = ["PROJECT_ROOT", "GlobalConfig", "get_config", "reset_config"]
