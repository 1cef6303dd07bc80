#!/usr/bin/env python3
"""
本地启动 geomrank API（自动加载 .env，热重载）
"""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path


ROOT_DIR = Path(__file__).resolve().parents[1]
ENV_FILE = ROOT_DIR / ".env"


def main() -> int:
    command = [
        sys.executable,
        "-m",
        "uvicorn",
        "geomrank.api.server:app",
        "--reload",
    ]
    if ENV_FILE.exists():
        command.extend(["--env-file", str(ENV_FILE)])
    else:
        print(f"[warn] 未找到 {ENV_FILE}，使用默认配置。", file=sys.stderr)

    print("[info] FastAPI 启动中，默认监听 8000 端口，Ctrl+C 退出。")
    try:
        return subprocess.call(command, cwd=ROOT_DIR)
    except FileNotFoundError as exc:
        raise FileNotFoundError(f"启动命令失败：{' '.join(command)}，请确认依赖已安装。") from exc
    except KeyboardInterrupt:
        return 0


if __name__ == "__main__":
    sys.exit(main())
