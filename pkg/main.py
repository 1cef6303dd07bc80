"""
geomrank 主入口

使用示例：
    python main.py rank --builtin example2:4 --json
    python main.py chains longest --builtin fano
    python main.py polar corank --kind o-par --rank 2 --q 3 --method perp
    python main.py verify --suite paper
"""

import sys

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

from geomrank.cli import main


if __name__ == "__main__":
    sys.exit(main())
