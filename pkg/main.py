#!/usr/bin/env python3
"""
Knödel支配数検証システム - メインエントリーポイント
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

# .env の KNODEL_* 設定を読み込む
load_dotenv(project_root / ".env")

from src.cli.main import main  # noqa: E402

if __name__ == '__main__':
    sys.exit(main())
