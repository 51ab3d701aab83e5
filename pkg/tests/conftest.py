"""
pytest設定ファイル
"""
import logging
import pytest
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

# 性質テスト共通のプロファイル
settings.register_profile(
    "knodel",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("knodel")


@pytest.fixture(autouse=True)
def setup_test_environment(monkeypatch):
    """各テストの前に実行される環境セットアップ"""
    # 外部の KNODEL_* 設定に影響されないようにする
    for name in ("KNODEL_NODE_BUDGET", "KNODEL_WORKERS", "KNODEL_LOG_LEVEL", "KNODEL_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)

    from src.core.cache_manager import cache_manager
    cache_manager.clear()

    yield

    cache_manager.clear()
    # CLIテストで付けたハンドラーを外し、caplog に届くよう戻す
    package_logger = logging.getLogger("src")
    for handler in package_logger.handlers:
        handler.close()
    package_logger.handlers.clear()
    package_logger.propagate = True


@pytest.fixture
def w3_8():
    """W(3,8)"""
    from src.core.knodel import knodel
    return knodel(3, 8)


@pytest.fixture
def w3_12():
    """W(3,12)"""
    from src.core.knodel import knodel
    return knodel(3, 12)


@pytest.fixture
def w4_46():
    """W(4,46)"""
    from src.core.knodel import knodel
    return knodel(4, 46)
