"""
ユーティリティモジュールのテスト
"""
import logging
import pickle

import pytest

from src.utils.utils import (
    BudgetExceededError, DataUtils, Logger, StatisticsUtils, ValidationError, ValidationUtils,
)


class TestValidationUtils:
    """バリデーションのテスト"""

    @pytest.mark.parametrize("label,expected", [
        ("u1", ("U", 1)),
        ("V12", ("V", 12)),
        (" v 3 ", ("V", 3)),
    ])
    def test_parse_vertex_label(self, label, expected):
        assert ValidationUtils.parse_vertex_label(label) == expected

    @pytest.mark.parametrize("label", ["w1", "u", "1", "u0", "", None, "u-2"])
    def test_parse_vertex_label_invalid(self, label):
        with pytest.raises(ValidationError):
            ValidationUtils.parse_vertex_label(label)

    def test_require_int(self):
        assert ValidationUtils.require_int("n", 12) == 12
        for value in (True, 12.0, "12", None):
            with pytest.raises(ValidationError):
                ValidationUtils.require_int("n", value)

    def test_parse_positive_int(self):
        assert ValidationUtils.parse_positive_int("KNODEL_WORKERS", " 4 ") == 4
        assert ValidationUtils.parse_positive_int("KNODEL_WORKERS", None) is None
        assert ValidationUtils.parse_positive_int("KNODEL_WORKERS", "") is None
        for raw in ("0", "-3", "four", "1.5"):
            with pytest.raises(ValidationError, match="KNODEL_WORKERS"):
                ValidationUtils.parse_positive_int("KNODEL_WORKERS", raw)


class TestDataUtils:
    """データ整形のテスト"""

    def test_format_bool(self):
        assert DataUtils.format_bool(True) == "true"
        assert DataUtils.format_bool(False) == "false"
        assert DataUtils.format_bool(None) == ""

    def test_format_optional(self):
        assert DataUtils.format_optional(None) == ""
        assert DataUtils.format_optional(0) == "0"

    @pytest.mark.parametrize("seconds,expected", [
        (0.5, "500.0ms"),
        (2.5, "2.50s"),
        (125, "2m5s"),
    ])
    def test_format_duration(self, seconds, expected):
        assert DataUtils.format_duration(seconds) == expected


class TestStatisticsUtils:
    """統計処理のテスト"""

    def test_empty(self):
        assert StatisticsUtils.calculate_statistics([]) == {}

    def test_values(self):
        stats = StatisticsUtils.calculate_statistics([1.0, 2.0, 3.0, 6.0])
        assert stats["count"] == 4
        assert stats["mean"] == pytest.approx(3.0)
        assert stats["median"] == pytest.approx(2.5)
        assert stats["min"] == 1.0 and stats["max"] == 6.0


class TestLogger:
    """ロガー設定のテスト"""

    def test_console_and_file(self, tmp_path):
        log_file = tmp_path / "logs" / "knodel.log"
        logger = Logger.setup_logger("src", log_file, "debug")
        assert logger.level == logging.DEBUG
        assert logger.propagate is False
        assert len(logger.handlers) == 2

        logger.debug("探索開始")
        for handler in logger.handlers:
            handler.flush()
        assert "探索開始" in log_file.read_text(encoding="utf-8")

    def test_setup_twice_replaces_handlers(self):
        Logger.setup_logger("src")
        logger = Logger.setup_logger("src", level="WARNING")
        assert len(logger.handlers) == 1
        assert logger.level == logging.WARNING


class TestErrors:
    """共通エラーのテスト"""

    def test_budget_error_message(self):
        error = BudgetExceededError("W(4,28)", 2, 1)
        assert "W(4,28)" in str(error)
        assert "budget=1" in str(error)

    def test_budget_error_pickles(self):
        error = pickle.loads(pickle.dumps(BudgetExceededError("W(4,28)", 2, 1)))
        assert (error.description, error.nodes, error.budget) == ("W(4,28)", 2, 1)
