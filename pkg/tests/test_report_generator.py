"""
ReportGenerator の単体テスト
"""
import json

import pytest

from src.core.report_generator import SWEEP_COLUMNS, ReportGenerator, SweepRow, VerificationReport
from src.utils.utils import ValidationError


def make_row(n: int, **overrides) -> SweepRow:
    values = dict(
        delta=3, n=n, gamma_solver=4, gamma_formula=4, gamma_deleted=3,
        verdict_solver="Critical", verdict_theorem="Critical", nodes=10, millis=5,
    )
    values.update(overrides)
    return SweepRow(**values)


class TestSweepRow:
    """スイープ行のテスト"""

    def test_agreement(self):
        row = make_row(12)
        assert row.agree_gamma is True
        assert row.agree_verdict is True
        assert not row.has_disagreement

    def test_disagreement(self):
        row = make_row(12, gamma_formula=5)
        assert row.agree_gamma is False
        assert row.has_disagreement

    def test_no_prediction(self):
        row = make_row(12, delta=2, gamma_formula=None, verdict_theorem=None)
        assert row.agree_gamma is None and row.agree_verdict is None
        assert not row.has_disagreement
        cells = row.to_cells()
        assert cells["gamma_formula"] == ""
        assert cells["agree_verdict"] == ""


class TestRender:
    """CSV / JSONL 出力のテスト"""

    def test_csv_header_and_order(self):
        text = ReportGenerator.render([make_row(20), make_row(12)], "csv")
        lines = text.splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert lines[1].startswith("3,12,")
        assert lines[2].startswith("3,20,")
        assert lines[1] == "3,12,4,4,3,Critical,Critical,true,true,10,5"
        assert "\r" not in text

    def test_jsonl(self):
        text = ReportGenerator.render([make_row(12, gamma_formula=None)], "jsonl")
        record = json.loads(text.splitlines()[0])
        assert record["gamma_formula"] is None
        assert record["agree_gamma"] is None
        assert list(record) == SWEEP_COLUMNS

    def test_empty_csv(self):
        assert ReportGenerator.render([], "csv").splitlines() == [",".join(SWEEP_COLUMNS)]

    def test_empty_jsonl(self):
        assert ReportGenerator.render([], "jsonl") == ""

    def test_invalid_format(self):
        with pytest.raises(ValidationError):
            ReportGenerator.render([], "xml")

    @pytest.mark.parametrize("output_format", ["csv", "jsonl"])
    def test_strip_timing(self, output_format):
        fast = ReportGenerator.render([make_row(12, millis=1)], output_format)
        slow = ReportGenerator.render([make_row(12, millis=900)], output_format)
        assert fast != slow
        assert (ReportGenerator.strip_timing(fast, output_format)
                == ReportGenerator.strip_timing(slow, output_format))


class TestVerificationReport:
    """検証レポートのテスト"""

    def test_record(self):
        report = VerificationReport("core")
        report.record(True)
        report.record(False, "first")
        report.record(False, "second")
        assert (report.cases, report.passed, report.failed) == (3, 1, 2)
        assert report.first_failure == "first"
        assert not report.ok
        assert report.summary_line() == "suite=core cases=3 passed=1 failed=2"

    def test_merge(self):
        total = VerificationReport("all")
        core = VerificationReport("core")
        core.record(True)
        constructions = VerificationReport("constructions")
        constructions.record(False, "bad set")
        total.merge(core)
        total.merge(constructions)
        assert total.cases == 2 and total.failed == 1
        assert total.first_failure == "[constructions] bad set"

    def test_render_verification(self):
        report = VerificationReport("formulas")
        report.record(False, "W(3,10)")
        report.note("audit")
        text = ReportGenerator.render_verification([report])
        assert text.splitlines() == [
            "suite=formulas cases=1 passed=0 failed=1",
            "  note: audit",
            "  first_failure: W(3,10)",
        ]
