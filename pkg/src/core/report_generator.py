"""
Knödel支配数検証システム - レポート生成モジュール
"""

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import pandas as pd

from ..utils.utils import DataUtils, ValidationError

# 列順は固定（時間列は決定性の対象外なので末尾）
SWEEP_COLUMNS = [
    "delta", "n", "gamma_solver", "gamma_formula", "gamma_deleted",
    "verdict_solver", "verdict_theorem", "agree_gamma", "agree_verdict",
    "nodes", "millis",
]
TIMING_COLUMNS = ("millis",)
OUTPUT_FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class SweepRow:
    """スイープの1行"""
    delta: int
    n: int
    gamma_solver: int
    gamma_formula: Optional[int]
    gamma_deleted: int
    verdict_solver: str
    verdict_theorem: Optional[str]
    nodes: int
    millis: int

    @property
    def agree_gamma(self) -> Optional[bool]:
        if self.gamma_formula is None:
            return None
        return self.gamma_solver == self.gamma_formula

    @property
    def agree_verdict(self) -> Optional[bool]:
        if self.verdict_theorem is None:
            return None
        return self.verdict_solver == self.verdict_theorem

    @property
    def has_disagreement(self) -> bool:
        return self.agree_gamma is False or self.agree_verdict is False

    def to_record(self) -> Dict:
        return {
            "delta": self.delta,
            "n": self.n,
            "gamma_solver": self.gamma_solver,
            "gamma_formula": self.gamma_formula,
            "gamma_deleted": self.gamma_deleted,
            "verdict_solver": self.verdict_solver,
            "verdict_theorem": self.verdict_theorem,
            "agree_gamma": self.agree_gamma,
            "agree_verdict": self.agree_verdict,
            "nodes": self.nodes,
            "millis": self.millis,
        }

    def to_cells(self) -> Dict[str, str]:
        cells = {}
        for key, value in self.to_record().items():
            if isinstance(value, bool):
                cells[key] = DataUtils.format_bool(value)
            else:
                cells[key] = DataUtils.format_optional(value)
        return cells


@dataclass
class VerificationReport:
    """検証スイートの集計"""
    suite: str
    cases: int = 0
    passed: int = 0
    failed: int = 0
    first_failure: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    def record(self, ok: bool, detail: str = "") -> bool:
        """1ケースの結果を記録"""
        self.cases += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = detail
        return ok

    def note(self, message: str):
        self.notes.append(message)

    def merge(self, other: "VerificationReport"):
        self.cases += other.cases
        self.passed += other.passed
        self.failed += other.failed
        if self.first_failure is None and other.first_failure is not None:
            self.first_failure = f"[{other.suite}] {other.first_failure}"
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary_line(self) -> str:
        return (f"suite={self.suite} cases={self.cases} "
                f"passed={self.passed} failed={self.failed}")


class ReportGenerator:
    """スイープ・検証結果の出力"""

    @staticmethod
    def sweep_frame(rows: Iterable[SweepRow]) -> pd.DataFrame:
        """n の昇順に並べた表（セルは文字列）"""
        ordered = sorted(rows, key=lambda row: (row.delta, row.n))
        return pd.DataFrame([row.to_cells() for row in ordered], columns=SWEEP_COLUMNS, dtype=str)

    @staticmethod
    def render_csv(rows: Iterable[SweepRow]) -> str:
        frame = ReportGenerator.sweep_frame(rows)
        return frame.to_csv(index=False, lineterminator="\n")

    @staticmethod
    def render_jsonl(rows: Iterable[SweepRow]) -> str:
        ordered = sorted(rows, key=lambda row: (row.delta, row.n))
        return "".join(json.dumps(row.to_record(), ensure_ascii=False) + "\n" for row in ordered)

    @staticmethod
    def render(rows: Iterable[SweepRow], output_format: str) -> str:
        if output_format == "csv":
            return ReportGenerator.render_csv(rows)
        if output_format == "jsonl":
            return ReportGenerator.render_jsonl(rows)
        raise ValidationError(f"出力形式が不正です: {output_format!r} (選択肢: {OUTPUT_FORMATS})")

    @staticmethod
    def strip_timing(text: str, output_format: str) -> str:
        """時間列を除いた比較用テキスト"""
        if output_format == "csv":
            return "\n".join(line.rsplit(",", 1)[0] for line in text.splitlines()) + "\n"
        records = [json.loads(line) for line in text.splitlines() if line]
        for record in records:
            for column in TIMING_COLUMNS:
                record.pop(column, None)
        return "".join(json.dumps(record, ensure_ascii=False) + "\n" for record in records)

    @staticmethod
    def render_verification(reports: List[VerificationReport]) -> str:
        """スイートごとの要約行と最初の失敗"""
        lines = []
        for report in reports:
            lines.append(report.summary_line())
            for note in report.notes:
                lines.append(f"  note: {note}")
            if report.first_failure:
                lines.append(f"  first_failure: {report.first_failure}")
        return "\n".join(lines) + "\n"
