"""
Knödel支配数検証システム - W − v_1 の明示的な支配集合

各構成はパラメータ t から生成し、n は t から導く（8t+4, 10t+2, 10t+8）。
集合は記述どおりに生成し、大きさの食い違いは修正せずに記録する。
"""

import logging
from dataclasses import dataclass
from typing import Optional

from .formulas import gamma_w3_formula, gamma_w4_formula
from .knodel import KnodelGraph, VertexId, VertexSet, deleted_view, knodel, u, v
from .solver import is_dominating
from ..utils.utils import ValidationUtils, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessAudit:
    """構成集合の監査結果"""
    dominates: bool
    actual_size: int
    claimed_size: int
    base_gamma: Optional[int]

    @property
    def size_matches(self) -> bool:
        return self.actual_size == self.claimed_size

    @property
    def certifies_critical(self) -> bool:
        """支配していて |D| = γ(G) − 1 なら臨界性の証拠になる"""
        return (self.dominates and self.base_gamma is not None
                and self.actual_size == self.base_gamma - 1)


@dataclass(frozen=True)
class ConstructionWitness:
    """W(Δ, n) − v_1 の支配集合の候補"""
    name: str
    delta: int
    target_n: int
    t: Optional[int]
    deleted_vertex: VertexId
    claimed_size: int
    set: VertexSet

    @property
    def actual_size(self) -> int:
        return len(self.set)

    @property
    def size_mismatch(self) -> bool:
        return self.actual_size != self.claimed_size

    def graph(self) -> KnodelGraph:
        return knodel(self.delta, self.target_n)

    def audit(self, base_gamma: Optional[int] = None) -> WitnessAudit:
        """支配性と大きさを検査（base_gamma 未指定なら閉形式を使う）"""
        g = self.graph()
        view = deleted_view(g, self.deleted_vertex)
        if base_gamma is None:
            base_gamma = _formula_gamma(self.delta, self.target_n)
        result = WitnessAudit(
            dominates=is_dominating(view, self.set),
            actual_size=self.actual_size,
            claimed_size=self.claimed_size,
            base_gamma=base_gamma,
        )
        if not result.size_matches:
            logger.warning(
                f"{self.name} (t={self.t}): 集合の実サイズ {result.actual_size} が "
                f"主張サイズ {result.claimed_size} と一致しません"
            )
        return result


def _formula_gamma(delta: int, n: int) -> Optional[int]:
    if delta == 3:
        return gamma_w3_formula(n)
    if delta == 4:
        return gamma_w4_formula(n)
    return None


def _require_t(t: int, minimum: int) -> int:
    ValidationUtils.require_int("t", t)
    if t < minimum:
        raise ValidationError(f"t ≥ {minimum} が必要です: t={t}")
    return t


def construct_w3_critical_witness(t: int) -> ConstructionWitness:
    """n = 8t+4: {u_{4i−2}} ∪ {v_{4i}} (i=1..t) ∪ {v_{4t+2}}"""
    _require_t(t, 1)
    vertices = [u(4 * i - 2) for i in range(1, t + 1)]
    vertices += [v(4 * i) for i in range(1, t + 1)]
    vertices.append(v(4 * t + 2))
    return ConstructionWitness(
        name="w3-critical", delta=3, target_n=8 * t + 4, t=t,
        deleted_vertex=v(1), claimed_size=2 * t + 1, set=VertexSet.of(vertices),
    )


def construct_w4_26_witness() -> ConstructionWitness:
    """n = 26: {u_2, u_10} ∪ {v_6, v_7, v_8, v_12}"""
    return ConstructionWitness(
        name="w4-26", delta=4, target_n=26, t=None,
        deleted_vertex=v(1), claimed_size=6,
        set=VertexSet.of([u(2), u(10), v(6), v(7), v(8), v(12)]),
    )


def construct_w4_mod2_witness(t: int) -> ConstructionWitness:
    """n = 10t+2: {u_{5i−1}} (i<t) ∪ {u_{5t}} ∪ {v_{5i−2}} (i≤t) ∪ {v_{5t−1}}"""
    _require_t(t, 2)
    vertices = [u(5 * i - 1) for i in range(1, t)]
    vertices.append(u(5 * t))
    vertices += [v(5 * i - 2) for i in range(1, t + 1)]
    vertices.append(v(5 * t - 1))
    return ConstructionWitness(
        name="w4-mod2", delta=4, target_n=10 * t + 2, t=t,
        deleted_vertex=v(1), claimed_size=2 * t + 1, set=VertexSet.of(vertices),
    )


def construct_w4_mod8_witness(t: int) -> ConstructionWitness:
    """n = 10t+8: {u_{5i−1}} (i≤t) ∪ {u_{5t}} ∪ {v_{5i−2}} (i≤t+1) ∪ {v_6, v_{5t−1}}

    記述どおりの集合は 2t+4 要素だが主張は 2t+3。食い違いは audit で報告する。
    """
    _require_t(t, 3)
    vertices = [u(5 * i - 1) for i in range(1, t + 1)]
    vertices.append(u(5 * t))
    vertices += [v(5 * i - 2) for i in range(1, t + 2)]
    vertices += [v(6), v(5 * t - 1)]
    return ConstructionWitness(
        name="w4-mod8", delta=4, target_n=10 * t + 8, t=t,
        deleted_vertex=v(1), claimed_size=2 * t + 3, set=VertexSet.of(vertices),
    )
