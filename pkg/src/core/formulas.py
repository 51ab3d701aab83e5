"""
Knödel支配数検証システム - 支配数の閉形式と臨界性の判定式

Δ = 3, 4 の W(Δ, n) について支配数・γ-critical・γ-stable を n の算術だけで与える。
"""

from dataclasses import dataclass
from typing import Optional

from .solver import Verdict
from ..utils.utils import ValidationUtils, ValidationError


@dataclass(frozen=True)
class FormulaDomain:
    """閉形式が適用できる範囲"""
    delta: int
    min_n: int

    def check(self, n: int) -> int:
        ValidationUtils.require_int("n", n)
        if n % 2 != 0:
            raise ValidationError(f"W({self.delta},n) の公式は偶数 n のみ対象です: n={n}")
        if n < self.min_n:
            raise ValidationError(f"W({self.delta},n) の公式は n ≥ {self.min_n} が必要です: n={n}")
        return n

    def contains(self, n: int) -> bool:
        return isinstance(n, int) and n % 2 == 0 and n >= self.min_n


W3_DOMAIN = FormulaDomain(delta=3, min_n=8)
W4_DOMAIN = FormulaDomain(delta=4, min_n=16)
DOMAINS = {3: W3_DOMAIN, 4: W4_DOMAIN}

# 剰余規則より先に評価する例外値
W4_EXCEPTIONS = {16: 2, 18: 2, 28: 3, 36: 2}


def gamma_w3_formula(n: int) -> int:
    """γ(W(3,n)) = 2⌊n/8⌋ + {0, 1, 2, 2}（n mod 8 = 0, 2, 4, 6）"""
    W3_DOMAIN.check(n)
    correction = {0: 0, 2: 1, 4: 2, 6: 2}[n % 8]
    return 2 * (n // 8) + correction


def gamma_w4_formula(n: int) -> int:
    """γ(W(4,n)) = 2⌊n/10⌋ + c（n = 16, 18, 28, 36 は例外表）"""
    W4_DOMAIN.check(n)
    if n in W4_EXCEPTIONS:
        correction = W4_EXCEPTIONS[n]
    else:
        correction = {0: 0, 2: 2, 4: 2, 6: 3, 8: 4}[n % 10]
    return 2 * (n // 10) + correction


def w3_is_critical(n: int) -> bool:
    W3_DOMAIN.check(n)
    return n % 8 == 4


def w3_is_stable(n: int) -> bool:
    W3_DOMAIN.check(n)
    return n % 8 != 4


def w4_is_critical(n: int) -> bool:
    W4_DOMAIN.check(n)
    return (
        n == 26
        or (n >= 22 and n % 10 == 2)
        or (n >= 38 and n % 10 == 8)
    )


def w4_is_stable(n: int) -> bool:
    W4_DOMAIN.check(n)
    return (
        n in (18, 28)
        or n % 10 in (0, 4)
        or (n % 10 == 6 and n != 26)
    )


def theorem13_lower_bound(n: int, delta: int) -> int:
    """γ(G) ≥ ⌈n / (Δ+1)⌉"""
    ValidationUtils.require_int("n", n)
    ValidationUtils.require_int("delta", delta)
    if n < 1 or delta < 1:
        raise ValidationError(f"n ≥ 1 かつ delta ≥ 1 が必要です: n={n}, delta={delta}")
    return -(-n // (delta + 1))


def deletion_gamma_lower_bound(delta: int, n: int) -> int:
    """γ(G − w) ≥ ⌈(n − 1) / (Δ+1)⌉"""
    return theorem13_lower_bound(n - 1, delta)


def gamma_formula(delta: int, n: int) -> Optional[int]:
    """閉形式の支配数（対象外なら None）"""
    if delta == 3 and W3_DOMAIN.contains(n):
        return gamma_w3_formula(n)
    if delta == 4 and W4_DOMAIN.contains(n):
        return gamma_w4_formula(n)
    return None


def predicted_verdict(delta: int, n: int) -> Optional[Verdict]:
    """判定式による臨界性（対象外なら None）"""
    if delta == 3 and W3_DOMAIN.contains(n):
        return Verdict.CRITICAL if w3_is_critical(n) else Verdict.STABLE
    if delta == 4 and W4_DOMAIN.contains(n):
        if w4_is_critical(n):
            return Verdict.CRITICAL
        if w4_is_stable(n):
            return Verdict.STABLE
        return Verdict.MIXED
    return None
