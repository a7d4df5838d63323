"""
模空間模組 - Brill-Noether 數、Du Val 束的相交數與 Brill-Noether 除子的拉回
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import MalformedInputError
from .exact import format_rational

logger = logging.getLogger(__name__)

PENCIL_ASSUMPTIONS = (
    "delta_i = 0 for i >= 2: a general Du Val pencil meets no higher boundary divisor",
    "the positive constant of the Brill-Noether divisor class is factored out",
)


def brill_noether_number(g: int, r: int, d: int) -> int:
    """
    ρ(g, r, d) = g - (r+1)(g-d+r)

    異常:
        MalformedInputError: g < 0、r < 1 或 d < 1
    """
    if g < 0 or r < 1 or d < 1:
        raise MalformedInputError(f"Need g >= 0, r >= 1, d >= 1; got g={g}, r={r}, d={d}")
    return g - (r + 1) * (g - d + r)


@dataclass(frozen=True)
class PencilInvariants:
    """
    Du Val Lefschetz 束與 Hodge 類、邊界類的相交數

    X 是 S 在束的 2g-2 個基點處的吹脹，纖維化 X → P^1 給出 M_g 中的曲線。

    屬性:
        g (int): 虧格
        lambda_ (int): j*(λ)
        delta0 (int): j*(δ_0)
        delta1 (int): j*(δ_1)
        delta_rest (int): Σ_{i≥2} j*(δ_i)
        chi (int): χ(X, O_X)
        c2 (int): 拓撲 Euler 數
        ksq (int): K_X^2
        blown_up (int): X 相對 P^2 吹脹的點數 2g+8
        base_points (int): 束的基點數 2g-2
    """
    g: int
    lambda_: int
    delta0: int
    delta1: int
    delta_rest: int
    chi: int
    c2: int
    ksq: int
    blown_up: int
    base_points: int
    assumptions: Tuple[str, ...] = PENCIL_ASSUMPTIONS

    @property
    def total_delta(self) -> int:
        return self.delta0 + self.delta1 + self.delta_rest

    def check_identities(self) -> bool:
        """λ = χ + g - 1 且 Σδ = c_2 + 4(g - 1)"""
        return self.lambda_ == self.chi + self.g - 1 and self.total_delta == self.c2 + 4 * (self.g - 1)

    def delta(self, i: int) -> int:
        if i == 0:
            return self.delta0
        if i == 1:
            return self.delta1
        return 0

    def to_dict(self) -> Dict:
        return {
            "g": self.g,
            "lambda": self.lambda_,
            "delta0": self.delta0,
            "delta1": self.delta1,
            "delta_rest": self.delta_rest,
            "chi": self.chi,
            "c2": self.c2,
            "Ksq": self.ksq,
            "blown_up": self.blown_up,
            "base_points": self.base_points,
            "identities_hold": self.check_identities(),
            "assumptions": list(self.assumptions),
        }


def pencil_invariants(g: int) -> PencilInvariants:
    """
    Du Val 束的不變量

    χ = 1，K_X^2 = 9 - (2g+8)，c_2 = 12χ - K_X^2，λ = χ + g - 1，
    Σδ = c_2 + 4(g-1)；恰有一條 D + J 型纖維，其餘奇異纖維都是不可約節點曲線。

    參數:
        g (int): 虧格，g ≥ 2

    返回:
        PencilInvariants: 不變量

    異常:
        MalformedInputError: g < 2
    """
    if g < 2:
        raise MalformedInputError(f"Pencil invariants need g >= 2, got {g}")
    chi = 1
    blown_up = 2 * g + 8
    ksq = 9 - blown_up
    c2 = 12 * chi - ksq
    lambda_ = chi + g - 1
    total_delta = c2 + 4 * (g - 1)
    delta1 = 1
    delta_rest = 0
    return PencilInvariants(
        g=g,
        lambda_=lambda_,
        delta0=total_delta - delta1 - delta_rest,
        delta1=delta1,
        delta_rest=delta_rest,
        chi=chi,
        c2=c2,
        ksq=ksq,
        blown_up=blown_up,
        base_points=2 * g - 2,
    )


def bn_divisor_pullback(g: int, r: int, d: int) -> Fraction:
    """
    Brill-Noether 除子類 (g+3)λ - (g+1)/6 δ_0 - Σ i(g-i) δ_i 與束的配對

    參數:
        g (int): 虧格
        r (int): 維數
        d (int): 次數

    返回:
        Fraction: 配對值（已去掉正常數因子）

    異常:
        MalformedInputError: ρ(g, r, d) ≠ -1
    """
    rho = brill_noether_number(g, r, d)
    if rho != -1:
        raise MalformedInputError(f"rho({g}, {r}, {d}) = {rho}; the Brill-Noether divisor needs rho = -1")
    inv = pencil_invariants(g)
    bracket = (g + 3) * Fraction(inv.lambda_) - Fraction(g + 1, 6) * inv.delta0
    for i in range(1, g // 2 + 1):
        bracket -= i * (g - i) * inv.delta(i)
    return bracket


@dataclass(frozen=True)
class BNDivisorData:
    """
    ρ = -1 的 Brill-Noether 除子資料

    屬性:
        g, r, d (int): 參數
        rho (int): ρ(g, r, d)
        pullback_bracket (Fraction): 與 Du Val 束的配對
        consequence (str): 相交數為零的幾何結論
    """
    g: int
    r: int
    d: int
    rho: int
    pullback_bracket: Fraction
    consequence: str

    def to_dict(self) -> Dict:
        return {
            "g": self.g,
            "r": self.r,
            "d": self.d,
            "rho": self.rho,
            "pullback_bracket": format_rational(self.pullback_bracket),
            "consequence": self.consequence,
        }


def lefschetz_dichotomy(g: int, r: int, d: int) -> str:
    """配對為零時，束要麼整條落在除子中，要麼與之不交"""
    value = bn_divisor_pullback(g, r, d)
    if value == 0:
        return "pencil has degree 0 on the divisor: it lies inside it or misses it"
    return f"pencil meets the divisor in degree {format_rational(value)}"


def bn_divisor_data(g: int, r: int, d: int) -> BNDivisorData:
    bracket = bn_divisor_pullback(g, r, d)
    return BNDivisorData(g, r, d, brill_noether_number(g, r, d), bracket, lefschetz_dichotomy(g, r, d))


def brill_noether_divisor_triples(g: int) -> List[Tuple[int, int]]:
    """
    所有 r ≥ 1、h^1 = g-d+r ≥ 2 且 ρ = -1 的 (r, d)

    條件等價於 (r+1)(g-d+r) = g+1，所以非空當且僅當 g+1 是合數。
    h^1 = 1 的 (g, 2g-1) 雖然 ρ = -1 但不列入：次數 2g-1 的除子 h^1 = 0，
    g^g_{2g-1} 在任何曲線上都不存在，不定義除子。bn_divisor_pullback 仍接受它。
    """
    if g < 2:
        raise MalformedInputError(f"Genus must be at least 2, got {g}")
    triples = []
    for r in range(1, g + 1):
        if (g + 1) % (r + 1):
            continue
        s = (g + 1) // (r + 1)
        if s < 2:
            continue
        d = g + r - s
        if d >= 1:
            triples.append((r, d))
    return triples


def duval_locus_dimension(g: int) -> int:
    """Du Val 曲線軌跡的維數 min(g + 10, 3g - 3)"""
    if g < 2:
        raise MalformedInputError(f"Genus must be at least 2, got {g}")
    return min(g + 10, 3 * g - 3)
