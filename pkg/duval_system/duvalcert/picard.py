"""
Picard 格模組 - 九點（或十點）吹脹平面上的除子類與相交形式

除子類 (d; ν_1, ..., ν_n) 表示 dℓ - Σ ν_i E_i。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .elliptic import ECPoint, ec_linear_combination
from .errors import MalformedInputError
from .point_config import NUM_POINTS, PointConfig

logger = logging.getLogger(__name__)

VALID_LENGTHS = (9, 10)


@dataclass(frozen=True)
class DivisorClass:
    """
    除子類 dℓ - Σ ν_i E_i（不要求有效）

    屬性:
        degree (int): ℓ 的係數 d
        mults (Tuple[int, ...]): 重數向量 ν，長度為 9（S'）或 10（S）
    """
    degree: int
    mults: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(int(v) for v in self.mults))
        object.__setattr__(self, "degree", int(self.degree))
        if len(self.mults) not in VALID_LENGTHS:
            raise MalformedInputError(f"Divisor class needs 9 or 10 multiplicities, got {len(self.mults)}")

    @property
    def length(self) -> int:
        return len(self.mults)

    def _check_length(self, other: "DivisorClass") -> None:
        if self.length != other.length:
            raise MalformedInputError(f"Length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_length(other)
        return DivisorClass(self.degree + other.degree, tuple(a + b for a, b in zip(self.mults, other.mults)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.degree, tuple(-v for v in self.mults))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, n: int) -> "DivisorClass":
        return DivisorClass(n * self.degree, tuple(n * v for v in self.mults))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.degree == 0 and not any(self.mults)

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "mults": list(self.mults)}

    @classmethod
    def from_dict(cls, data: Dict) -> "DivisorClass":
        try:
            return cls(int(data["degree"]), tuple(int(v) for v in data["mults"]))
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInputError(f"Malformed divisor class: {e}") from e

    def __str__(self) -> str:
        parts = [f"{self.degree}l"]
        for index, v in enumerate(self.mults, start=1):
            if v:
                sign = "-" if v > 0 else "+"
                coef = "" if abs(v) == 1 else str(abs(v))
                parts.append(f"{sign} {coef}E{index}")
        return " ".join(parts)


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """
    相交數 d1·d2 = d_1 d_2 - Σ ν_1i ν_2i

    異常:
        MalformedInputError: 長度不同
    """
    d1._check_length(d2)
    return d1.degree * d2.degree - sum(a * b for a, b in zip(d1.mults, d2.mults))


def _check_n(n: int) -> None:
    if n not in VALID_LENGTHS:
        raise MalformedInputError(f"Number of blown-up points must be 9 or 10, got {n}")


def canonical_class(n: int) -> DivisorClass:
    """典範類 K = -3ℓ + Σ E_i，以 (-3; -1, ..., -1) 表示"""
    _check_n(n)
    return DivisorClass(-3, (-1,) * n)


def anticanonical_class(n: int) -> DivisorClass:
    """-K = 3ℓ - Σ E_i，即 J'（n = 9）或 J（n = 10）"""
    return -canonical_class(n)


def adjunction_genus(divisor: DivisorClass) -> int:
    """
    虧格公式 (D² + D·K)/2 + 1

    異常:
        MalformedInputError: D² + D·K 為奇數
    """
    numerator = intersect(divisor, divisor) + intersect(divisor, canonical_class(divisor.length))
    if numerator % 2:
        raise MalformedInputError(f"D^2 + D.K is odd for {divisor}")
    return numerator // 2 + 1


def duval_class(g: int) -> DivisorClass:
    """S 上的 Du Val 類 C = 3gℓ - gE_1 - ... - gE_8 - (g-1)E_9 - E_10"""
    if g < 1:
        raise MalformedInputError(f"Genus must be positive, got {g}")
    return DivisorClass(3 * g, (g,) * 8 + (g - 1, 1))


def duval_class_prime(g: int) -> DivisorClass:
    """S' 上的類 C' = 3gℓ - gE_1 - ... - gE_8 - (g-1)E_9"""
    if g < 1:
        raise MalformedInputError(f"Genus must be positive, got {g}")
    return DivisorClass(3 * g, (g,) * 8 + (g - 1,))


# Nagata 生成元的重數模式
_GENERATOR_DEGREE = {1: 1, 2: 2, 3: 3}
HALPHEN_GENERATOR = DivisorClass(3, (1,) * NUM_POINTS)


def pattern_mults(i: int, pattern: Tuple[int, ...]) -> Tuple[int, ...]:
    """
    生成元 𝔄_i 經置換後的重數向量

    參數:
        i (int): 1（三點子集）、2（六點子集）或 3（(二重點, 省略點)）
        pattern (Tuple[int, ...]): 從 0 開始的下標

    返回:
        Tuple[int, ...]: 長度 9 的重數
    """
    if i in (1, 2):
        mults = [0] * NUM_POINTS
        for index in pattern:
            mults[index] = 1
        return tuple(mults)
    if i == 3:
        double, omitted = pattern
        mults = [1] * NUM_POINTS
        mults[double] = 2
        mults[omitted] = 0
        return tuple(mults)
    raise MalformedInputError(f"Unknown Nagata generator index {i}")


def generator_patterns(i: int) -> List[Tuple[int, ...]]:
    """按字典序列出 𝔄_i 的不同重數模式（84、84、72 個）"""
    if i == 1:
        return list(itertools.combinations(range(NUM_POINTS), 3))
    if i == 2:
        return list(itertools.combinations(range(NUM_POINTS), 6))
    if i == 3:
        return list(itertools.permutations(range(NUM_POINTS), 2))
    raise MalformedInputError(f"Unknown Nagata generator index {i}")


def nagata_generator(i: int, pattern: Tuple[int, ...]) -> DivisorClass:
    return DivisorClass(_GENERATOR_DEGREE[i], pattern_mults(i, pattern))


@dataclass(frozen=True)
class NagataClass:
    """
    σ(n𝔅 + 𝔄_i)

    屬性:
        i (int): 生成元編號
        n (int): 𝔅 的倍數
        pattern (Tuple[int, ...]): 重數模式（從 0 開始的下標）
        cls (DivisorClass): 除子類
    """
    i: int
    n: int
    pattern: Tuple[int, ...]
    cls: DivisorClass

    @property
    def sort_key(self) -> Tuple:
        return (self.i, self.n, self.pattern)

    def describe(self) -> str:
        points = ",".join(str(p + 1) for p in self.pattern)
        if self.i == 3:
            return f"{self.n}B + A3(double={self.pattern[0] + 1}, omitted={self.pattern[1] + 1})"
        return f"{self.n}B + A{self.i}({points})"

    def to_dict(self) -> Dict:
        return {
            "generator": f"A{self.i}",
            "n": self.n,
            "pattern": [p + 1 for p in self.pattern],
            "class": self.cls.to_dict(),
            "description": self.describe(),
        }


def nagata_multiples(k: int, i: int) -> range:
    """0 ≤ n ≤ (k - i)/3；k < i 時為空"""
    return range(0, (k - i) // 3 + 1) if k >= i else range(0)


def iter_nagata_classes(k: int) -> Iterator[NagataClass]:
    """按 (i, n, 模式字典序) 的規範順序產生全部 Nagata 類"""
    if k < 1:
        raise MalformedInputError(f"k must be at least 1, got {k}")
    for i in (1, 2, 3):
        patterns = generator_patterns(i)
        for n in nagata_multiples(k, i):
            halphen_part = HALPHEN_GENERATOR * n
            for pattern in patterns:
                yield NagataClass(i, n, pattern, halphen_part + nagata_generator(i, pattern))


def nagata_classes(k: int) -> List[NagataClass]:
    """
    全部 Nagata 類 σ(n𝔅 + 𝔄_i)，i ∈ {1,2,3}，0 ≤ n ≤ (k-i)/3

    參數:
        k (int): 度數上界，k ≥ 1

    返回:
        List[NagataClass]: 規範順序的類列表
    """
    classes = list(iter_nagata_classes(k))
    logger.debug("k=%d: %d Nagata classes", k, len(classes))
    return classes


def restrict_to_anticanonical(divisor: DivisorClass, cfg: PointConfig) -> ECPoint:
    """
    D 在 J' 上的限制所對應的群元素 Σ ν_i p_i

    共線三點之和為零，所以 ℓ 的部分貢獻單位元；限制平凡當且僅當結果為無窮遠點。

    參數:
        divisor (DivisorClass): 長度 9 的類，且 D·(-K) = 0
        cfg (PointConfig): 點配置

    返回:
        ECPoint: Σ ν_i p_i

    異常:
        MalformedInputError: 長度不是 9，或在 J' 上次數非零
    """
    if divisor.length != NUM_POINTS:
        raise MalformedInputError(f"Restriction needs a class on the nine-point blow-up, got length {divisor.length}")
    degree_on_cubic = intersect(divisor, anticanonical_class(NUM_POINTS))
    if degree_on_cubic != 0:
        raise MalformedInputError(f"{divisor} has degree {degree_on_cubic} on the anticanonical cubic")
    return ec_linear_combination(cfg.curve, divisor.mults, cfg.points)


def lattice_prediction(divisor: DivisorClass, cfg: PointConfig) -> Tuple[int, int]:
    """用格座標預測 Σ ν_i p_i 的座標 Σ ν_i (m_i, n_i)"""
    if cfg.lattice is None:
        raise MalformedInputError("Configuration carries no lattice coordinates")
    m = sum(v * c[0] for v, c in zip(divisor.mults, cfg.lattice.coords))
    n = sum(v * c[1] for v, c in zip(divisor.mults, cfg.lattice.coords))
    return (m, n)
