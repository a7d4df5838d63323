"""
橢圓曲線模組 - 短 Weierstrass 曲線上的精確群律、點計數與撓點證書

曲線 y^2 = x^3 + ax + b 以無窮遠點 p_inf = [0,1,0] 為單位元。
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import BadReductionError, CapExceededError, MalformedInputError, OffCurveError
from .exact import format_rational, parse_rational, reduce_mod

logger = logging.getLogger(__name__)

MAX_COUNT_PRIME = 1000


@dataclass(frozen=True)
class EllipticCurve:
    """
    短 Weierstrass 曲線 y^2 = x^3 + ax + b

    屬性:
        a (Fraction): 一次項係數
        b (Fraction): 常數項
    """
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rational(self.a))
        object.__setattr__(self, "b", parse_rational(self.b))
        if self.discriminant == 0:
            raise MalformedInputError(f"Singular curve {self}: discriminant is zero")

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a ** 3 + 27 * self.b ** 2)

    def rhs(self, x: Fraction) -> Fraction:
        return x ** 3 + self.a * x + self.b

    def contains(self, x, y) -> bool:
        return y * y == self.rhs(x)

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_good_prime(self, prime: int) -> bool:
        """
        判斷 p 是否為好約化質數：p 不整除係數分母，也不整除判別式
        """
        if self.a.denominator % prime == 0 or self.b.denominator % prime == 0:
            return False
        disc = self.discriminant
        return disc.numerator % prime != 0

    def equation(self) -> str:
        return f"y^2 = x^3 + ({format_rational(self.a)})x + ({format_rational(self.b)})"

    def __str__(self) -> str:
        return self.equation()

    def to_dict(self) -> Dict[str, str]:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "EllipticCurve":
        try:
            return cls(parse_rational(data["a"]), parse_rational(data["b"]))
        except (KeyError, TypeError) as e:
            raise MalformedInputError(f"Malformed curve: {e}") from e


@dataclass(frozen=True)
class ECPoint:
    """
    曲線上的點：無窮遠點（x = y = None）或仿射點 (x, y)

    屬性:
        x (Optional[Fraction]): x 座標
        y (Optional[Fraction]): y 座標
    """
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise MalformedInputError("A point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", parse_rational(self.x))
            object.__setattr__(self, "y", parse_rational(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def is_integral(self) -> bool:
        return not self.is_infinity and self.x.denominator == 1 and self.y.denominator == 1

    def to_projective(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Weierstrass 嵌入下的射影座標，無窮遠點為 (0,1,0)"""
        if self.is_infinity:
            return (Fraction(0), Fraction(1), Fraction(0))
        return (self.x, self.y, Fraction(1))

    def to_dict(self):
        if self.is_infinity:
            return "inf"
        return [format_rational(self.x), format_rational(self.y)]

    @classmethod
    def from_dict(cls, data) -> "ECPoint":
        if isinstance(data, str):
            return cls.parse(data)
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return cls(parse_rational(data[0]), parse_rational(data[1]))
        raise MalformedInputError(f"Malformed point: {data!r}")

    @classmethod
    def parse(cls, text: str) -> "ECPoint":
        """解析 "inf" 或 "x,y"（可帶括號）"""
        cleaned = text.strip().strip("()[]")
        if cleaned.lower() in ("inf", "infinity", "o"):
            return INFINITY
        parts = cleaned.split(",")
        if len(parts) != 2:
            raise MalformedInputError(f"Malformed point: {text!r}; expected 'x,y' or 'inf'")
        return cls(parse_rational(parts[0]), parse_rational(parts[1]))

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


INFINITY = ECPoint()


def require_on_curve(curve: EllipticCurve, point: ECPoint) -> ECPoint:
    """
    檢查點在曲線上

    異常:
        OffCurveError: 附帶被違反的方程
    """
    if not point.is_infinity and not curve.contains(point.x, point.y):
        lhs = point.y * point.y
        rhs = curve.rhs(point.x)
        raise OffCurveError(
            f"Point {point} is not on {curve}",
            equation=f"{curve.equation()}: y^2 = {format_rational(lhs)} != {format_rational(rhs)}",
        )
    return point


def point_add(curve: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """弦切法加法，不檢查輸入是否在曲線上（內部熱路徑用）"""
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p

    if p.x == q.x:
        if p.y != q.y or p.y == 0:
            return INFINITY
        slope = (3 * p.x * p.x + curve.a) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)

    x3 = slope * slope - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return ECPoint(x3, y3)


def point_neg(point: ECPoint) -> ECPoint:
    if point.is_infinity:
        return point
    return ECPoint(point.x, -point.y)


def point_mul(curve: EllipticCurve, n: int, point: ECPoint) -> ECPoint:
    """二進制倍加，不檢查輸入"""
    if n < 0:
        return point_mul(curve, -n, point_neg(point))
    result = INFINITY
    addend = point
    while n:
        if n & 1:
            result = point_add(curve, result, addend)
        n >>= 1
        if n:
            addend = point_add(curve, addend, addend)
    return result


def ec_add(curve: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """
    弦切法加法

    參數:
        curve (EllipticCurve): 曲線
        p (ECPoint): 第一個點
        q (ECPoint): 第二個點

    返回:
        ECPoint: p + q

    異常:
        OffCurveError: 輸入點不在曲線上
    """
    require_on_curve(curve, p)
    require_on_curve(curve, q)
    return point_add(curve, p, q)


def ec_neg(curve: EllipticCurve, point: ECPoint) -> ECPoint:
    """逆元 (x, -y)；無窮遠點映到自身"""
    require_on_curve(curve, point)
    return point_neg(point)


def ec_sub(curve: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    require_on_curve(curve, p)
    require_on_curve(curve, q)
    return point_add(curve, p, point_neg(q))


def ec_scalar_mul(curve: EllipticCurve, n: int, point: ECPoint) -> ECPoint:
    """
    倍點 n·P（二進制倍加；n 為負時先取逆元）

    參數:
        curve (EllipticCurve): 曲線
        n (int): 任意整數
        point (ECPoint): 點

    返回:
        ECPoint: n·P
    """
    require_on_curve(curve, point)
    return point_mul(curve, int(n), point)


def ec_linear_combination(curve: EllipticCurve, coefficients: Sequence[int], points: Sequence[ECPoint]) -> ECPoint:
    """Σ n_i·P_i"""
    if len(coefficients) != len(points):
        raise MalformedInputError("Coefficient and point counts differ")
    total = INFINITY
    for n, point in zip(coefficients, points):
        require_on_curve(curve, point)
        if n:
            total = point_add(curve, total, point_mul(curve, int(n), point))
    return total


def _reduced_coefficients(curve: EllipticCurve, prime: int) -> Tuple[int, int]:
    if not curve.is_good_prime(prime):
        raise BadReductionError(f"{curve} has bad reduction at {prime}", prime, "curve")
    return reduce_mod(curve.a, prime, "a"), reduce_mod(curve.b, prime, "b")


def count_points_fp(curve: EllipticCurve, prime: int, max_prime: int = MAX_COUNT_PRIME) -> int:
    """
    |E(F_p)|（含無窮遠點），逐個 x 枚舉並用平方剩餘表判斷

    參數:
        curve (EllipticCurve): 曲線
        prime (int): 好約化質數
        max_prime (int): 支持的最大質數

    返回:
        int: 點數

    異常:
        BadReductionError: 壞約化
        CapExceededError: 質數超出支持範圍
    """
    if not sympy.isprime(prime):
        raise MalformedInputError(f"{prime} is not a prime")
    if prime > max_prime:
        raise CapExceededError(f"Point counting supports primes up to {max_prime}, got {prime}")
    a, b = _reduced_coefficients(curve, prime)

    xs = np.arange(prime, dtype=np.int64)
    values = (xs * xs % prime * xs + a * xs + b) % prime
    is_square = np.zeros(prime, dtype=bool)
    is_square[(xs * xs) % prime] = True

    zero_count = int(np.count_nonzero(values == 0))
    residue_count = int(np.count_nonzero(is_square[values] & (values != 0)))
    return 1 + zero_count + 2 * residue_count


def reduce_point(point: ECPoint, prime: int) -> Optional[Tuple[int, int]]:
    """點的模 p 約化；無窮遠點返回 None"""
    if point.is_infinity:
        return None
    return (reduce_mod(point.x, prime, "x"), reduce_mod(point.y, prime, "y"))


def ec_add_mod_p(curve: EllipticCurve, p: Optional[Tuple[int, int]], q: Optional[Tuple[int, int]], prime: int) -> Optional[Tuple[int, int]]:
    """E(F_p) 中的加法，None 表示無窮遠點"""
    a, _ = _reduced_coefficients(curve, prime)
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if (y1 + y2) % prime == 0:
            return None
        slope = (3 * x1 * x1 + a) * pow(2 * y1, -1, prime) % prime
    else:
        slope = (y2 - y1) * pow(x2 - x1, -1, prime) % prime
    x3 = (slope * slope - x1 - x2) % prime
    y3 = (slope * (x1 - x3) - y1) % prime
    return (x3, y3)


@dataclass(frozen=True)
class TorsionCertificate:
    """
    撓子群平凡性證書：E(Q)_tors 單射到每個好約化 E(F_p)

    屬性:
        primes (Tuple[int, ...]): 使用的質數
        orders (Tuple[int, ...]): 對應的 |E(F_p)|
        gcd (int): 各階的最大公因數
    """
    primes: Tuple[int, ...]
    orders: Tuple[int, ...]
    gcd: int

    @property
    def trivial(self) -> bool:
        return self.gcd == 1

    @property
    def conclusive(self) -> bool:
        return self.trivial

    def to_dict(self) -> Dict:
        return {
            "primes": list(self.primes),
            "orders": list(self.orders),
            "gcd": self.gcd,
            "trivial": self.trivial,
            "status": "trivial" if self.trivial else "inconclusive",
        }


def torsion_is_trivial(curve: EllipticCurve, primes: Sequence[int]) -> TorsionCertificate:
    """
    用若干好約化質數證明撓子群平凡

    參數:
        curve (EllipticCurve): 曲線
        primes (Sequence[int]): 質數列表

    返回:
        TorsionCertificate: gcd 為 1 時撓子群平凡，否則結論不定

    異常:
        BadReductionError: 某質數是壞約化
    """
    if not primes:
        raise MalformedInputError("At least one prime is required")
    orders = tuple(count_points_fp(curve, p) for p in primes)
    gcd = math.gcd(*orders)
    certificate = TorsionCertificate(tuple(primes), orders, gcd)
    if not certificate.trivial:
        logger.warning("Torsion inconclusive over primes %s: gcd %d", list(primes), gcd)
    return certificate


@dataclass(frozen=True)
class TwoTorsionWitness:
    """
    E(Q)[2] 檢查結果

    屬性:
        trivial (bool): x^3 + ax + b 沒有有理根
        root (Optional[Fraction]): 找到的有理根
        candidates (int): 檢查的候選根數量
    """
    trivial: bool
    root: Optional[Fraction] = None
    candidates: int = 0

    def __bool__(self) -> bool:
        return self.trivial

    def to_dict(self) -> Dict:
        return {
            "trivial": self.trivial,
            "root": None if self.root is None else format_rational(self.root),
            "candidates": self.candidates,
        }


def two_torsion_is_trivial(curve: EllipticCurve) -> TwoTorsionWitness:
    """
    有理根定理枚舉 x^3 + ax + b 的有理根

    清除分母後，根 p/q 滿足 p | 常數項、q | 首項係數。
    """
    scale = math.lcm(curve.a.denominator, curve.b.denominator)
    c3 = scale
    c0 = int(curve.b * scale)

    if c0 == 0:
        return TwoTorsionWitness(False, Fraction(0), 1)

    candidates = sorted(
        {Fraction(sign * p, q) for p in sympy.divisors(abs(c0)) for q in sympy.divisors(c3) for sign in (1, -1)},
        key=lambda r: (abs(r), r < 0),
    )
    for root in candidates:
        if curve.rhs(root) == 0:
            return TwoTorsionWitness(False, root, len(candidates))
    return TwoTorsionWitness(True, None, len(candidates))


def duplication_x(curve: EllipticCurve, x: Fraction) -> Optional[Fraction]:
    """
    x(2P) = (x^4 - 2ax^2 - 8bx + a^2) / (4(x^3 + ax + b))，由切線構造推出

    2P 為無窮遠點時返回 None。
    """
    x = parse_rational(x)
    denominator = 4 * curve.rhs(x)
    if denominator == 0:
        return None
    return (x ** 4 - 2 * curve.a * x ** 2 - 8 * curve.b * x + curve.a ** 2) / denominator


def integral_halving_witnesses(curve: EllipticCurve, target_x: int) -> List[int]:
    """
    所有整數 t，使 x 座標為 t 的點加倍後 x 座標為 target_x

    即四次方程 t^4 - 2at^2 - 8bt + a^2 = 4c(t^3 + at + b)（c = target_x）的整數根，
    用有理根定理枚舉常數項的因數；常數項為零時先提出因子 t。

    參數:
        curve (EllipticCurve): 整係數曲線
        target_x (int): 目標 x 座標

    返回:
        List[int]: 升序排列的整數根（空列表是合法答案）

    異常:
        MalformedInputError: 曲線係數或 target_x 不是整數
    """
    target = parse_rational(target_x)
    if not curve.is_integral() or target.denominator != 1:
        raise MalformedInputError("Integral halving needs an integral curve and integral target x")
    a, b, c = int(curve.a), int(curve.b), int(target)

    # t^4 - 4c t^3 - 2a t^2 - (8b + 4ca) t + (a^2 - 4cb)，由高到低
    coefficients = [1, -4 * c, -2 * a, -(8 * b + 4 * c * a), a * a - 4 * c * b]

    def quartic(t: int) -> int:
        value = 0
        for coef in coefficients:
            value = value * t + coef
        return value

    candidates = set()
    trimmed = list(coefficients)
    while trimmed and trimmed[-1] == 0:
        candidates.add(0)
        trimmed.pop()
    constant = trimmed[-1]
    for d in sympy.divisors(abs(constant)):
        candidates.update((d, -d))

    roots = sorted(t for t in candidates if quartic(t) == 0 and t ** 3 + a * t + b != 0)
    logger.debug("halving x=%d: %d candidates, roots %s", c, len(candidates), roots)
    return roots


@dataclass(frozen=True)
class IndependenceCertificate:
    """
    兩點在 E(Q) 中線性無關的證書

    屬性:
        passed (bool): 是否通過
        torsion (TorsionCertificate): 撓子群證書
        two_torsion (TwoTorsionWitness): 2-撓點證書
        halving (Tuple): 每個被檢查點的 (標籤, x, 整數二分見證)
        difference (ECPoint): P - Q
        reasons (Tuple[str, ...]): 失敗原因
    """
    passed: bool
    torsion: TorsionCertificate
    two_torsion: TwoTorsionWitness
    halving: Tuple[Tuple[str, Fraction, Tuple[int, ...]], ...]
    difference: ECPoint
    reasons: Tuple[str, ...] = ()
    relies_on: str = (
        "the listed integral points and their negatives exhaust the nonzero integral points "
        "of the curve (cited, not proved here)"
    )

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "torsion": self.torsion.to_dict(),
            "two_torsion": self.two_torsion.to_dict(),
            "halving": [
                {"label": label, "x": format_rational(x), "witnesses": list(witnesses)}
                for label, x, witnesses in self.halving
            ],
            "difference": self.difference.to_dict(),
            "reasons": list(self.reasons),
            "relies_on": self.relies_on,
        }


def independence_certificate(curve: EllipticCurve, p: ECPoint, q: ECPoint, primes: Sequence[int] = (5, 7)) -> IndependenceCertificate:
    """
    P 與 Q 無關的證書

    由於撓子群與 2-撓點都平凡，只需證明 P、Q、P-Q 都不在 2E(Z) 中，
    即 n·P + m·Q（n、m 至少一個為奇數）不可能為零。

    參數:
        curve (EllipticCurve): 整係數曲線
        p (ECPoint): 第一個點（整數座標）
        q (ECPoint): 第二個點（整數座標）
        primes (Sequence[int]): 撓點證書用的質數

    返回:
        IndependenceCertificate: 記錄每一項子檢查

    異常:
        MalformedInputError: 非整數座標
    """
    for label, point in (("P", p), ("Q", q)):
        require_on_curve(curve, point)
        if not point.is_integral():
            raise MalformedInputError(f"{label} = {point} must have integral coordinates")

    torsion = torsion_is_trivial(curve, primes)
    two_torsion = two_torsion_is_trivial(curve)
    difference = point_add(curve, p, point_neg(q))

    reasons = []
    if not torsion.trivial:
        reasons.append(f"torsion inconclusive (gcd {torsion.gcd})")
    if not two_torsion.trivial:
        reasons.append(f"rational 2-torsion at x = {format_rational(two_torsion.root)}")

    checked = [("P", p), ("Q", q)]
    if difference.is_infinity:
        reasons.append("P - Q is the identity")
    elif not difference.is_integral():
        reasons.append(f"P - Q = {difference} is not integral")
    else:
        checked.append(("P-Q", difference))

    halving = []
    for label, point in checked:
        witnesses = tuple(integral_halving_witnesses(curve, int(point.x)))
        halving.append((label, point.x, witnesses))
        if witnesses:
            reasons.append(f"{label} has halving witnesses {list(witnesses)}")

    certificate = IndependenceCertificate(
        passed=not reasons,
        torsion=torsion,
        two_torsion=two_torsion,
        halving=tuple(halving),
        difference=difference,
        reasons=tuple(reasons),
    )
    logger.info("Independence of %s and %s: %s", p, q, "pass" if certificate.passed else "fail")
    return certificate
