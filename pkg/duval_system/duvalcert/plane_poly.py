"""
齊次三元多項式模組 - 平面曲線的精確表示
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import sympy

from .errors import MalformedInputError
from .exact import format_rational, parse_rational

Exponent = Tuple[int, int, int]
ProjectivePoint = Tuple[Fraction, Fraction, Fraction]

VARIABLES = ("X", "Y", "Z")


def monomial_key(exp: Exponent) -> Tuple[int, int, int, int]:
    """
    規範單項式序的排序鍵：分次反字典序（降序），同次以 (i,j,k) 字典序決勝
    """
    i, j, k = exp
    return (-(i + j + k), k, j, -i)


def monomials(degree: int) -> List[Exponent]:
    """按規範序列出某次數的全部單項式指數"""
    if degree < 0:
        return []
    exps = [(i, j, degree - i - j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    return sorted(exps, key=monomial_key)


def parse_point(pt: Sequence) -> ProjectivePoint:
    """
    解析射影三元組

    異常:
        MalformedInputError: 長度不是 3 或三個座標都為零
    """
    if len(pt) != 3:
        raise MalformedInputError(f"Projective point needs 3 coordinates, got {len(pt)}")
    coords = tuple(parse_rational(c) for c in pt)
    if all(c == 0 for c in coords):
        raise MalformedInputError("The zero triple is not a projective point")
    return coords


def chart_index(pt: Sequence) -> int:
    """點的最後一個非零齊次座標的下標（仿射圖卡的選擇）"""
    coords = parse_point(pt)
    return max(i for i, c in enumerate(coords) if c != 0)


def normalize_point(pt: Sequence) -> ProjectivePoint:
    """把最後一個非零座標化為 1"""
    coords = parse_point(pt)
    scale = coords[chart_index(coords)]
    return tuple(c / scale for c in coords)


def affine_chart(pt: Sequence) -> Tuple[int, Tuple[int, int], Tuple[Fraction, Fraction]]:
    """
    點所在的仿射圖卡

    返回:
        Tuple[int, Tuple[int, int], Tuple[Fraction, Fraction]]:
            (圖卡座標下標, 兩個仿射變量的下標, 點的仿射座標)
    """
    coords = normalize_point(pt)
    chart = chart_index(coords)
    affine = tuple(i for i in range(3) if i != chart)
    return chart, affine, (coords[affine[0]], coords[affine[1]])


def monomial_taylor_coefficient(exp: Exponent, pt: Sequence, a: int, b: int) -> Fraction:
    """
    單項式在點處的 Taylor 係數

    在點的仿射圖卡中，單項式化為 u^e_u v^e_v；返回 (u-u0)^a (v-v0)^b 的係數，
    即 a!b! 分之一乘以相應偏導數的值。
    """
    _, (iu, iv), (u0, v0) = affine_chart(pt)
    eu, ev = exp[iu], exp[iv]
    if a > eu or b > ev:
        return Fraction(0)
    return math.comb(eu, a) * math.comb(ev, b) * u0 ** (eu - a) * v0 ** (ev - b)


@dataclass(frozen=True)
class PlanePoly:
    """
    有理係數的齊次三元多項式

    屬性:
        degree (int): 次數
        terms (Tuple[Tuple[Exponent, Fraction], ...]): 非零項，按規範單項式序排列
    """
    degree: int
    terms: Tuple[Tuple[Exponent, Fraction], ...] = ()

    def __post_init__(self):
        if self.degree < 0:
            raise MalformedInputError("Degree must be non-negative")
        for exp, coef in self.terms:
            if len(exp) != 3 or any(e < 0 for e in exp) or sum(exp) != self.degree:
                raise MalformedInputError(f"Exponent {exp} does not have degree {self.degree}")
            if coef == 0:
                raise MalformedInputError("Zero coefficients must not be stored")

    @classmethod
    def from_terms(cls, degree: int, coefficients: Mapping) -> "PlanePoly":
        """
        從 {指數: 係數} 構造，自動丟棄零係數並排序

        參數:
            degree (int): 次數
            coefficients (Mapping): 指數三元組到係數的映射

        返回:
            PlanePoly: 多項式
        """
        items = []
        for exp, coef in coefficients.items():
            value = parse_rational(coef)
            if value != 0:
                items.append((tuple(int(e) for e in exp), value))
        items.sort(key=lambda item: monomial_key(item[0]))
        return cls(degree, tuple(items))

    @classmethod
    def zero(cls, degree: int = 0) -> "PlanePoly":
        return cls(max(degree, 0))

    @classmethod
    def variable(cls, name: str) -> "PlanePoly":
        index = _variable_index(name)
        exp = tuple(1 if i == index else 0 for i in range(3))
        return cls(1, ((exp, Fraction(1)),))

    @classmethod
    def from_vector(cls, degree: int, vector: Sequence) -> "PlanePoly":
        """從規範單項式序下的係數向量構造"""
        basis = monomials(degree)
        if len(vector) != len(basis):
            raise MalformedInputError(f"Vector length {len(vector)} != {len(basis)} monomials")
        return cls.from_terms(degree, dict(zip(basis, vector)))

    @property
    def coefficients(self) -> Dict[Exponent, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def to_vector(self) -> Tuple[Fraction, ...]:
        coefficients = self.coefficients
        return tuple(coefficients.get(exp, Fraction(0)) for exp in monomials(self.degree))

    def _check_same_degree(self, other: "PlanePoly") -> None:
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise MalformedInputError(f"Cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other: "PlanePoly") -> "PlanePoly":
        self._check_same_degree(other)
        degree = self.degree if not self.is_zero() else other.degree
        result = self.coefficients
        for exp, coef in other.terms:
            result[exp] = result.get(exp, Fraction(0)) + coef
        return PlanePoly.from_terms(degree, result)

    def __neg__(self) -> "PlanePoly":
        return PlanePoly(self.degree, tuple((exp, -coef) for exp, coef in self.terms))

    def __sub__(self, other: "PlanePoly") -> "PlanePoly":
        return self + (-other)

    def scale(self, factor) -> "PlanePoly":
        factor = parse_rational(factor)
        if factor == 0:
            return PlanePoly.zero(self.degree)
        return PlanePoly(self.degree, tuple((exp, coef * factor) for exp, coef in self.terms))

    def __mul__(self, other) -> "PlanePoly":
        if not isinstance(other, PlanePoly):
            return self.scale(other)
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                result[exp] = result.get(exp, Fraction(0)) + c1 * c2
        return PlanePoly.from_terms(self.degree + other.degree, result)

    def __rmul__(self, other) -> "PlanePoly":
        return self.scale(other)

    def evaluate(self, pt: Sequence) -> Fraction:
        """
        在射影點處求值（只有是否為零與縮放無關）

        異常:
            MalformedInputError: 零三元組
        """
        x, y, z = parse_point(pt)
        return sum((coef * x ** i * y ** j * z ** k for (i, j, k), coef in self.terms), Fraction(0))

    def partial(self, var: str) -> "PlanePoly":
        """對 X、Y 或 Z 的形式偏導數，次數降一（常數的導數為零多項式）"""
        index = _variable_index(var)
        if self.degree == 0:
            return PlanePoly.zero(0)
        result = {}
        for exp, coef in self.terms:
            if exp[index] == 0:
                continue
            lowered = list(exp)
            lowered[index] -= 1
            result[tuple(lowered)] = coef * exp[index]
        return PlanePoly.from_terms(self.degree - 1, result)

    def taylor_coefficient(self, pt: Sequence, a: int, b: int) -> Fraction:
        """在點的仿射圖卡中 (u-u0)^a (v-v0)^b 的係數"""
        return sum((coef * monomial_taylor_coefficient(exp, pt, a, b) for exp, coef in self.terms), Fraction(0))

    def primitive(self) -> "PlanePoly":
        """
        整數係數、容量 1、規範序首項為正的代表元

        用於比較兩個只差一個常數倍的曲線方程。
        """
        if self.is_zero():
            return self
        scale = math.lcm(*(coef.denominator for _, coef in self.terms))
        integers = [coef.numerator * (scale // coef.denominator) for _, coef in self.terms]
        content = math.gcd(*integers)
        if integers[0] < 0:
            content = -content
        return PlanePoly(self.degree, tuple((exp, Fraction(n // content)) for (exp, _), n in zip(self.terms, integers)))

    def to_sympy(self, symbols=None):
        """
        轉為 sympy 多項式（整數係數的原始代表元，定義域 ZZ）

        參數:
            symbols: 三個 sympy 符號，預設為 X, Y, Z

        返回:
            sympy.Poly: 多項式
        """
        if symbols is None:
            symbols = sympy.symbols("X Y Z")
        prim = self.primitive()
        return sympy.Poly.from_dict(
            {exp: int(coef) for exp, coef in prim.terms} or {(0, 0, 0): 0},
            *symbols,
            domain=sympy.ZZ,
        )

    def to_list(self) -> List[Dict]:
        """序列化為 [{"exp": [i,j,k], "coef": "n/d"}, ...]，按規範序"""
        return [{"exp": list(exp), "coef": format_rational(coef)} for exp, coef in self.terms]

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "terms": self.to_list()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "PlanePoly":
        try:
            degree = int(data["degree"])
            terms = {tuple(item["exp"]): item["coef"] for item in data["terms"]}
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInputError(f"Malformed polynomial: {e}") from e
        return cls.from_terms(degree, terms)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exp, coef in self.terms:
            monomial = "*".join(
                f"{name}^{e}" if e > 1 else name for name, e in zip(VARIABLES, exp) if e > 0
            )
            parts.append(f"({format_rational(coef)})*{monomial}" if monomial else f"({format_rational(coef)})")
        return " + ".join(parts)


def _variable_index(var: str) -> int:
    try:
        return VARIABLES.index(var.upper())
    except (ValueError, AttributeError):
        raise MalformedInputError(f"Unknown variable {var!r}; expected X, Y or Z")


def poly_eval(f: PlanePoly, pt: Sequence) -> Fraction:
    """在射影點處求值"""
    return f.evaluate(pt)


def poly_partial(f: PlanePoly, var: str) -> PlanePoly:
    """形式偏導數"""
    return f.partial(var)


def weierstrass_cubic(a, b) -> PlanePoly:
    """
    短 Weierstrass 曲線 y^2 = x^3 + ax + b 的齊次方程 X^3 + aXZ^2 + bZ^3 - Y^2Z
    """
    return PlanePoly.from_terms(3, {
        (3, 0, 0): 1,
        (1, 0, 2): parse_rational(a),
        (0, 0, 3): parse_rational(b),
        (0, 2, 1): -1,
    })


def linear_combination(polys: Iterable[PlanePoly], coefficients: Iterable) -> PlanePoly:
    """多項式的有理線性組合"""
    polys = list(polys)
    if not polys:
        raise MalformedInputError("Empty combination")
    result = PlanePoly.zero(polys[0].degree)
    for poly, coef in zip(polys, coefficients):
        result = result + poly.scale(coef)
    return result
