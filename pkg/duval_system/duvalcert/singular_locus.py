"""
奇異點模組 - 以結式消元求平面曲線的有理奇異點
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import sympy

from .errors import CapExceededError, DuvalError
from .exact import format_rational
from .plane_poly import PlanePoly, ProjectivePoint, normalize_point
from .plane_systems import multiplicity_at

logger = logging.getLogger(__name__)

MAX_SINGULAR_DEGREE = 9

X, Y, Z = sympy.symbols("X Y Z")
T = sympy.Symbol("t")


@dataclass(frozen=True)
class SingularPoint:
    """
    有理奇異點

    屬性:
        point (ProjectivePoint): 規範化射影座標
        multiplicity (int): 曲線在該點的重數（≥ 2）
    """
    point: ProjectivePoint
    multiplicity: int

    def to_dict(self) -> Dict:
        return {"point": [format_rational(c) for c in self.point], "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SingularLocus:
    """
    奇異點掃描結果

    屬性:
        points (Tuple[SingularPoint, ...]): 有理奇異點，按座標排序
        unresolved_degrees (Tuple[int, ...]): 未分解的非線性因子次數（可能含非有理奇異點）
    """
    points: Tuple[SingularPoint, ...]
    unresolved_degrees: Tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict:
        return {
            "points": [p.to_dict() for p in self.points],
            "unresolved_degrees": list(self.unresolved_degrees),
        }


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _linear_roots(poly: sympy.Poly, unresolved: List[int]) -> List[Fraction]:
    """單變量多項式的有理根；次數 ≥ 2 的不可約因子記入 unresolved"""
    if poly.is_zero:
        raise DuvalError("Resultant vanished identically; the curve is not reduced")
    roots = []
    _, factors = poly.factor_list()
    for factor, _ in factors:
        if factor.degree() == 1:
            c1, c0 = factor.all_coeffs()
            roots.append(_to_fraction(-c0 / c1))
        elif factor.degree() > 1:
            unresolved.append(factor.degree())
    return roots


def _univariate_gcd(polys: List[sympy.Expr], var: sympy.Symbol) -> sympy.Poly:
    nonzero = [sympy.Poly(p, var, domain=sympy.QQ) for p in polys if sympy.expand(p) != 0]
    if not nonzero:
        return sympy.Poly(0, var, domain=sympy.QQ)
    result = nonzero[0]
    for p in nonzero[1:]:
        result = result.gcd(p)
    return result


def _resultant(f, g, var: sympy.Symbol):
    """結式；一方不含 var 時直接取冪"""
    df, dg = sympy.degree(f, var), sympy.degree(g, var)
    if df <= 0:
        return f ** max(dg, 0)
    if dg <= 0:
        return g ** df
    return sympy.resultant(f, g, var)


def _affine_candidates(expr, fx, fy, unresolved: List[int]) -> List[Tuple[Fraction, Fraction]]:
    """Z = 1 圖卡中 f = f_X = f_Y = 0 的有理解"""
    F = expr.subs(Z, 1)
    Fx = fx.subs(Z, 1)
    Fy = fy.subs(Z, 1)

    resultants = [_resultant(F, Fy, Y), _resultant(Fx, Fy, Y)]
    projection = _univariate_gcd(resultants, X)
    if projection.is_zero:
        raise DuvalError("Resultants vanished identically; the curve is not reduced")
    if projection.degree() == 0:
        return []

    candidates = []
    for x0 in _linear_roots(projection, unresolved):
        xs = sympy.Rational(x0.numerator, x0.denominator)
        fiber = _univariate_gcd([F.subs(X, xs), Fx.subs(X, xs), Fy.subs(X, xs)], Y)
        if fiber.is_zero:
            # 直線 X = x0 整條在奇異軌跡中
            unresolved.append(1)
            continue
        if fiber.degree() == 0:
            continue
        for y0 in _linear_roots(fiber, unresolved):
            candidates.append((x0, y0))
    return candidates


def singular_locus(f: PlanePoly, max_degree: int = MAX_SINGULAR_DEGREE) -> SingularLocus:
    """
    曲線 f = 0 的有理奇異點

    仿射部分用 y 的結式消元得到 x 的候選，再在每條纖維上取 gcd；
    無窮遠直線 Z = 0 上的點 (t:1:0) 與 (1:0:0) 單獨處理。每個候選都精確驗證。

    參數:
        f (PlanePoly): 約化的曲線方程
        max_degree (int): 次數上限

    返回:
        SingularLocus: 有理奇異點及未解決的因子次數

    異常:
        CapExceededError: 次數超過上限
        DuvalError: 結式恆為零（曲線不是約化的）
    """
    if f.degree > max_degree:
        raise CapExceededError(f"Singular-locus scan is capped at degree {max_degree}, got {f.degree}")
    if f.degree < 2:
        return SingularLocus(())

    expr = f.to_sympy((X, Y, Z)).as_expr()
    fx, fy, fz = (sympy.diff(expr, v) for v in (X, Y, Z))
    unresolved: List[int] = []

    found = set()
    for x0, y0 in _affine_candidates(expr, fx, fy, unresolved):
        found.add((x0, y0, Fraction(1)))

    at_infinity = [e.subs({X: T, Y: 1, Z: 0}) for e in (expr, fx, fy, fz)]
    line = _univariate_gcd(at_infinity, T)
    if not line.is_zero and line.degree() > 0:
        for t0 in _linear_roots(line, unresolved):
            found.add((t0, Fraction(1), Fraction(0)))
    corner = {X: 1, Y: 0, Z: 0}
    if all(e.subs(corner) == 0 for e in (expr, fx, fy, fz)):
        found.add((Fraction(1), Fraction(0), Fraction(0)))

    points = []
    for candidate in sorted(found):
        pt = normalize_point(candidate)
        if f.evaluate(pt) != 0 or any(f.partial(v).evaluate(pt) != 0 for v in "XYZ"):
            continue
        points.append(SingularPoint(pt, multiplicity_at(f, pt)))

    logger.info("degree %d curve: %d rational singular points, unresolved %s", f.degree, len(points), unresolved)
    return SingularLocus(tuple(points), tuple(sorted(unresolved)))
