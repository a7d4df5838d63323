"""
平面線性系統模組 - 以插值構造 J'、Du Val 系統 L_g 與基點 p

重數條件在點的仿射圖卡中逐個 Taylor 係數給出，一行對應一個條件。
"""

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .elliptic import ECPoint, point_add, point_mul, point_neg
from .errors import CapExceededError, DuvalError, MalformedInputError
from .exact import (
    RationalMatrix,
    cross_check_ranks,
    format_rational,
    random_good_primes,
    rank_and_nullspace,
)
from .plane_poly import (
    PlanePoly,
    ProjectivePoint,
    linear_combination,
    monomial_taylor_coefficient,
    monomials,
    normalize_point,
    parse_point,
)
from .point_config import PointConfig

logger = logging.getLogger(__name__)

MAX_GENUS = 8

Condition = Tuple[ProjectivePoint, int]


@dataclass(frozen=True)
class InterpolationProblem:
    """
    插值問題：給定次數，在若干點處要求至少給定的重數

    屬性:
        degree (int): 曲線次數 d ≥ 1
        conditions (Tuple[Condition, ...]): (規範化射影點, 重數) 列表
    """
    degree: int
    conditions: Tuple[Condition, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise MalformedInputError(f"Degree must be at least 1, got {self.degree}")
        normalized = []
        seen = set()
        for point, mult in self.conditions:
            pt = normalize_point(parse_point(point))
            if int(mult) < 1:
                raise MalformedInputError(f"Multiplicity must be positive, got {mult}")
            if pt in seen:
                raise MalformedInputError(f"Coincident condition points at {_format_point(pt)}")
            seen.add(pt)
            normalized.append((pt, int(mult)))
        object.__setattr__(self, "conditions", tuple(normalized))

    @property
    def mults(self) -> Tuple[int, ...]:
        return tuple(mult for _, mult in self.conditions)

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "conditions": [
                {"point": [format_rational(c) for c in pt], "multiplicity": mult}
                for pt, mult in self.conditions
            ],
        }


def _format_point(pt: Sequence) -> str:
    return "(" + ":".join(format_rational(c) for c in pt) + ")"


def virtual_dimension(degree: int, mults: Sequence[int]) -> int:
    """
    虛（射影）維數 d(d+3)/2 - Σ ν_i(ν_i+1)/2
    """
    return degree * (degree + 3) // 2 - sum(v * (v + 1) // 2 for v in mults)


def build_conditions(problem: InterpolationProblem) -> RationalMatrix:
    """
    插值矩陣

    每個點 p_i 貢獻 ν_i(ν_i+1)/2 行：階數 < ν_i 的全部 Taylor 係數，
    按階數遞增、同階按第一個仿射變量的指數遞減排列；列按規範單項式序。

    參數:
        problem (InterpolationProblem): 插值問題

    返回:
        RationalMatrix: 條件矩陣
    """
    basis = monomials(problem.degree)
    rows = []
    for point, mult in problem.conditions:
        for order in range(mult):
            for a in range(order, -1, -1):
                b = order - a
                rows.append([monomial_taylor_coefficient(exp, point, a, b) for exp in basis])
    matrix = RationalMatrix.from_rows(rows, cols=len(basis))
    logger.debug("degree %d: conditions matrix %dx%d", problem.degree, matrix.rows, matrix.cols)
    return matrix


def multiplicity_at(f: PlanePoly, pt: Sequence) -> int:
    """
    f 在點處的重數：某個 m 階 Taylor 係數非零的最小 m

    f 在點處不為零時返回 0；f 為零多項式時返回 degree + 1。
    """
    point = normalize_point(parse_point(pt))
    for order in range(f.degree + 1):
        if any(f.taylor_coefficient(point, a, order - a) != 0 for a in range(order + 1)):
            return order
    return f.degree + 1


@dataclass(frozen=True)
class LinearSystemResult:
    """
    求解後的線性系統

    屬性:
        problem (InterpolationProblem): 插值問題
        shape (Tuple[int, int]): 條件矩陣形狀
        rank (int): 精確秩
        basis (Tuple[PlanePoly, ...]): 規範化的基
        projective_dimension (int): (列數 - 秩) - 1
        virtual_dimension (int): 虛維數
        modular_ranks (Dict[int, int]): 交叉檢查質數下的模秩
    """
    problem: InterpolationProblem
    shape: Tuple[int, int]
    rank: int
    basis: Tuple[PlanePoly, ...]
    projective_dimension: int
    virtual_dimension: int
    modular_ranks: Tuple[Tuple[int, int], ...] = ()

    @property
    def modular_agrees(self) -> bool:
        return all(r == self.rank for _, r in self.modular_ranks)

    def to_dict(self, include_basis: bool = True) -> Dict:
        data = {
            "problem": self.problem.to_dict(),
            "shape": list(self.shape),
            "rank": self.rank,
            "projective_dimension": self.projective_dimension,
            "virtual_dimension": self.virtual_dimension,
            "modular_ranks": {str(p): r for p, r in self.modular_ranks},
        }
        if include_basis:
            data["basis"] = [poly.to_list() for poly in self.basis]
        return data


@functools.lru_cache(maxsize=32)
def _solve_cached(problem: InterpolationProblem, primes: Tuple[int, ...]) -> LinearSystemResult:
    matrix = build_conditions(problem)
    rank, nullspace = rank_and_nullspace(matrix)
    basis = tuple(PlanePoly.from_vector(problem.degree, vector) for vector in nullspace)

    for poly in basis:
        for point, mult in problem.conditions:
            actual = multiplicity_at(poly, point)
            if actual < mult:
                raise DuvalError(
                    f"Basis member has multiplicity {actual} < {mult} at {_format_point(point)}"
                )

    modular = cross_check_ranks(matrix, primes, exact_rank=rank) if primes else {}
    result = LinearSystemResult(
        problem=problem,
        shape=matrix.shape,
        rank=rank,
        basis=basis,
        projective_dimension=len(basis) - 1,
        virtual_dimension=virtual_dimension(problem.degree, problem.mults),
        modular_ranks=tuple(sorted(modular.items())),
    )
    logger.info(
        "degree %d system: rank %d, projective dimension %d (virtual %d)",
        problem.degree, rank, result.projective_dimension, result.virtual_dimension,
    )
    return result


def solve_system(problem: InterpolationProblem, primes: Sequence[int] = ()) -> LinearSystemResult:
    """
    精確求解線性系統

    參數:
        problem (InterpolationProblem): 插值問題
        primes (Sequence[int]): 模秩交叉檢查用的質數

    返回:
        LinearSystemResult: 結果，基的每個元素都已重新驗證重數

    異常:
        DuvalError: 基元素不滿足條件（實現錯誤）
    """
    return _solve_cached(problem, tuple(primes))


def check_primes(config: Optional[Dict] = None, seed: int = 0) -> List[int]:
    """按配置的 modular 區段選取交叉檢查質數"""
    section = (config or {}).get("modular", {})
    return random_good_primes(
        section.get("count", 3),
        section.get("prime_low", 1000),
        section.get("prime_high", 10000),
        seed,
    )


def duval_problem(cfg: PointConfig, g: int, max_genus: int = MAX_GENUS) -> InterpolationProblem:
    """
    L_g = |3gℓ - gE_1 - ... - gE_8 - (g-1)E_9|

    異常:
        MalformedInputError: g < 1
        CapExceededError: g 超過上限
    """
    if g < 1:
        raise MalformedInputError(f"Genus must be at least 1, got {g}")
    if g > max_genus:
        raise CapExceededError(f"System solving is capped at genus {max_genus}, got {g}")
    points = cfg.projective_points()
    conditions = [(pt, g) for pt in points[:8]]
    if g > 1:
        conditions.append((points[8], g - 1))
    return InterpolationProblem(3 * g, tuple(conditions))


def cubic_problem(cfg: PointConfig) -> InterpolationProblem:
    """過九個點的三次曲線"""
    return InterpolationProblem(3, tuple((pt, 1) for pt in cfg.projective_points()))


def anticanonical_cubic(cfg: PointConfig, primes: Sequence[int] = ()) -> PlanePoly:
    """
    唯一的反典範三次曲線 J'

    異常:
        DuvalError: 三次曲線不唯一
    """
    result = solve_system(cubic_problem(cfg), primes)
    if result.projective_dimension != 0:
        raise DuvalError(f"Expected a unique cubic, got projective dimension {result.projective_dimension}")
    return result.basis[0]


@dataclass(frozen=True)
class BasePoint:
    """
    L_g 的基點 p = -(g(p_1 + ... + p_8) + (g-1)p_9)

    屬性:
        genus (int): g
        point (ECPoint): 群中的點
        projective (ProjectivePoint): 平面射影座標
        at_infinity (bool): 是否為 p_inf = (0:1:0)
        verified (Optional[bool]): 是否在 L_g 的每個基元素上為零；未驗證時為 None
    """
    genus: int
    point: ECPoint
    projective: ProjectivePoint
    at_infinity: bool
    verified: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            "genus": self.genus,
            "point": self.point.to_dict(),
            "projective": [format_rational(c) for c in self.projective],
            "at_infinity": self.at_infinity,
            "verified": self.verified,
        }


def base_point(cfg: PointConfig, g: int, result: Optional[LinearSystemResult] = None, verify: bool = True) -> BasePoint:
    """
    L_g 的基點

    次數 9g 的除子條件在 J' 上化為群恆等式（共線三點之和為零），
    得到 p = -(gΣ_{i≤8} p_i + (g-1)p_9)。

    參數:
        cfg (PointConfig): 點配置
        g (int): 虧格 g ≥ 1
        result (Optional[LinearSystemResult]): 已求解的 L_g；為空且 verify 時現場求解
        verify (bool): 是否驗證在每個基元素上為零

    返回:
        BasePoint: 基點記錄
    """
    if g < 1:
        raise MalformedInputError(f"Genus must be at least 1, got {g}")
    curve = cfg.curve
    acc = point_mul(curve, g - 1, cfg.points[8])
    for point in cfg.points[:8]:
        acc = point_add(curve, acc, point_mul(curve, g, point))
    p = point_neg(acc)
    projective = normalize_point(p.to_projective())
    if p.is_infinity:
        logger.warning("Base point for g=%d is the point at infinity", g)

    verified = None
    if verify:
        if result is None:
            result = solve_system(duval_problem(cfg, g))
        verified = all(poly.evaluate(projective) == 0 for poly in result.basis)
        if not verified:
            logger.warning("Base point for g=%d does not vanish on every basis member", g)
    return BasePoint(g, p, projective, p.is_infinity, verified)


def generic_member(result: LinearSystemResult, seed: int, coefficient_range: int = 50) -> PlanePoly:
    """
    固定種子的偽隨機有理組合，作為系統的「一般成員」

    係數為 num/den，num ∈ [-R, R] 非零，den ∈ [1, R]。
    """
    rng = np.random.default_rng(seed)
    size = len(result.basis)
    numerators = rng.integers(1, coefficient_range + 1, size=size) * rng.choice([-1, 1], size=size)
    denominators = rng.integers(1, coefficient_range + 1, size=size)
    coefficients = [Fraction(int(n), int(d)) for n, d in zip(numerators, denominators)]
    return linear_combination(result.basis, coefficients)


def exact_multiplicities(f: PlanePoly, problem: InterpolationProblem) -> List[Tuple[ProjectivePoint, int, int]]:
    """每個條件點的 (點, 要求重數, 實際重數)"""
    return [(pt, mult, multiplicity_at(f, pt)) for pt, mult in problem.conditions]


def hyperplane_members(cfg: PointConfig, g: int, primes: Sequence[int] = ()) -> List[PlanePoly]:
    """
    J'·D，D 取遍 L_{g-1} 的基

    這些乘積都在 L_g 中，張成一個超平面（束中的可約成員 D + J）。
    """
    if g < 2:
        raise MalformedInputError(f"Hyperplane members need g >= 2, got {g}")
    cubic = anticanonical_cubic(cfg, primes)
    lower = solve_system(duval_problem(cfg, g - 1), primes)
    return [cubic * member for member in lower.basis]
