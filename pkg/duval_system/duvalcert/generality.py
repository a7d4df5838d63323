"""
一般性證書模組 - k-Cremona、k-Halphen 與對所有 k 的一般性

把 Nagata 類的空性轉化為 J' 上的群恆等式：限制到 J' 非平凡時，
虛維數為負的線性系統必為空。限制平凡的類只作為需要人工檢查的失敗見證。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .elliptic import (
    INFINITY,
    ECPoint,
    IndependenceCertificate,
    TorsionCertificate,
    point_add,
    point_mul,
    point_neg,
    independence_certificate,
)
from .errors import MalformedInputError
from .picard import (
    HALPHEN_GENERATOR,
    DivisorClass,
    NagataClass,
    generator_patterns,
    lattice_prediction,
    nagata_classes,
    nagata_multiples,
    restrict_to_anticanonical,
)
from .point_config import PointConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HalphenCertificate:
    """
    k-Halphen 一般性片段：d·(Σp_i) ≠ 0 對 1 ≤ d ≤ ⌊k/3⌋

    屬性:
        k (int): 度數上界
        passed (bool): 是否通過
        checked (Tuple[int, ...]): 已檢查的 d
        short_circuit (bool): 是否因撓子群平凡而只檢查 Σp_i ≠ 0
        failing_d (Optional[int]): 第一個使 d·Σp_i = 0 的 d
        witness (Optional[DivisorClass]): 有效類 (3d; d, ..., d)
    """
    k: int
    passed: bool
    checked: Tuple[int, ...]
    short_circuit: bool = False
    failing_d: Optional[int] = None
    witness: Optional[DivisorClass] = None

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "passed": self.passed,
            "checked": list(self.checked),
            "short_circuit": self.short_circuit,
            "failing_d": self.failing_d,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass(frozen=True)
class CremonaCertificate:
    """
    k-Cremona 一般性片段

    屬性:
        k (int): 度數上界
        passed (bool): 每個 Nagata 類的限制都非平凡
        classes_checked (int): 檢查的類數
        witness (Optional[NagataClass]): 規範順序中第一個限制平凡的類
        needs_inspection (bool): 見證是否需要人工判斷有效性
    """
    k: int
    passed: bool
    classes_checked: int
    witness: Optional[NagataClass] = None
    needs_inspection: bool = False

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "passed": self.passed,
            "classes_checked": self.classes_checked,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "needs_inspection": self.needs_inspection,
        }


@dataclass(frozen=True)
class ConeArgument:
    """
    對所有 k 的論證記錄：泛函 f(m, n) = m + n 在格座標上非負

    屬性:
        passed (bool): 論證是否成立
        values (Tuple[int, ...]): 每個點的 f 值
        zero_points (Tuple[int, ...]): f = 0 的點（從 1 開始）
        opposite_pairs (Tuple[Tuple[int, int], ...]): f = 0 且方向相反的點對
        independence (IndependenceCertificate): 基點無關性證書
        reasons (Tuple[str, ...]): 失敗原因
    """
    passed: bool
    values: Tuple[int, ...]
    zero_points: Tuple[int, ...]
    opposite_pairs: Tuple[Tuple[int, int], ...]
    independence: IndependenceCertificate
    reasons: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "functional": "m+n",
            "values": list(self.values),
            "zero_points": list(self.zero_points),
            "opposite_pairs": [list(p) for p in self.opposite_pairs],
            "independence": self.independence.to_dict(),
            "reasons": list(self.reasons),
        }


@dataclass(frozen=True)
class GeneralityCertificate:
    """
    k-一般性證書（k-Cremona 且 k-Halphen 一般）

    屬性:
        k (Union[int, str]): 度數上界，或 "all"
        passed (bool): 是否通過
        halphen (Optional[HalphenCertificate]): Halphen 片段（k < 3 時為空，條件自動成立）
        cremona (Optional[CremonaCertificate]): Cremona 片段
        cone (Optional[ConeArgument]): 對所有 k 的論證記錄
        all_k (bool): 是否證明了對所有 k 成立
    """
    k: Union[int, str]
    passed: bool
    halphen: Optional[HalphenCertificate] = None
    cremona: Optional[CremonaCertificate] = None
    cone: Optional[ConeArgument] = None
    all_k: bool = False

    @property
    def witness(self) -> Optional[DivisorClass]:
        if self.halphen is not None and self.halphen.witness is not None:
            return self.halphen.witness
        if self.cremona is not None and self.cremona.witness is not None:
            return self.cremona.witness.cls
        return None

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "passed": self.passed,
            "all_k": self.all_k,
            "halphen": None if self.halphen is None else self.halphen.to_dict(),
            "cremona": None if self.cremona is None else self.cremona.to_dict(),
            "cone": None if self.cone is None else self.cone.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def point_sum(cfg: PointConfig) -> ECPoint:
    """Σ p_i，即 𝔅 = 3ℓ - ΣE_i 在 J' 上的限制"""
    total = INFINITY
    for point in cfg.points:
        total = point_add(cfg.curve, total, point)
    return total


def certify_halphen(cfg: PointConfig, k: int, torsion: Optional[TorsionCertificate] = None) -> HalphenCertificate:
    """
    k-Halphen 一般性：不存在 3d ≤ k 次、在九點處都有 d 重點的曲線

    參數:
        cfg (PointConfig): 點配置
        k (int): 度數上界，k ≥ 3
        torsion (Optional[TorsionCertificate]): 平凡撓子群證書；提供時只需 Σp_i ≠ 0

    返回:
        HalphenCertificate: 證書片段
    """
    if k < 3:
        raise MalformedInputError(f"Halphen certification needs k >= 3, got {k}")

    total = point_sum(cfg)
    if torsion is not None and torsion.trivial:
        passed = not total.is_infinity
        logger.info("Halphen k=%d short-circuited by trivial torsion: %s", k, "pass" if passed else "fail")
        return HalphenCertificate(
            k=k,
            passed=passed,
            checked=(1,),
            short_circuit=True,
            failing_d=None if passed else 1,
            witness=None if passed else HALPHEN_GENERATOR,
        )

    checked = []
    multiple = INFINITY
    for d in range(1, k // 3 + 1):
        multiple = point_add(cfg.curve, multiple, total)
        checked.append(d)
        if multiple.is_infinity:
            logger.info("Halphen k=%d fails at d=%d", k, d)
            return HalphenCertificate(k, False, tuple(checked), failing_d=d, witness=HALPHEN_GENERATOR * d)

    logger.info("Halphen k=%d: all %d multiples nonzero", k, len(checked))
    return HalphenCertificate(k, True, tuple(checked))


class _RestrictionTable:
    """
    Nagata 類限制的快取：σ(n𝔅 + 𝔄_i) 的限制是 n·S + (模式和)，S = Σp_i

    限制平凡等價於 n·S = -(模式和)，比較兩個點即可，無需相加。
    """

    def __init__(self, cfg: PointConfig, k: int):
        self.cfg = cfg
        curve = cfg.curve
        points = cfg.points
        total = point_sum(cfg)

        max_n = max((len(nagata_multiples(k, i)) for i in (1, 2, 3)), default=0)
        self.multiples: List[ECPoint] = [INFINITY]
        for _ in range(1, max_n):
            self.multiples.append(point_add(curve, self.multiples[-1], total))

        # 模式和的逆元，與 n·S 比較
        self.negated_sums: Dict[Tuple[int, Tuple[int, ...]], ECPoint] = {}
        for pattern in generator_patterns(1) + generator_patterns(2):
            acc = INFINITY
            for index in pattern:
                acc = point_add(curve, acc, points[index])
            self.negated_sums[(len(pattern) // 3, pattern)] = point_neg(acc)
        for double, omitted in generator_patterns(3):
            acc = point_add(curve, point_add(curve, total, points[double]), point_neg(points[omitted]))
            self.negated_sums[(3, (double, omitted))] = point_neg(acc)

    def is_trivial(self, nagata: NagataClass) -> bool:
        return self.multiples[nagata.n] == self.negated_sums[(nagata.i, nagata.pattern)]


def _first_trivial(table: _RestrictionTable, classes: Sequence[NagataClass], start: int, stop: int) -> Optional[int]:
    for index in range(start, stop):
        if table.is_trivial(classes[index]):
            return index
    return None


def certify_cremona(cfg: PointConfig, k: int, threads: int = 1) -> CremonaCertificate:
    """
    k-Cremona 一般性：每個 Nagata 類在 J' 上的限制都非平凡

    多線程時按塊並行，取規範順序中最小的失敗下標，結果與線程數無關。

    參數:
        cfg (PointConfig): 點配置
        k (int): 度數上界，k ≥ 1
        threads (int): 線程數

    返回:
        CremonaCertificate: 證書片段
    """
    classes = nagata_classes(k)
    table = _RestrictionTable(cfg, k)

    if threads <= 1 or len(classes) < 2:
        first = _first_trivial(table, classes, 0, len(classes))
    else:
        chunk = -(-len(classes) // threads)
        bounds = [(s, min(s + chunk, len(classes))) for s in range(0, len(classes), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as executor:
            found = list(executor.map(lambda b: _first_trivial(table, classes, *b), bounds))
        candidates = [i for i in found if i is not None]
        first = min(candidates) if candidates else None

    if first is None:
        logger.info("Cremona k=%d: %d classes, all restrictions nontrivial", k, len(classes))
        return CremonaCertificate(k, True, len(classes))

    witness = classes[first]
    logger.warning("Cremona k=%d: trivial restriction for %s; effectivity needs inspection", k, witness.describe())
    return CremonaCertificate(k, False, first + 1, witness, needs_inspection=True)


def certify_k(cfg: PointConfig, k: int, torsion: Optional[TorsionCertificate] = None, threads: int = 1) -> GeneralityCertificate:
    """
    k-一般性 = k-Halphen 一般 且 k-Cremona 一般

    k < 3 時 Halphen 條件沒有需要檢查的 d，自動成立。
    """
    if k < 1:
        raise MalformedInputError(f"k must be at least 1, got {k}")
    halphen = certify_halphen(cfg, k, torsion) if k >= 3 else None
    cremona = certify_cremona(cfg, k, threads)
    passed = cremona.passed and (halphen is None or halphen.passed)
    return GeneralityCertificate(k=k, passed=passed, halphen=halphen, cremona=cremona)


def cone_argument(cfg: PointConfig, independence: Optional[IndependenceCertificate] = None, primes: Sequence[int] = (5, 7)) -> ConeArgument:
    """
    泛函 m + n 的論證

    若所有 f 值非負，f = 0 的點都落在同一條射線上且非零，且兩個基點無關，
    則 Σν_i(m_i, n_i)（ν ≥ 0 不全為零）不可能為零。
    """
    if cfg.lattice is None:
        raise MalformedInputError("All-k certification needs lattice coordinates")
    if independence is None:
        p, q = cfg.basis_points
        independence = independence_certificate(cfg.curve, p, q, primes)

    coords = cfg.lattice.coords
    values = tuple(m + n for m, n in coords)
    zero_points = tuple(i + 1 for i, v in enumerate(values) if v == 0)

    reasons = []
    negative = [i + 1 for i, v in enumerate(values) if v < 0]
    if negative:
        reasons.append(f"negative functional value at points {negative}")
    for index in zero_points:
        if coords[index - 1] == (0, 0):
            reasons.append(f"p{index} has zero lattice vector")

    # f = 0 的向量都是 (1,-1) 的倍數，方向由 m 的符號決定
    opposite = tuple(
        (a, b)
        for a in zero_points
        for b in zero_points
        if a < b and coords[a - 1][0] * coords[b - 1][0] < 0
    )
    if opposite:
        reasons.append(f"opposite lattice vectors on the kernel of m+n: {[list(p) for p in opposite]}")
    if not independence.passed:
        reasons.append("basis points not certified independent")

    return ConeArgument(
        passed=not reasons,
        values=values,
        zero_points=zero_points,
        opposite_pairs=opposite,
        independence=independence,
        reasons=tuple(reasons),
    )


def certify_all_k(
    cfg: PointConfig,
    independence: Optional[IndependenceCertificate] = None,
    fallback_k: int = 30,
    primes: Sequence[int] = (5, 7),
    threads: int = 1,
) -> GeneralityCertificate:
    """
    對所有 k 的一般性

    參數:
        cfg (PointConfig): 帶格座標的點配置
        independence (Optional[IndependenceCertificate]): 基點無關性證書；為空時現場計算
        fallback_k (int): 論證失敗時改為證明的有限 k
        primes (Sequence[int]): 撓點證書用的質數
        threads (int): 回退時 Cremona 檢查的線程數

    返回:
        GeneralityCertificate: k = "all" 的證書；論證失敗時為 k = fallback_k 的有限證書

    異常:
        MalformedInputError: 配置沒有格座標
    """
    cone = cone_argument(cfg, independence, primes)
    if cone.passed:
        logger.info("All-k generality certified for %s", cfg.name)
        return GeneralityCertificate(k="all", passed=True, cone=cone, all_k=True)

    logger.warning("All-k argument failed (%s); falling back to k=%d", "; ".join(cone.reasons), fallback_k)
    finite = certify_k(cfg, fallback_k, cone.independence.torsion, threads)
    return GeneralityCertificate(
        k=fallback_k,
        passed=finite.passed,
        halphen=finite.halphen,
        cremona=finite.cremona,
        cone=cone,
        all_k=False,
    )


@dataclass(frozen=True)
class CrossValidation:
    """
    格座標預測與群律計算的一致性

    屬性:
        k (int): 度數上界
        total (int): 類總數
        agreements (int): 一致的類數
        disagreements (Tuple[NagataClass, ...]): 不一致的類
        trivial_count (int): 限制平凡的類數
    """
    k: int
    total: int
    agreements: int
    disagreements: Tuple[NagataClass, ...] = field(default_factory=tuple)
    trivial_count: int = 0

    @property
    def passed(self) -> bool:
        return self.agreements == self.total

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "total": self.total,
            "agreements": self.agreements,
            "trivial_count": self.trivial_count,
            "disagreements": [c.to_dict() for c in self.disagreements],
            "passed": self.passed,
        }


def cross_validate_lattice(cfg: PointConfig, k: int = 30) -> CrossValidation:
    """
    對每個 Nagata 類比較：Σν_i(m_i, n_i) = (0, 0) 當且僅當群律限制為無窮遠點
    """
    classes = nagata_classes(k)
    table = _RestrictionTable(cfg, k)
    agreements = 0
    trivial = 0
    disagreements = []
    for nagata in classes:
        predicted_zero = lattice_prediction(nagata.cls, cfg) == (0, 0)
        actual_zero = table.is_trivial(nagata)
        trivial += actual_zero
        if predicted_zero == actual_zero:
            agreements += 1
        else:
            disagreements.append(nagata)
    logger.info("Lattice cross-validation k=%d: %d/%d agree", k, agreements, len(classes))
    return CrossValidation(k, len(classes), agreements, tuple(disagreements), trivial)


@dataclass(frozen=True)
class SumExpression:
    """
    Σp_i 與候選格表達式 m·P + n·Q 的比較結果

    屬性:
        total (ECPoint): 群律計算的 Σp_i
        lattice_sum (Tuple[int, int]): 格座標之和
        matches (Tuple[Tuple[int, int], ...]): 與 Σp_i 相等的候選
        checked (Tuple[Tuple[int, int], ...]): 所有候選
    """
    total: ECPoint
    lattice_sum: Tuple[int, int]
    matches: Tuple[Tuple[int, int], ...]
    checked: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> Dict:
        return {
            "sum": self.total.to_dict(),
            "lattice_sum": list(self.lattice_sum),
            "matches": [list(c) for c in self.matches],
            "checked": [list(c) for c in self.checked],
        }


def sum_expression(cfg: PointConfig, candidates: Sequence[Tuple[int, int]] = ((13, -1), (13, -2))) -> SumExpression:
    """
    用群律計算 Σp_i，並判斷它等於哪個 m·P + n·Q

    候選包括給定的表達式和格座標之和，兩者都不預設正確。
    """
    if cfg.lattice is None:
        raise MalformedInputError("Configuration carries no lattice coordinates")
    total = restrict_to_anticanonical(HALPHEN_GENERATOR, cfg)
    lattice_sum = lattice_prediction(HALPHEN_GENERATOR, cfg)

    checked = []
    for candidate in list(candidates) + [lattice_sum]:
        if candidate not in checked:
            checked.append(tuple(candidate))
    p, q = cfg.basis_points
    matches = tuple(
        (m, n) for m, n in checked
        if point_add(cfg.curve, point_mul(cfg.curve, m, p), point_mul(cfg.curve, n, q)) == total
    )
    logger.info("Sum of points matches %s", matches)
    return SumExpression(total, lattice_sum, matches, tuple(checked))

