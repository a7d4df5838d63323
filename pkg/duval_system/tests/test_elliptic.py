#!/usr/bin/env python3
"""
橢圓曲線群律與撓點證書測試腳本
"""

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

# 添加項目根目錄到路徑
sys.path.append(str(Path(__file__).parent.parent))

from duvalcert.elliptic import (
    INFINITY,
    ECPoint,
    EllipticCurve,
    count_points_fp,
    duplication_x,
    ec_add,
    ec_add_mod_p,
    ec_linear_combination,
    ec_neg,
    ec_scalar_mul,
    ec_sub,
    independence_certificate,
    integral_halving_witnesses,
    reduce_point,
    torsion_is_trivial,
    two_torsion_is_trivial,
)
from duvalcert.errors import BadReductionError, CapExceededError, MalformedInputError, OffCurveError
from duvalcert.point_config import PAPER_LATTICE, paper_config, relation_table

CURVE = EllipticCurve(0, 17)
CFG = paper_config()
P = CFG.points


def naive_count(curve, prime):
    """逐對 (x, y) 枚舉的點數"""
    a = int(curve.a) % prime
    b = int(curve.b) % prime
    return 1 + sum(1 for x in range(prime) for y in range(prime) if (y * y - x ** 3 - a * x - b) % prime == 0)


def reduce_or_none(point, prime):
    if point.is_infinity or point.x.denominator % prime == 0:
        return None
    return reduce_point(point, prime)


def test_group_law():
    """測試群律的已知值"""
    print("測試群律...")

    assert ec_add(CURVE, P[0], P[0]) == ECPoint(8, -23), "2p1 應為 (8,-23)"
    assert ec_scalar_mul(CURVE, 2, P[0]) == P[6], "2p1 應等於 p7"
    assert ec_add(CURVE, P[0], P[2]) == ECPoint(Fraction(1, 4), Fraction(-33, 8)), "p1+p3 錯誤"
    assert ec_sub(CURVE, P[0], P[2]) == P[3], "p1-p3 應等於 p4"
    assert ec_neg(CURVE, P[0]) == ECPoint(-2, -3), "逆元錯誤"
    assert ec_add(CURVE, P[0], ec_neg(CURVE, P[0])) == INFINITY, "P + (-P) 應為無窮遠點"
    assert ec_scalar_mul(CURVE, 0, P[1]) == INFINITY, "0·P 應為無窮遠點"
    assert ec_scalar_mul(CURVE, -3, P[1]) == ec_neg(CURVE, ec_scalar_mul(CURVE, 3, P[1])), "負倍數錯誤"
    assert duplication_x(CURVE, Fraction(-2)) == 8, "倍點公式錯誤"

    try:
        ec_add(CURVE, ECPoint(1, 1), P[0])
        assert False, "不在曲線上的點應被拒絕"
    except OffCurveError as e:
        assert "y^2" in e.equation, f"錯誤應附帶方程: {e.equation}"

    try:
        EllipticCurve(0, 0)
        assert False, "奇異曲線應被拒絕"
    except MalformedInputError:
        pass

    print("群律測試通過！")


def test_paper_configuration():
    """內置配置的九個點都在曲線上並滿足格座標關係"""
    print("\n測試內置配置...")

    cfg = paper_config()
    assert len(cfg.points) == 9, "內置配置應有九個點"
    assert all(CURVE.contains(p.x, p.y) for p in cfg.points), "九個點都應在曲線上"
    assert cfg.points[5] == ECPoint(5234, -378661), f"p6 錯誤: {cfg.points[5]}"

    basis = (cfg.points[0], cfg.points[2])
    for index, ((m, n), point) in enumerate(zip(PAPER_LATTICE["coords"], cfg.points), start=1):
        combined = ec_linear_combination(CURVE, (m, n), basis)
        assert combined == point, f"p{index} 應等於 {m}*p1 + {n}*p3"

    rows = relation_table(cfg)
    assert len(rows) == 7, f"除基點外應有七條關係: {len(rows)}"
    assert all(row["holds"] for row in rows), f"格座標關係不成立: {rows}"

    print("內置配置測試通過！")


def test_group_axioms():
    """在樣本點上測試結合律、交換律與分配律"""
    print("\n測試群公理...")

    sample = list(P) + [INFINITY, ec_neg(CURVE, P[0])]
    for a, b, c in itertools.product(sample, repeat=3):
        left = ec_add(CURVE, ec_add(CURVE, a, b), c)
        right = ec_add(CURVE, a, ec_add(CURVE, b, c))
        assert left == right, f"結合律不成立: {a}, {b}, {c}"
    for a, b in itertools.product(sample[:6] + sample[-2:], repeat=2):
        assert ec_add(CURVE, a, b) == ec_add(CURVE, b, a), f"交換律不成立: {a}, {b}"
        for n in (-2, 3):
            lhs = ec_scalar_mul(CURVE, n, ec_add(CURVE, a, b))
            rhs = ec_add(CURVE, ec_scalar_mul(CURVE, n, a), ec_scalar_mul(CURVE, n, b))
            assert lhs == rhs, f"分配律不成立: n={n}"

    # (m+n)P = mP + nP
    for point in (P[0], P[2]):
        multiples = {k: ec_scalar_mul(CURVE, k, point) for k in range(-10, 11)}
        for m, n in itertools.product(range(-5, 6), repeat=2):
            assert multiples[m + n] == ec_add(CURVE, multiples[m], multiples[n]), f"({m}+{n})P 不等於 mP + nP"

    print("群公理測試通過！")


def test_closure_and_height():
    """群運算的結果留在曲線上，倍點的高度遞增"""
    print("\n測試封閉性與高度增長...")

    for a, b in itertools.product(P, repeat=2):
        total = ec_add(CURVE, a, b)
        assert total.is_infinity or CURVE.contains(total.x, total.y), f"{a} + {b} 不在曲線上"

    heights = []
    for n in (2, 4, 8, 16, 32):
        point = ec_scalar_mul(CURVE, n, P[0])
        assert CURVE.contains(point.x, point.y), f"{n}p1 不在曲線上"
        # 有理點 x 座標的分母是平方數
        root = math.isqrt(point.x.denominator)
        assert root * root == point.x.denominator, f"{n}p1 的 x 分母應為平方數"
        heights.append(max(abs(point.x.numerator), point.x.denominator))
    assert all(a < b for a, b in zip(heights, heights[1:])), f"高度應嚴格遞增: {heights}"

    print("封閉性與高度增長測試通過！")


def test_reduction_homomorphism():
    """約化模 p 與加法交換"""
    print("\n測試約化同態...")

    sample = [P[0], P[1], P[2], P[3], P[4], P[6], P[8]]
    for prime in (5, 7, 11, 13):
        for a, b in itertools.product(sample, repeat=2):
            expected = reduce_or_none(ec_add(CURVE, a, b), prime)
            actual = ec_add_mod_p(CURVE, reduce_or_none(a, prime), reduce_or_none(b, prime), prime)
            assert actual == expected, f"模 {prime} 約化同態不成立: {a} + {b}"

    print("約化同態測試通過！")


def test_point_counts():
    """測試有限域上的點數"""
    print("\n測試點計數...")

    assert count_points_fp(CURVE, 5) == 6, "|E(F_5)| 應為 6"
    assert count_points_fp(CURVE, 7) == 13, "|E(F_7)| 應為 13"
    for prime in (11, 13, 19):
        assert count_points_fp(CURVE, prime) == naive_count(CURVE, prime), f"模 {prime} 點數與枚舉不一致"

    for prime in (2, 3, 17):
        try:
            count_points_fp(CURVE, prime)
            assert False, f"{prime} 是壞約化質數"
        except BadReductionError as e:
            assert e.prime == prime, "錯誤應附帶質數"

    try:
        count_points_fp(CURVE, 9)
        assert False, "非質數應被拒絕"
    except MalformedInputError:
        pass

    try:
        count_points_fp(CURVE, 1009)
        assert False, "超出上限的質數應被拒絕"
    except CapExceededError:
        pass

    print("點計數測試通過！")


def test_torsion():
    """測試撓子群證書"""
    print("\n測試撓點證書...")

    certificate = torsion_is_trivial(CURVE, [5, 7])
    assert certificate.orders == (6, 13), f"點數錯誤: {certificate.orders}"
    assert certificate.gcd == 1 and certificate.trivial, "撓子群應平凡"

    # 只用 p = 5 時 |E(F_5)| = 6，無法下結論
    single = torsion_is_trivial(CURVE, [5])
    assert single.orders == (6,) and single.gcd == 6, f"單一質數的 gcd 應為 6: {single.gcd}"
    assert not single.conclusive, "只用 5 應結論不定"
    assert single.to_dict()["status"] == "inconclusive", "狀態應為 inconclusive"

    # y^2 = x^3 + 1 有 6 階撓點
    six = torsion_is_trivial(EllipticCurve(0, 1), [5, 7])
    assert not six.trivial and six.gcd % 6 == 0, f"gcd 應被 6 整除: {six.gcd}"

    assert two_torsion_is_trivial(CURVE).trivial, "E(Q)[2] 應平凡"
    witness = two_torsion_is_trivial(EllipticCurve(0, 8))
    assert not witness.trivial and witness.root == -2, f"應找到根 -2: {witness.root}"
    assert two_torsion_is_trivial(EllipticCurve(-1, 0)).root == 0, "x^3 - x 有根 0"

    print("撓點證書測試通過！")


def test_halving_and_independence():
    """測試整數二分與無關性證書"""
    print("\n測試無關性證書...")

    for target in (-2, 2, 4):
        assert integral_halving_witnesses(CURVE, target) == [], f"x={target} 不應有整數二分"
    assert integral_halving_witnesses(CURVE, 8) == [-2], "x=8 的二分應為 -2（p7 = 2p1）"

    certificate = independence_certificate(CURVE, P[0], P[2])
    assert certificate.passed, f"p1 與 p3 應無關: {certificate.reasons}"
    assert certificate.difference == P[3], "p1 - p3 應為 p4"
    assert [label for label, _, _ in certificate.halving] == ["P", "Q", "P-Q"], "子檢查記錄不完整"

    dependent = independence_certificate(CURVE, P[0], P[6])
    assert not dependent.passed, "p1 與 p7 = 2p1 不應無關"

    try:
        independence_certificate(CURVE, P[0], P[8])
        assert False, "非整數點應被拒絕"
    except MalformedInputError:
        pass

    print("無關性證書測試通過！")


def test_point_parsing():
    """測試點的解析與序列化"""
    print("\n測試點解析...")

    assert ECPoint.parse("inf") == INFINITY, "無窮遠點解析錯誤"
    assert ECPoint.parse("(1/4, −33/8)") == P[8], "分數座標解析錯誤"
    assert ECPoint.from_dict(P[8].to_dict()) == P[8], "序列化重建錯誤"
    assert INFINITY.to_dict() == "inf", "無窮遠點序列化錯誤"
    assert P[0].to_projective() == (Fraction(-2), Fraction(3), Fraction(1)), "射影座標錯誤"

    try:
        ECPoint.parse("1,2,3")
        assert False, "三個座標應被拒絕"
    except MalformedInputError:
        pass

    print("點解析測試通過！")


def main():
    """主函數"""
    print("開始測試橢圓曲線模組...\n")

    test_group_law()
    test_paper_configuration()
    test_group_axioms()
    test_closure_and_height()
    test_reduction_homomorphism()
    test_point_counts()
    test_torsion()
    test_halving_and_independence()
    test_point_parsing()

    print("\n所有橢圓曲線測試通過！")


if __name__ == "__main__":
    main()
