#!/usr/bin/env python3
"""
k-一般性證書測試腳本
"""

import sys
from pathlib import Path

# 添加項目根目錄到路徑
sys.path.append(str(Path(__file__).parent.parent))

from duvalcert.elliptic import ECPoint, ec_linear_combination, ec_neg, ec_scalar_mul, torsion_is_trivial
from duvalcert.errors import MalformedInputError
from duvalcert.generality import (
    certify_all_k,
    certify_cremona,
    certify_halphen,
    certify_k,
    cone_argument,
    cross_validate_lattice,
    point_sum,
    sum_expression,
)
from duvalcert.picard import HALPHEN_GENERATOR, DivisorClass
from duvalcert.point_config import LatticeCoordinates, PointConfig, paper_config

CFG = paper_config()
CURVE = CFG.curve
COORDS = CFG.lattice.coords


def with_lattice_point(index, coords, name):
    """把第 index 個點換成 m·p1 + n·p3，並保留格座標"""
    point = ec_linear_combination(CURVE, coords, CFG.basis_points)
    new_coords = list(COORDS)
    new_coords[index - 1] = tuple(coords)
    points = list(CFG.points)
    points[index - 1] = point
    return PointConfig(CURVE, tuple(points), LatticeCoordinates((1, 3), tuple(new_coords)), name)


def halphen_special_config():
    """p9 換成 -(p1 + ... + p8)，使 Σp_i = 0"""
    return with_lattice_point(9, (-12, 3), "halphen-special")


def cremona_special_config():
    """前三個點 p1、p3、-(p1 + p3) 之和為零"""
    p = CFG.points
    points = (p[0], p[2], ec_neg(CURVE, p[8]), p[1], p[3], p[4], p[5], p[6], p[7])
    return PointConfig(CURVE, points, name="cremona-special")


def test_paper_configuration():
    """測試內置配置在 k = 60 的證書"""
    print("測試內置配置的一般性...")

    certificate = certify_k(CFG, 60)
    assert certificate.passed, "內置配置應為 60-一般"
    assert certificate.halphen.checked == tuple(range(1, 21)), "Halphen 應檢查 d = 1..20"
    assert not certificate.halphen.short_circuit, "有限 k 預設不使用撓點捷徑"
    assert certificate.cremona.classes_checked == 4800, f"k=60 類數錯誤: {certificate.cremona.classes_checked}"
    assert certificate.witness is None, "通過的證書不應有見證"

    small = certify_k(CFG, 2)
    assert small.passed and small.halphen is None, "k < 3 時 Halphen 條件自動成立"

    shortcut = certify_halphen(CFG, 30, torsion_is_trivial(CURVE, [5, 7]))
    assert shortcut.passed and shortcut.short_circuit and shortcut.checked == (1,), "撓點捷徑錯誤"

    for bad in (0, -3):
        try:
            certify_k(CFG, bad)
            assert False, f"k={bad} 應被拒絕"
        except MalformedInputError:
            pass

    print("內置配置一般性測試通過！")


def test_all_k():
    """測試對所有 k 的論證"""
    print("\n測試對所有 k 的論證...")

    certificate = certify_all_k(CFG)
    assert certificate.passed and certificate.all_k and certificate.k == "all", "內置配置應對所有 k 一般"
    assert certificate.cone.values == (1, 1, 1, 0, 2, 1, 2, 1, 2), f"泛函值錯誤: {certificate.cone.values}"
    assert certificate.cone.zero_points == (4,), "只有 p4 的泛函值為 0"

    positive = with_lattice_point(4, (0, 2), "all-positive")
    assert positive.points[3] == ec_scalar_mul(CURVE, 2, CFG.points[2]), "p4 應換成 2p3"
    assert certify_all_k(positive).all_k, "全部泛函值為正時論證應成立"

    opposite = with_lattice_point(9, (-1, 1), "opposite")
    assert opposite.points[8] == ECPoint(4, -9), "p9 應換成 -p4"
    cone = cone_argument(opposite)
    assert not cone.passed and cone.opposite_pairs == ((4, 9),), f"應檢測到相反向量: {cone.opposite_pairs}"
    fallback = certify_all_k(opposite, fallback_k=9)
    assert not fallback.all_k and fallback.k == 9, "論證失敗時應回退到有限 k"
    assert fallback.cone is cone or fallback.cone == cone, "回退證書應保留論證記錄"

    no_lattice = cremona_special_config()
    try:
        certify_all_k(no_lattice)
        assert False, "沒有格座標時應報錯"
    except MalformedInputError:
        pass

    print("對所有 k 的論證測試通過！")


def test_negative_controls():
    """Σp_i = 0 與三點和為零的反例"""
    print("\n測試反例...")

    halphen = halphen_special_config()
    assert point_sum(halphen).is_infinity, "Σp_i 應為零"
    certificate = certify_halphen(halphen, 3)
    assert not certificate.passed and certificate.failing_d == 1, "Halphen 應在 d = 1 失敗"
    assert certificate.witness == HALPHEN_GENERATOR, "見證應為 3l - ΣE_i"
    combined = certify_k(halphen, 3)
    assert not combined.passed and combined.witness == HALPHEN_GENERATOR, "k-一般性見證錯誤"
    assert not certify_all_k(halphen, fallback_k=3).passed, "反例不應對所有 k 一般"

    cremona = cremona_special_config()
    result = certify_cremona(cremona, 1)
    assert not result.passed, "三點和為零時 Cremona 應失敗"
    assert result.witness.i == 1 and result.witness.pattern == (0, 1, 2), f"見證模式錯誤: {result.witness.describe()}"
    assert result.witness.cls == DivisorClass(1, (1, 1, 1, 0, 0, 0, 0, 0, 0)), "見證類應為 l - E1 - E2 - E3"
    assert result.needs_inspection, "限制平凡的類需要人工判斷"

    print("反例測試通過！")


def test_thread_independence():
    """多線程的見證與單線程一致"""
    print("\n測試線程無關性...")

    cremona = cremona_special_config()
    single = certify_cremona(cremona, 30, threads=1)
    for threads in (2, 4, 7):
        parallel = certify_cremona(cremona, 30, threads=threads)
        assert parallel == single, f"threads={threads} 的結果與單線程不同"

    assert certify_k(CFG, 30, threads=4).to_dict() == certify_k(CFG, 30, threads=1).to_dict(), "通過的證書應與線程數無關"

    print("線程無關性測試通過！")


def test_cross_validation():
    """格座標預測與群律計算一致"""
    print("\n測試交叉驗證...")

    cross = cross_validate_lattice(CFG, 30)
    assert cross.passed and cross.agreements == cross.total == 2400, f"一致數錯誤: {cross.agreements}/{cross.total}"
    assert cross.trivial_count == 0, "內置配置不應有平凡限制"

    expression = sum_expression(CFG)
    assert expression.lattice_sum == (13, -2), "格座標之和錯誤"
    assert expression.matches == ((13, -2),), f"Σp_i 的表達式錯誤: {expression.matches}"
    assert expression.checked == ((13, -1), (13, -2)), "候選列表錯誤"
    assert expression.total == ec_linear_combination(CURVE, (13, -2), CFG.basis_points), "Σp_i 錯誤"
    assert not expression.total.is_infinity, "Σp_i 不應為零"

    print("交叉驗證測試通過！")


def main():
    """主函數"""
    print("開始測試一般性證書...\n")

    test_paper_configuration()
    test_all_k()
    test_negative_controls()
    test_thread_independence()
    test_cross_validation()

    print("\n所有一般性證書測試通過！")


if __name__ == "__main__":
    main()
