#!/usr/bin/env python3
"""
奇異點掃描測試腳本
"""

import sys
from fractions import Fraction
from pathlib import Path

# 添加項目根目錄到路徑
sys.path.append(str(Path(__file__).parent.parent))

from duvalcert.config import load_config
from duvalcert.errors import CapExceededError
from duvalcert.plane_poly import PlanePoly, normalize_point, weierstrass_cubic
from duvalcert.plane_systems import duval_problem, generic_member, solve_system
from duvalcert.point_config import paper_config
from duvalcert.singular_locus import singular_locus


def test_smooth_cubic():
    """光滑三次曲線沒有奇異點"""
    print("測試光滑曲線...")

    locus = singular_locus(weierstrass_cubic(0, 17))
    assert locus.points == (), f"J' 應光滑: {locus.points}"
    assert locus.to_dict() == {"points": [], "unresolved_degrees": []}, "序列化錯誤"

    print("光滑曲線測試通過！")


def test_nodal_cubic():
    """節點三次曲線 Y^2 Z = X^3 + X^2 Z 在原點有二重點"""
    print("\n測試節點曲線...")

    nodal = PlanePoly.from_terms(3, {(3, 0, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1})
    locus = singular_locus(nodal)
    assert len(locus.points) == 1, f"應恰有一個奇異點: {locus.points}"
    point = locus.points[0]
    assert point.point == (Fraction(0), Fraction(0), Fraction(1)), f"奇異點位置錯誤: {point.point}"
    assert point.multiplicity == 2, "節點的重數應為 2"

    print("節點曲線測試通過！")


def test_point_at_infinity():
    """尖點在無窮遠直線上的曲線"""
    print("\n測試無窮遠奇異點...")

    # Y Z^2 = X^3 在 (0:1:0) 處有尖點
    cusp = PlanePoly.from_terms(3, {(3, 0, 0): 1, (0, 1, 2): -1})
    locus = singular_locus(cusp)
    assert [p.point for p in locus.points] == [(Fraction(0), Fraction(1), Fraction(0))], f"奇異點錯誤: {locus.points}"
    assert locus.points[0].multiplicity == 2, "尖點的重數應為 2"

    print("無窮遠奇異點測試通過！")


def test_conic_and_duval_member():
    """光滑圓錐曲線；L_2 的一般成員恰在 p1..p8 有二重點"""
    print("\n測試圓錐曲線與 Du Val 曲線...")

    conic = PlanePoly.from_terms(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1})
    assert singular_locus(conic).points == (), "X^2 + Y^2 - Z^2 應光滑"

    cfg = paper_config()
    config = load_config()
    result = solve_system(duval_problem(cfg, 2))
    member = generic_member(result, config["generic"]["seed"], config["generic"]["coefficient_range"])
    locus = singular_locus(member)

    expected = {normalize_point(p.to_projective()) for p in cfg.points[:8]}
    assert {p.point for p in locus.points} == expected, f"奇異點應恰為 p1..p8: {locus.points}"
    assert all(p.multiplicity == 2 for p in locus.points), "p1..p8 應為二重點"
    assert normalize_point(cfg.points[8].to_projective()) not in {p.point for p in locus.points}, "p9 應為光滑點"

    print("圓錐曲線與 Du Val 曲線測試通過！")


def test_caps():
    """次數上限"""
    print("\n測試次數上限...")

    high = PlanePoly.from_terms(10, {(10, 0, 0): 1, (0, 0, 10): 1})
    try:
        singular_locus(high)
        assert False, "超過上限的次數應被拒絕"
    except CapExceededError:
        pass

    line = PlanePoly.variable("X")
    assert singular_locus(line).points == (), "直線沒有奇異點"

    print("次數上限測試通過！")


def main():
    """主函數"""
    print("開始測試奇異點掃描...\n")

    test_smooth_cubic()
    test_nodal_cubic()
    test_point_at_infinity()
    test_conic_and_duval_member()
    test_caps()

    print("\n所有奇異點掃描測試通過！")


if __name__ == "__main__":
    main()
