#!/usr/bin/env python3
"""
Picard 格與 Nagata 類測試腳本
"""

import sys
from pathlib import Path

# 添加項目根目錄到路徑
sys.path.append(str(Path(__file__).parent.parent))

from duvalcert.errors import MalformedInputError
from duvalcert.generality import point_sum
from duvalcert.picard import (
    HALPHEN_GENERATOR,
    DivisorClass,
    adjunction_genus,
    anticanonical_class,
    canonical_class,
    duval_class,
    duval_class_prime,
    generator_patterns,
    intersect,
    lattice_prediction,
    nagata_classes,
    restrict_to_anticanonical,
)
from duvalcert.point_config import paper_config


def test_intersection_form():
    """測試相交形式與典範類"""
    print("測試相交形式...")

    K9 = canonical_class(9)
    K10 = canonical_class(10)
    assert intersect(K9, K9) == 0, "九點吹脹上 K^2 應為 0"
    assert intersect(K10, K10) == -1, "十點吹脹上 K^2 應為 -1"
    assert anticanonical_class(9) == HALPHEN_GENERATOR, "-K 應為 3l - ΣE_i"

    line = DivisorClass(1, (0,) * 9)
    exceptional = DivisorClass(0, (-1,) + (0,) * 8)
    assert intersect(line, line) == 1, "l^2 應為 1"
    assert intersect(exceptional, exceptional) == -1, "E^2 應為 -1"
    assert adjunction_genus(DivisorClass(3, (0,) * 9)) == 1, "平面三次曲線虧格應為 1"

    try:
        intersect(K9, K10)
        assert False, "長度不同的類不能相交"
    except MalformedInputError:
        pass

    try:
        DivisorClass(1, (0,) * 8)
        assert False, "長度 8 應被拒絕"
    except MalformedInputError:
        pass

    print("相交形式測試通過！")


def test_duval_classes():
    """C(g)^2 = 2g-2、C(g)·J = 0 與虧格 g"""
    print("\n測試 Du Val 類...")

    J = anticanonical_class(10)
    for g in range(2, 101):
        C = duval_class(g)
        assert intersect(C, C) == 2 * g - 2, f"g={g}: C^2 錯誤"
        assert intersect(C, J) == 0, f"g={g}: C·J 應為 0"
        assert adjunction_genus(C) == g, f"g={g}: 虧格錯誤"

    C1 = duval_class_prime(3)
    assert C1 == DivisorClass(9, (3,) * 8 + (2,)), "C' 錯誤"
    assert intersect(C1, anticanonical_class(9)) == 1, "C'·J' 應為 1"

    try:
        duval_class(0)
        assert False, "g = 0 應被拒絕"
    except MalformedInputError:
        pass

    print("Du Val 類測試通過！")


def test_nagata_classes():
    """測試 Nagata 類的枚舉"""
    print("\n測試 Nagata 類...")

    assert [len(generator_patterns(i)) for i in (1, 2, 3)] == [84, 84, 72], "模式數量錯誤"
    assert len(nagata_classes(1)) == 84, "k=1 應有 84 個類"
    assert len(nagata_classes(2)) == 168, "k=2 應有 168 個類"
    assert len(nagata_classes(3)) == 240, "k=3 應有 240 個類"
    assert len(nagata_classes(30)) == 2400, "k=30 應有 2400 個類"

    classes = nagata_classes(30)
    assert [c.sort_key for c in classes] == sorted(c.sort_key for c in classes), "類不在規範順序"
    J = anticanonical_class(9)
    for nagata in classes:
        assert intersect(nagata.cls, nagata.cls) == -2, f"{nagata.describe()} 不是 (-2)-類"
        assert intersect(nagata.cls, J) == 0, f"{nagata.describe()} 在 J' 上次數非零"
        assert nagata.cls.degree <= 30, f"{nagata.describe()} 次數超出 k"

    first = classes[0]
    assert first.to_dict()["pattern"] == [1, 2, 3], "模式應從 1 開始序列化"
    assert first.cls == DivisorClass(1, (1, 1, 1, 0, 0, 0, 0, 0, 0)), "第一個類應為 l - E1 - E2 - E3"

    try:
        nagata_classes(0)
        assert False, "k = 0 應被拒絕"
    except MalformedInputError:
        pass

    print("Nagata 類測試通過！")


def test_restriction():
    """測試到 J' 的限制與格座標預測"""
    print("\n測試限制映射...")

    cfg = paper_config()
    assert restrict_to_anticanonical(HALPHEN_GENERATOR, cfg) == point_sum(cfg), "𝔅 的限制應為 Σp_i"
    assert lattice_prediction(HALPHEN_GENERATOR, cfg) == (13, -2), "Σp_i 的格座標應為 (13, -2)"

    # 2p1 - p4 - p9 = 0
    relation = DivisorClass(0, (2, 0, 0, -1, 0, 0, 0, 0, -1))
    assert restrict_to_anticanonical(relation, cfg).is_infinity, "2p1 - p4 - p9 應為零"
    assert lattice_prediction(relation, cfg) == (0, 0), "格座標預測應為零"

    try:
        restrict_to_anticanonical(DivisorClass(1, (0,) * 9), cfg)
        assert False, "在 J' 上次數非零的類應被拒絕"
    except MalformedInputError:
        pass

    print("限制映射測試通過！")


def main():
    """主函數"""
    print("開始測試 Picard 格...\n")

    test_intersection_form()
    test_duval_classes()
    test_nagata_classes()
    test_restriction()

    print("\n所有 Picard 格測試通過！")


if __name__ == "__main__":
    main()
