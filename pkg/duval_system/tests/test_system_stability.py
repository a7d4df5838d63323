#!/usr/bin/env python3
"""
命令列穩定性與可重現性測試腳本
"""

import io
import json
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

# 添加項目根目錄到路徑
sys.path.append(str(Path(__file__).parent.parent))

from duvalcert.cli import cmd_dispatch
from duvalcert.point_config import PointConfig, paper_config


def run_cli(*argv):
    """執行命令並返回 (退出碼, stdout)"""
    out = io.StringIO()
    with redirect_stdout(out), redirect_stderr(io.StringIO()):
        code = cmd_dispatch(list(argv))
    return code, out.getvalue()


def write_config(data):
    handle = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False, encoding="utf-8")
    with handle:
        json.dump(data, handle)
    return handle.name


def test_exit_codes():
    """退出碼：0 成功、1 失敗、2 輸入錯誤"""
    print("測試退出碼...")

    assert run_cli("pencil", "--genus", "1")[0] == 2, "g = 1 應返回 2"
    assert run_cli("pencil", "--genus", "7", "--bn", "1,4")[0] == 0, "束不變量應返回 0"
    assert run_cli("pencil", "--genus", "7", "--bn", "1,5")[0] == 2, "ρ ≠ -1 應返回 2"
    assert run_cli("certify", "--points", "paper", "--k", "0")[0] == 2, "k = 0 應返回 2"
    assert run_cli("certify", "--points", "paper")[0] == 2, "缺少 --k/--all 應返回 2"
    assert run_cli("bogus")[0] == 2, "未知子命令應返回 2"
    assert run_cli("ec", "add", "--P", "1,1", "--Q", "p1")[0] == 2, "不在曲線上的點應返回 2"
    assert run_cli("ec", "count", "--prime", "17")[0] == 2, "壞約化質數應返回 2"
    assert run_cli("ec", "torsion", "--curve", "0,1")[0] == 1, "撓點不定應返回 1"
    assert run_cli("certify", "--points", "/nonexistent.json", "--k", "3")[0] == 2, "不存在的文件應返回 2"

    data = paper_config().to_dict()
    data["points"][8] = ["4", "9"]
    data.pop("lattice")
    assert run_cli("certify", "--points", write_config(data), "--k", "3")[0] == 2, "重複的點應返回 2"

    special = paper_config().to_dict()
    special.pop("lattice")
    special["points"] = [special["points"][0], special["points"][2], ["1/4", "33/8"]] + [
        special["points"][i] for i in (1, 3, 4, 5, 6, 7)
    ]
    assert run_cli("certify", "--points", write_config(special), "--k", "3")[0] == 1, "Cremona 反例應返回 1"

    print("退出碼測試通過！")


def test_ec_commands():
    """ec 子命令的 JSON 輸出"""
    print("\n測試 ec 子命令...")

    code, out = run_cli("ec", "count", "--prime", "5", "--json")
    assert code == 0 and json.loads(out)["payload"]["count"] == 6, "|E(F_5)| 應為 6"

    code, out = run_cli("ec", "mul", "--P=-2,3", "--n", "2", "--json")
    assert code == 0 and json.loads(out)["payload"]["result"] == ["8", "-23"], "2p1 應為 (8,-23)"

    code, out = run_cli("ec", "add", "--P", "p1", "--Q", "p3", "--json")
    assert json.loads(out)["payload"]["result"] == ["1/4", "-33/8"], "p1 + p3 錯誤"

    code, out = run_cli("ec", "halve", "--x", "8", "--json")
    assert code == 0 and json.loads(out)["payload"]["witnesses"] == [-2], "x=8 的二分應為 -2"

    code, out = run_cli("ec", "independent", "--json")
    assert code == 0 and json.loads(out)["payload"]["certificate"]["passed"], "p1 與 p3 應無關"

    print("ec 子命令測試通過！")


def test_certify_and_systems():
    """certify、system 與 cubic 子命令"""
    print("\n測試證書與系統子命令...")

    code, out = run_cli("certify", "--points", "paper", "--all", "--json")
    report = json.loads(out)
    assert code == 0 and report["payload"]["certificate"]["k"] == "all", "內置配置應對所有 k 一般"

    code, out = run_cli("system", "--genus", "2", "--points", "paper", "--json", "--verify-base-point")
    report = json.loads(out)
    assert code == 0, "L_2 應返回 0"
    assert len(report["payload"]["system"]["basis"]) == 3, "L_2 的基應有 3 個元素"
    assert report["payload"]["base_point"]["verified"], "基點應驗證通過"

    code, out = run_cli("system", "--genus", "1", "--points", "paper", "--json", "--scan-singularities")
    assert code == 0 and "singularities" in json.loads(out)["payload"], "奇異點掃描缺失"

    code, out = run_cli("cubic", "--points", "paper", "--json")
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["multiplicities"] == [1] * 9, "J' 的重數應全為 1"
    assert payload["equals_weierstrass_equation"], "J' 應為 Weierstrass 方程"

    print("證書與系統子命令測試通過！")


def test_determinism():
    """重複運行與不同線程數的輸出逐字節相同"""
    print("\n測試可重現性...")

    runs = [run_cli("certify", "--points", "paper", "--k", "30", "--json", "--threads", str(t)) for t in (1, 1, 4)]
    assert all(code == 0 for code, _ in runs), "證書應通過"
    assert runs[0][1] == runs[1][1] == runs[2][1], "輸出與運行次數或線程數有關"

    _, timed = run_cli("certify", "--points", "paper", "--k", "3", "--json", "--timing")
    _, untimed = run_cli("certify", "--points", "paper", "--k", "3", "--json")
    assert "timing" in json.loads(timed) and "timing" not in json.loads(untimed), "耗時只應在 --timing 時輸出"

    # 同一路徑下點文件內容改變時，配置摘要也要改變
    path = write_config(paper_config().to_dict())
    digests = []
    for _ in range(2):
        _, out = run_cli("certify", "--points", path, "--k", "3", "--json")
        digests.append(json.loads(out)["config_digest"])
    reordered = paper_config().to_dict()
    reordered.pop("lattice")
    reordered["points"][1], reordered["points"][3] = reordered["points"][3], reordered["points"][1]
    Path(path).write_text(json.dumps(reordered), encoding="utf-8")
    _, out = run_cli("certify", "--points", path, "--k", "3", "--json")
    digests.append(json.loads(out)["config_digest"])
    assert digests[0] == digests[1], "相同輸入的摘要應相同"
    assert digests[1] != digests[2], f"點文件內容不同時摘要應不同: {digests}"

    cfg = paper_config()
    assert PointConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg, "內置配置序列化後應不變"

    print("可重現性測試通過！")


def test_paper_suite():
    """完整套件"""
    print("\n測試完整套件...")

    code, out = run_cli("paper-suite", "--k", "3", "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"], f"縮減套件應通過: {report['payload'].get('failed')}"
    assert [r["name"] for r in report["results"]] == ["relations", "torsion", "generality", "systems", "pencil"], "檢查順序錯誤"

    code, out = run_cli("paper-suite", "--json")
    assert code == 0 and json.loads(out)["passed"], "完整套件應通過"

    print("完整套件測試通過！")


def main():
    """主函數"""
    print("開始測試系統穩定性...\n")

    test_exit_codes()
    test_ec_commands()
    test_certify_and_systems()
    test_determinism()
    test_paper_suite()

    print("\n所有系統穩定性測試通過！")


if __name__ == "__main__":
    main()
