#!/usr/bin/env python3
"""
duvalcert 示例腳本 - 展示如何用套件協調器與任務管理器逐步執行驗證套件
"""

import os
import sys
from pathlib import Path

# 添加套件目錄到路徑
sys.path.append(str(Path(__file__).parent / "duval_system"))

from duvalcert.config import load_config, setup_logging
from duvalcert.generality import sum_expression
from duvalcert.point_config import paper_config
from duvalcert.report import RunReport, digest
from duvalcert.suite_coordinator import build_paper_suite


def save_to_file(content, filename):
    """保存內容到文件"""
    os.makedirs(os.path.dirname(filename), exist_ok=True)
    with open(filename, "w", encoding="utf-8") as f:
        f.write(content)
    print(f"已保存到文件: {filename}")


def main():
    """主函數"""
    print("duvalcert 示例 - 九點組態驗證套件")

    config = load_config(overrides={"suite": {"k": 12, "genera": [1, 2, 3]}})
    setup_logging(config)

    cfg = paper_config()
    print(f"配置: {cfg.name}，曲線 {cfg.curve}")

    # 註冊檢查並建立帶依賴的任務
    coordinator, task_manager = build_paper_suite(config)
    print(f"已註冊檢查: {', '.join(coordinator.list_checks())}")

    context = {
        "cfg": cfg,
        "config": config,
        "k": config["suite"]["k"],
        "seed": config["generic"]["seed"],
        "threads": 2,
    }
    report = RunReport(
        command=["example", f"k={context['k']}"],
        config_digest=digest({"points": cfg.to_dict(), "k": context["k"]}),
    )

    # 逐個取出可執行的任務；依賴任務的結果放進上下文
    step = 1
    while True:
        task = task_manager.get_next_task()
        if task is None:
            break
        print(f"\n{step}. {task['description']}...")
        dependencies = {
            dep: task_manager.get_task(dep)["result"]
            for dep in task_manager.dependencies_of(task["metadata"])
        }
        result = coordinator.coordinate(task, {**context, "dependencies": dependencies})
        task_manager.complete_task(task["id"], result)
        report.add_result(result)

        print(f"   [{'PASS' if result.passed else 'FAIL'}] {result.summary}")
        progress = task_manager.monitor_progress()
        print(f"   進度: {progress['completed']}/{progress['total']}")
        step += 1

    expression = sum_expression(cfg)
    print(f"\n九點之和: {expression.to_dict()}")

    save_to_file(report.to_json(), "./reports/paper_suite.json")
    print("\n總體結果: " + ("PASS" if report.passed else "FAIL"))


if __name__ == "__main__":
    main()
