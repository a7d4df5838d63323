"""
套件協調器模組 - 管理檢查的註冊，並按任務依賴順序執行完整驗證套件
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from .certifiers import (
    BaseCheck,
    CheckResult,
    GeneralityCheck,
    PencilCheck,
    RelationsCheck,
    SystemsCheck,
    TorsionCheck,
)
from .errors import DuvalError
from .point_config import PointConfig
from .report import RunReport, digest
from .task_manager import TaskManager

logger = logging.getLogger(__name__)


class SuiteCoordinator:
    """
    套件協調器，負責管理檢查並把任務分派給對應的檢查

    屬性:
        checks (Dict[str, BaseCheck]): 檢查字典
        config (Dict[str, Any]): 配置
    """

    def __init__(self, config: Dict[str, Any]):
        """
        初始化套件協調器

        參數:
            config (Dict[str, Any]): 配置
        """
        self.checks: Dict[str, BaseCheck] = {}
        self.config = config

    def register_check(self, check: BaseCheck) -> None:
        """
        註冊檢查

        參數:
            check (BaseCheck): 檢查
        """
        self.checks[check.name] = check

    def get_check(self, name: str) -> Optional[BaseCheck]:
        return self.checks.get(name)

    def remove_check(self, name: str) -> None:
        self.checks.pop(name, None)

    def list_checks(self) -> List[str]:
        return list(self.checks.keys())

    def get_all_checks(self) -> List[BaseCheck]:
        return list(self.checks.values())

    def coordinate(self, task: Dict[str, Any], context: Dict[str, Any]) -> CheckResult:
        """
        把任務交給負責的檢查執行

        參數:
            task (Dict[str, Any]): 任務，metadata["assigned_to"] 指定檢查名稱
            context (Dict[str, Any]): 共用上下文

        返回:
            CheckResult: 檢查結果

        異常:
            DuvalError: 負責的檢查未註冊
        """
        name = task["metadata"].get("assigned_to", task["id"])
        check = self.get_check(name)
        if check is None:
            raise DuvalError(f"No check registered for task {task['id']} ({name})")
        return check.run(context)

    def run_tasks(self, task_manager: TaskManager, context: Dict[str, Any]) -> List[CheckResult]:
        """
        依次執行所有可執行的任務，直到沒有任務可執行

        每個任務的上下文中 "dependencies" 是其依賴任務的結果。
        """
        results = []
        while True:
            task = task_manager.get_next_task()
            if task is None:
                break
            dependencies = {
                dep: task_manager.get_task(dep)["result"]
                for dep in task_manager.dependencies_of(task["metadata"])
            }
            result = self.coordinate(task, {**context, "dependencies": dependencies})
            task_manager.complete_task(task["id"], result)
            results.append(result)
            logger.debug("Progress: %s", task_manager.monitor_progress())

        if task_manager.get_pending_tasks():
            raise DuvalError(f"Unschedulable tasks: {[t['id'] for t in task_manager.get_pending_tasks()]}")
        return results


def build_paper_suite(config: Dict[str, Any]) -> Tuple[SuiteCoordinator, TaskManager]:
    """
    註冊全部檢查並建立套件任務

    順序：點關係；撓點與無關性；一般性（依賴撓點證書）；線性系統；束不變量。
    """
    coordinator = SuiteCoordinator(config)
    for check_class in (RelationsCheck, TorsionCheck, GeneralityCheck, SystemsCheck, PencilCheck):
        coordinator.register_check(check_class(config))

    tasks = TaskManager()
    tasks.add_task("relations", "verify the lattice relations among the nine points", {"assigned_to": "relations"})
    tasks.add_task("torsion", "certify trivial torsion and independence of the basis", {"assigned_to": "torsion", "depends_on": "relations"})
    tasks.add_task("generality", "certify k-generality and generality for every k", {"assigned_to": "generality", "depends_on": "torsion"})
    tasks.add_task("systems", "solve the cubic and Du Val systems, verify base points", {"assigned_to": "systems", "depends_on": "relations"})
    tasks.add_task("pencil", "pencil invariants and Brill-Noether pullbacks", {"assigned_to": "pencil"})
    return coordinator, tasks


def run_paper_suite(cfg: PointConfig, config: Dict[str, Any], command: List[str], k: Optional[int] = None,
                    seed: Optional[int] = None, threads: int = 1) -> RunReport:
    """
    執行完整套件

    參數:
        cfg (PointConfig): 點配置
        config (Dict[str, Any]): 配置
        command (List[str]): 命令回顯
        k (Optional[int]): 覆寫套件的 k
        seed (Optional[int]): 隨機種子
        threads (int): 線程數

    返回:
        RunReport: 報告，passed 為全部檢查都通過
    """
    seed = config["generic"]["seed"] if seed is None else seed
    k = config["suite"]["k"] if k is None else k
    coordinator, tasks = build_paper_suite(config)
    report = RunReport(
        command=command,
        config_digest=digest({"points": cfg.to_dict(), "k": k, "seed": seed, "suite": config["suite"]}),
        payload={"configuration": cfg.name, "k": k, "seed": seed},
    )
    context = {"cfg": cfg, "config": config, "k": k, "seed": seed, "threads": threads}
    for result in coordinator.run_tasks(tasks, context):
        report.add_result(result)
    report.payload["failed"] = [r.name for r in report.failed_results()]
    logger.info("Suite %s: %d checks", "passed" if report.passed else "FAILED", len(report.results))
    return report
