"""
基礎檢查類模組 - 提供所有檢查的準備-執行-記錄流程
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """
    一次檢查的結果

    屬性:
        name (str): 檢查名稱
        passed (bool): 是否通過
        payload (Dict[str, Any]): 可序列化的結果
        summary (str): 一行摘要
        elapsed (float): 耗時（秒），不進入確定性輸出
        artifacts (Dict[str, Any]): 供後續任務使用的證書物件，不序列化
    """
    name: str
    passed: bool
    payload: Dict[str, Any]
    summary: str = ""
    elapsed: float = 0.0
    artifacts: Dict[str, Any] = field(default_factory=dict, repr=False)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "payload": self.payload,
        }
        if include_timing:
            data["elapsed"] = round(self.elapsed, 6)
        return data


class BaseCheck:
    """
    基礎檢查類，提供所有檢查的通用流程

    屬性:
        name (str): 檢查名稱
        role (str): 檢查內容的簡述
        config (Dict[str, Any]): 配置
        history (List[Dict[str, Any]]): 執行記錄
    """

    def __init__(self, name: str, role: str, config: Dict[str, Any]):
        """
        初始化檢查

        參數:
            name (str): 檢查名稱
            role (str): 檢查內容的簡述
            config (Dict[str, Any]): 配置
        """
        self.name = name
        self.role = role
        self.config = config
        self.history: List[Dict[str, Any]] = []

    def prepare(self, context: Dict[str, Any]) -> Dict[str, Any]:
        """
        準備執行參數，可以被子類重寫

        參數:
            context (Dict[str, Any]): 上下文（配置、點配置、依賴任務的結果）

        返回:
            Dict[str, Any]: 傳給 execute 的上下文
        """
        return context

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        """
        執行檢查，子類必須實現

        返回:
            Tuple: (是否通過, 可序列化結果, 摘要, 證書物件)
        """
        raise NotImplementedError(f"{type(self).__name__} must implement execute()")

    def observe(self, result: CheckResult) -> CheckResult:
        """記錄結果"""
        self.history.append({"type": "result", "passed": result.passed, "summary": result.summary})
        return result

    def run(self, context: Dict[str, Any]) -> CheckResult:
        """
        執行準備-執行-記錄流程

        參數:
            context (Dict[str, Any]): 上下文

        返回:
            CheckResult: 檢查結果
        """
        logger.info("Running check %s (%s)", self.name, self.role)
        start = time.perf_counter()
        prepared = self.prepare(context)
        passed, payload, summary, artifacts = self.execute(prepared)
        elapsed = time.perf_counter() - start
        logger.info("Check %s %s in %.2fs: %s", self.name, "passed" if passed else "FAILED", elapsed, summary)
        return self.observe(CheckResult(self.name, passed, payload, summary, elapsed, artifacts))
