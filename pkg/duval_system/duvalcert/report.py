"""
報告模組 - 運行報告與確定性 JSON 輸出
"""

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from . import __version__
from .certifiers.base_check import CheckResult


def canonical_json(data: Any) -> str:
    """緊湊、鍵排序的規範 JSON，用於計算摘要"""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(data: Any) -> str:
    """規範 JSON 的 SHA-256"""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def dumps(data: Any) -> str:
    """輸出用 JSON：鍵排序、縮排 2，逐字節可重現"""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class RunReport:
    """
    一次命令運行的報告

    屬性:
        command (List[str]): 命令回顯
        config_digest (str): 規範化輸入的摘要
        payload (Dict[str, Any]): 結果
        passed (bool): 總體是否通過
        timing (Dict[str, float]): 各步驟耗時，預設不輸出
        results (List[CheckResult]): 套件中的檢查結果
        version (str): 版本
    """
    command: List[str]
    config_digest: str
    payload: Dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    timing: Dict[str, float] = field(default_factory=dict)
    results: List[CheckResult] = field(default_factory=list)
    version: str = __version__

    def add_result(self, result: CheckResult) -> None:
        """
        添加檢查結果並更新總體狀態

        參數:
            result (CheckResult): 檢查結果
        """
        self.results.append(result)
        self.timing[result.name] = result.elapsed
        self.passed = self.passed and result.passed

    def get_result(self, name: str) -> Optional[CheckResult]:
        for result in self.results:
            if result.name == name:
                return result
        return None

    def failed_results(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "command": list(self.command),
            "config_digest": self.config_digest,
            "version": self.version,
            "passed": self.passed,
            "payload": self.payload,
        }
        if self.results:
            data["results"] = [r.to_dict(include_timing) for r in self.results]
        if include_timing:
            data["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return data

    def to_json(self, include_timing: bool = False) -> str:
        return dumps(self.to_dict(include_timing))
