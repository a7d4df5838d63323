"""
一般性檢查模組 - 有限 k 的直接證明、對所有 k 的論證與格座標交叉驗證
"""

from typing import Any, Dict, Tuple

from ..generality import certify_all_k, certify_k, cross_validate_lattice
from .base_check import BaseCheck

CROSS_VALIDATION_K = 30


class GeneralityCheck(BaseCheck):
    """
    k-一般性檢查

    有限 k 時逐個計算 d·Σp_i 與全部 Nagata 類的限制，不使用撓點捷徑；
    若依賴任務提供了無關性證書，則直接用於對所有 k 的論證。
    """

    def __init__(self, config: Dict[str, Any], name: str = "generality"):
        super().__init__(name, "k-generality", config)

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        cfg = context["cfg"]
        k = context.get("k") or self.config["suite"]["k"]
        threads = context.get("threads", self.config["certify"]["threads"])

        finite = certify_k(cfg, k, torsion=None, threads=threads)
        payload = {"finite": finite.to_dict()}
        passed = finite.passed
        parts = [f"k={k} {'pass' if finite.passed else 'FAIL'}"]

        if cfg.lattice is not None:
            torsion_result = context.get("dependencies", {}).get("torsion")
            independence = torsion_result.artifacts.get("independence") if torsion_result else None
            all_k = certify_all_k(
                cfg,
                independence=independence,
                fallback_k=self.config["certify"]["fallback_k"],
                primes=self.config["torsion"]["primes"],
                threads=threads,
            )
            cross = cross_validate_lattice(cfg, min(k, CROSS_VALIDATION_K))
            payload["all_k"] = all_k.to_dict()
            payload["cross_validation"] = cross.to_dict()
            passed = passed and all_k.all_k and cross.passed
            parts.append(f"all-k {'pass' if all_k.all_k else 'FAIL'}")
            parts.append(f"cross-validation {cross.agreements}/{cross.total}")

        return passed, payload, "; ".join(parts), {"finite": finite}
