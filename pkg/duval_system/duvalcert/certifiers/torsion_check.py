"""
撓點檢查模組 - 撓子群平凡性與基點無關性證書
"""

from typing import Any, Dict, Tuple

from ..elliptic import independence_certificate, torsion_is_trivial
from .base_check import BaseCheck


class TorsionCheck(BaseCheck):
    """
    撓點與無關性檢查

    先用預設質數證明撓子群平凡，再對格基點給出無關性證書；
    額外質數上的點數也一併記錄。
    """

    def __init__(self, config: Dict[str, Any], name: str = "torsion"):
        super().__init__(name, "torsion and independence", config)

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        cfg = context["cfg"]
        section = self.config.get("torsion", {})
        primes = section.get("primes", [5, 7])
        extra = section.get("extra_primes", [])

        torsion = torsion_is_trivial(cfg.curve, primes)
        payload = {"torsion": torsion.to_dict()}
        if extra:
            payload["extra_torsion"] = torsion_is_trivial(cfg.curve, list(primes) + list(extra)).to_dict()

        artifacts = {"torsion": torsion}
        passed = torsion.trivial
        if cfg.lattice is not None:
            p, q = cfg.basis_points
            independence = independence_certificate(cfg.curve, p, q, primes)
            payload["independence"] = independence.to_dict()
            artifacts["independence"] = independence
            passed = passed and independence.passed
            summary = f"torsion gcd {torsion.gcd}; independence {'certified' if independence.passed else 'FAILED'}"
        else:
            summary = f"torsion gcd {torsion.gcd}; no lattice basis to certify"
        return passed, payload, summary, artifacts
