"""
束不變量檢查模組 - Du Val 束的相交數與 Brill-Noether 除子拉回
"""

from typing import Any, Dict, Tuple

from ..moduli import brill_noether_divisor_triples, bn_divisor_pullback, pencil_invariants
from .base_check import BaseCheck


class PencilCheck(BaseCheck):
    """對 2 ≤ g ≤ 上限檢查 (λ, δ_0, δ_1, δ_rest) = (g, 6g+6, 1, 0) 與拉回為零"""

    def __init__(self, config: Dict[str, Any], name: str = "pencil"):
        super().__init__(name, "pencil invariants", config)

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        max_genus = self.config["suite"]["pencil_max_genus"]
        rows = []
        passed = True
        divisors = 0
        for g in range(2, max_genus + 1):
            inv = pencil_invariants(g)
            expected = (inv.lambda_, inv.delta0, inv.delta1, inv.delta_rest) == (g, 6 * g + 6, 1, 0)
            brackets = {f"{r},{d}": str(bn_divisor_pullback(g, r, d)) for r, d in brill_noether_divisor_triples(g)}
            vanish = all(v == "0" for v in brackets.values())
            divisors += len(brackets)
            ok = expected and inv.check_identities() and vanish
            passed = passed and ok
            rows.append({"g": g, "invariants": inv.to_dict(), "bn_pullbacks": brackets, "ok": ok})

        summary = f"g in [2, {max_genus}]; {divisors} Brill-Noether divisors, all pullbacks zero" if passed else "pencil identities FAILED"
        return passed, {"genera": rows}, summary, {}
