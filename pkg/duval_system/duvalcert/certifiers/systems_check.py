"""
線性系統檢查模組 - J' 的唯一性、dim L_g = g 與基點驗證
"""

from typing import Any, Dict, Tuple

from ..plane_systems import (
    anticanonical_cubic,
    base_point,
    check_primes,
    cubic_problem,
    duval_problem,
    multiplicity_at,
    solve_system,
)
from .base_check import BaseCheck


class SystemsCheck(BaseCheck):
    """
    線性系統檢查

    每個矩陣都用配置的模質數交叉檢查秩；基點在 L_g 的每個基元素上驗證，
    並檢查它落在 J' 上。
    """

    def __init__(self, config: Dict[str, Any], name: str = "systems"):
        super().__init__(name, "linear systems", config)

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        cfg = context["cfg"]
        seed = context.get("seed", self.config["generic"]["seed"])
        primes = check_primes(self.config, seed)
        suite = self.config["suite"]

        cubic_result = solve_system(cubic_problem(cfg), primes)
        cubic = anticanonical_cubic(cfg, primes)
        cubic_mults = [multiplicity_at(cubic, pt) for pt in cfg.projective_points()]
        cubic_ok = (
            cubic_result.projective_dimension == 0
            and cubic_result.modular_agrees
            and all(m == 1 for m in cubic_mults)
        )
        payload = {
            "primes": primes,
            "cubic": {
                "rank": cubic_result.rank,
                "shape": list(cubic_result.shape),
                "projective_dimension": cubic_result.projective_dimension,
                "multiplicities": cubic_mults,
                "polynomial": cubic.to_list(),
            },
            "systems": [],
            "base_points": [],
        }
        passed = cubic_ok

        results = {}
        for g in suite["genera"]:
            result = solve_system(duval_problem(cfg, g), primes)
            results[g] = result
            ok = (
                result.projective_dimension == g
                and result.virtual_dimension == g
                and result.modular_agrees
            )
            passed = passed and ok
            payload["systems"].append({**result.to_dict(include_basis=False), "genus": g, "ok": ok})

        for g in suite["base_point_genera"]:
            bp = base_point(cfg, g, result=results.get(g))
            on_cubic = cubic.evaluate(bp.projective) == 0
            passed = passed and bool(bp.verified) and on_cubic
            payload["base_points"].append({**bp.to_dict(), "on_cubic": on_cubic})

        dims = ", ".join(f"g={g}: {r.projective_dimension}" for g, r in results.items())
        summary = f"cubic rank {cubic_result.rank}; dimensions {dims}; base points {len(payload['base_points'])} checked"
        return passed, payload, summary, {"cubic": cubic, "systems": results}
