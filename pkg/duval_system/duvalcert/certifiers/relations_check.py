"""
關係檢查模組 - 驗證九個點之間的格座標關係，並確定 Σp_i 的表達式
"""

from typing import Any, Dict, Tuple

from ..generality import sum_expression
from ..point_config import relation_table
from .base_check import BaseCheck


class RelationsCheck(BaseCheck):
    """逐個驗證 p_i = m·P + n·Q"""

    def __init__(self, config: Dict[str, Any], name: str = "relations"):
        super().__init__(name, "point relations", config)

    def execute(self, context: Dict[str, Any]) -> Tuple[bool, Dict[str, Any], str, Dict[str, Any]]:
        cfg = context["cfg"]
        rows = relation_table(cfg)
        expression = sum_expression(cfg)
        passed = all(row["holds"] for row in rows)
        held = sum(row["holds"] for row in rows)
        matches = ", ".join(f"{m}*P + {n}*Q" for m, n in expression.matches) or "none"
        summary = f"{held}/{len(rows)} relations hold; sum of points = {matches}"
        payload = {"relations": rows, "sum_expression": expression.to_dict()}
        return passed, payload, summary, {"sum_expression": expression}
