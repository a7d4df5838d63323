"""
點配置模組 - 曲線上九個點的有序配置、格座標與內置配置
"""

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .elliptic import ECPoint, EllipticCurve, ec_linear_combination, require_on_curve
from .errors import MalformedInputError

logger = logging.getLogger(__name__)

NUM_POINTS = 9

PAPER_CURVE = {"a": "0", "b": "17"}

PAPER_POINTS = [
    ("-2", "3"),
    ("-1", "-4"),
    ("2", "5"),
    ("4", "9"),
    ("52", "375"),
    ("5234", "-378661"),
    ("8", "-23"),
    ("43", "282"),
    ("1/4", "-33/8"),
]

# 以 p1、p3 為基的座標 (m, n)：p_i = m*p1 + n*p3
PAPER_LATTICE = {
    "basis": [1, 3],
    "coords": [[1, 0], [2, -1], [0, 1], [1, -1], [3, -1], [4, -3], [2, 0], [-1, 2], [1, 1]],
}


@dataclass(frozen=True)
class LatticeCoordinates:
    """
    點關於一對基點的整數座標

    屬性:
        basis (Tuple[int, int]): 基點在配置中的位置（從 1 開始）
        coords (Tuple[Tuple[int, int], ...]): 每個點的 (m, n)
    """
    basis: Tuple[int, int]
    coords: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> Dict:
        return {"basis": list(self.basis), "coords": [list(c) for c in self.coords]}

    @classmethod
    def from_dict(cls, data: Dict) -> "LatticeCoordinates":
        try:
            basis = tuple(int(i) for i in data["basis"])
            coords = tuple((int(m), int(n)) for m, n in data["coords"])
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInputError(f"Malformed lattice coordinates: {e}") from e
        if len(basis) != 2:
            raise MalformedInputError("Lattice basis needs exactly two point indices")
        return cls(basis, coords)


@dataclass(frozen=True)
class PointConfig:
    """
    九點配置

    構造時檢查：點數為 9、都在曲線上、不是無窮遠點、兩兩不同；
    若提供格座標，則逐點用倍點運算驗證。

    屬性:
        curve (EllipticCurve): 曲線
        points (Tuple[ECPoint, ...]): 有序的九個點
        lattice (Optional[LatticeCoordinates]): 格座標
        name (str): 配置名稱
    """
    curve: EllipticCurve
    points: Tuple[ECPoint, ...]
    lattice: Optional[LatticeCoordinates] = None
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) != NUM_POINTS:
            raise MalformedInputError(f"A configuration needs {NUM_POINTS} points, got {len(self.points)}")

        seen = {}
        for index, point in enumerate(self.points, start=1):
            if point.is_infinity:
                raise MalformedInputError(f"p{index} is the point at infinity")
            require_on_curve(self.curve, point)
            if point in seen:
                raise MalformedInputError(f"p{index} coincides with p{seen[point]}: {point}")
            seen[point] = index

        if self.lattice is not None:
            self._verify_lattice()

    def _verify_lattice(self) -> None:
        lattice = self.lattice
        if len(lattice.coords) != NUM_POINTS:
            raise MalformedInputError(f"Lattice needs {NUM_POINTS} coordinate pairs, got {len(lattice.coords)}")
        if any(not 1 <= i <= NUM_POINTS for i in lattice.basis) or lattice.basis[0] == lattice.basis[1]:
            raise MalformedInputError(f"Invalid lattice basis {lattice.basis}")

        basis = self.basis_points
        for index, ((m, n), point) in enumerate(zip(lattice.coords, self.points), start=1):
            predicted = ec_linear_combination(self.curve, (m, n), basis)
            if predicted != point:
                raise MalformedInputError(
                    f"Lattice coordinates ({m}, {n}) for p{index} give {predicted}, not {point}"
                )
        logger.debug("Lattice coordinates verified for configuration %s", self.name)

    @property
    def basis_points(self) -> Tuple[ECPoint, ECPoint]:
        if self.lattice is None:
            raise MalformedInputError("Configuration carries no lattice coordinates")
        i, j = self.lattice.basis
        return (self.points[i - 1], self.points[j - 1])

    def projective_points(self):
        return [point.to_projective() for point in self.points]

    def with_point(self, index: int, point: ECPoint, name: Optional[str] = None) -> "PointConfig":
        """
        替換第 index 個點（從 1 開始），丟棄格座標

        參數:
            index (int): 位置
            point (ECPoint): 新的點
            name (Optional[str]): 新配置名稱

        返回:
            PointConfig: 新配置
        """
        points = list(self.points)
        points[index - 1] = point
        return replace(self, points=tuple(points), lattice=None, name=name or f"{self.name}-p{index}")

    def to_dict(self) -> Dict:
        data = {
            "name": self.name,
            "curve": self.curve.to_dict(),
            "points": [point.to_dict() for point in self.points],
        }
        if self.lattice is not None:
            data["lattice"] = self.lattice.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "PointConfig":
        """
        從 JSON 結構構造配置

        異常:
            MalformedInputError: 字段缺失或格式錯誤
        """
        if not isinstance(data, dict):
            raise MalformedInputError("Configuration must be a JSON object")
        try:
            curve = EllipticCurve.from_dict(data["curve"])
            points = [ECPoint.from_dict(p) for p in data["points"]]
        except (KeyError, TypeError) as e:
            raise MalformedInputError(f"Malformed configuration: missing {e}") from e
        lattice = LatticeCoordinates.from_dict(data["lattice"]) if data.get("lattice") else None
        return cls(curve, tuple(points), lattice, data.get("name", "custom"))


def paper_config() -> PointConfig:
    """內置的 y^2 = x^3 + 17 上的九點配置，格座標在載入時重新驗證"""
    return PointConfig.from_dict({
        "name": "paper",
        "curve": PAPER_CURVE,
        "points": [list(p) for p in PAPER_POINTS],
        "lattice": PAPER_LATTICE,
    })


def load_point_config(path) -> PointConfig:
    """
    從 JSON 文件載入配置

    參數:
        path: 文件路徑

    返回:
        PointConfig: 配置

    異常:
        MalformedInputError: 文件不存在或不是合法 JSON
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise MalformedInputError(f"Configuration file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Invalid JSON in {path}: {e}") from e
    return PointConfig.from_dict(data)


def resolve_points(source: str) -> PointConfig:
    """`--points` 參數：字面名稱 "paper" 或文件路徑"""
    if source == "paper":
        return paper_config()
    return load_point_config(source)


def relation_table(cfg: PointConfig) -> List[Dict]:
    """
    逐點驗證格座標關係 p_i = m*P + n*Q，返回可序列化的記錄
    """
    if cfg.lattice is None:
        raise MalformedInputError("Configuration carries no lattice coordinates")
    i, j = cfg.lattice.basis
    rows = []
    for index, ((m, n), point) in enumerate(zip(cfg.lattice.coords, cfg.points), start=1):
        if index in (i, j):
            continue
        predicted = ec_linear_combination(cfg.curve, (m, n), cfg.basis_points)
        rows.append({
            "point": f"p{index}",
            "relation": f"p{index} = {m}*p{i} + {n}*p{j}",
            "holds": predicted == point,
        })
    return rows


def named_point(cfg: PointConfig, name: str) -> Optional[ECPoint]:
    """把 "p1"…"p9" 解析為配置中的點，其他名稱返回 None"""
    lowered = name.strip().lower()
    if len(lowered) == 2 and lowered[0] == "p" and lowered[1].isdigit() and lowered[1] != "0":
        return cfg.points[int(lowered[1]) - 1]
    return None
