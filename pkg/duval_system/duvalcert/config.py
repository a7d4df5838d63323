"""
配置模組 - 預設配置、配置文件讀取與日誌設置
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .errors import MalformedInputError


DEFAULT_CONFIG: Dict[str, Any] = {
    "logging": {
        "level": "INFO",
        "file": None,
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    },
    "generic": {
        "seed": 20170109,
        "coefficient_range": 50,
    },
    "torsion": {
        "primes": [5, 7],
        "extra_primes": [11, 13],
    },
    "modular": {
        "prime_low": 1000,
        "prime_high": 10000,
        "count": 3,
    },
    "caps": {
        "max_genus": 8,
        "max_singular_degree": 9,
        "max_count_prime": 1000,
    },
    "certify": {
        "fallback_k": 30,
        "threads": 1,
    },
    "suite": {
        "genera": [1, 2, 3, 4],
        "base_point_genera": [1, 2, 3],
        "pencil_max_genus": 20,
        "k": 60,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    讀取配置

    參數:
        path (Optional[Union[str, Path]]): JSON 配置文件路徑，None 表示只用預設值
        overrides (Optional[Dict[str, Any]]): 額外覆寫（例如命令列參數）

    返回:
        Dict[str, Any]: 合併後的配置

    異常:
        MalformedInputError: 文件不存在或不是合法 JSON 物件
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise MalformedInputError(f"Cannot read config {path}: {e}") from e
        if not isinstance(data, dict):
            raise MalformedInputError(f"Config {path} must be a JSON object")
        config = _deep_merge(config, data)

    if overrides:
        config = _deep_merge(config, overrides)

    return config


def setup_logging(config: Dict[str, Any]) -> logging.Logger:
    """
    根據配置的 logging 區段設置套件日誌

    日誌只寫到 stderr（及可選文件），stdout 保留給命令輸出。

    參數:
        config (Dict[str, Any]): 配置

    返回:
        logging.Logger: 套件根日誌器
    """
    section = config.get("logging", {})
    level = getattr(logging, str(section.get("level", "INFO")).upper(), logging.INFO)
    formatter = logging.Formatter(section.get("format", DEFAULT_CONFIG["logging"]["format"]))

    logger = logging.getLogger("duvalcert")
    logger.setLevel(level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    log_file = section.get("file")
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
