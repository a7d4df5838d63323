#!/usr/bin/env python3
"""
duvalcert 安裝腳本 - 九點組態一般性證書與 Du Val 曲線精確構造工具
"""

from pathlib import Path

from setuptools import find_packages, setup

ROOT = Path(__file__).parent
PACKAGE_DIR = "duval_system"


def read_version():
    """從 duvalcert/__init__.py 讀取版本號"""
    init = ROOT / PACKAGE_DIR / "duvalcert" / "__init__.py"
    for line in init.read_text(encoding="utf-8").splitlines():
        if line.startswith("__version__"):
            return line.split("=", 1)[1].strip().strip('"')
    raise RuntimeError("無法讀取版本號")


setup(
    name="duvalcert",
    version=read_version(),
    description="九點組態的 k-一般性證書、Du Val 線性系統插值與束不變量檢查",
    long_description=(ROOT / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    package_dir={"": PACKAGE_DIR},
    packages=find_packages(where=PACKAGE_DIR, exclude=["tests"]),
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "sympy",
    ],
    extras_require={
        "dev": [
            "pytest",
            "black",
            "flake8",
        ],
    },
    entry_points={
        "console_scripts": [
            "duvalcert=duvalcert.cli:main",
        ],
    },
)
