"""
檢查子套件 - 套件中每一類驗證都對應一個檢查
"""

from .base_check import BaseCheck, CheckResult
from .generality_check import GeneralityCheck
from .pencil_check import PencilCheck
from .relations_check import RelationsCheck
from .systems_check import SystemsCheck
from .torsion_check import TorsionCheck
