"""
錯誤類型模組 - 定義整個套件共用的例外層次
"""


class DuvalError(Exception):
    """所有 duvalcert 例外的基類"""


class MalformedInputError(DuvalError, ValueError):
    """輸入格式錯誤或超出前置條件（CLI 退出碼 2）"""


class OffCurveError(MalformedInputError):
    """
    點不在曲線上

    屬性:
        equation (str): 被違反的方程式
    """

    def __init__(self, message: str, equation: str = ""):
        super().__init__(message)
        self.equation = equation


class BadReductionError(DuvalError, ValueError):
    """
    在某個質數下約化失敗

    屬性:
        prime (int): 質數
        position (tuple): 出錯的位置（矩陣座標或係數名稱）
    """

    def __init__(self, message: str, prime: int, position=None):
        super().__init__(message)
        self.prime = prime
        self.position = position


class CapExceededError(MalformedInputError):
    """超出桌面規模上限"""
