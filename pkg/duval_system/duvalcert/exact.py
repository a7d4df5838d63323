"""
精確計算核心模組 - 有理數、有理矩陣與無分數消元

所有值在構造後不可變，所有運算都是純函數，可以在多線程中安全使用。
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import BadReductionError, DuvalError, MalformedInputError

logger = logging.getLogger(__name__)

Rational = Fraction
RationalVector = Tuple[Fraction, ...]


def parse_rational(raw) -> Fraction:
    """
    解析有理數字串

    接受 "a/b"、整數字串、int、Fraction，以及 Unicode 減號 "−"。

    參數:
        raw: 輸入

    返回:
        Fraction: 規範形式的有理數

    異常:
        MalformedInputError: 無法解析或分母為零
    """
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, bool):
        raise MalformedInputError(f"Not a rational: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise MalformedInputError(f"Not a rational: {raw!r}")

    text = raw.strip().replace("−", "-")
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num.strip()), int(den.strip()))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"Not a rational: {raw!r}") from e


def format_rational(q) -> str:
    """有理數序列化為 "num/den"，分母為 1 時省略"""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def normalize_integer_vector(vector: Sequence[int]) -> Tuple[int, ...]:
    """
    把整數向量化為容量 1、首個非零項為正

    參數:
        vector (Sequence[int]): 整數向量

    返回:
        Tuple[int, ...]: 規範化向量（零向量原樣返回）
    """
    content = math.gcd(*vector) if vector else 0
    if content == 0:
        return tuple(vector)
    result = [v // content for v in vector]
    leading = next(v for v in result if v != 0)
    if leading < 0:
        result = [-v for v in result]
    return tuple(result)


@dataclass(frozen=True)
class RationalMatrix:
    """
    稠密有理矩陣

    屬性:
        rows (int): 行數
        cols (int): 列數
        entries (Tuple[Tuple[Fraction, ...], ...]): 按行存儲的元素
    """
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MalformedInputError("Matrix dimensions must be non-negative")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise MalformedInputError(
                f"Matrix entries do not match shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "RationalMatrix":
        """
        從嵌套序列構造矩陣

        參數:
            rows (Iterable[Iterable]): 行列表，元素可為 int、Fraction 或有理數字串
            cols (Optional[int]): 列數；零行矩陣時必須提供

        返回:
            RationalMatrix: 矩陣
        """
        entries = tuple(tuple(parse_rational(v) for v in row) for row in rows)
        if cols is None:
            if not entries:
                raise MalformedInputError("Column count required for a matrix with no rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def apply(self, vector: Sequence) -> RationalVector:
        """
        計算 M·v

        參數:
            vector (Sequence): 長度為 cols 的向量

        返回:
            RationalVector: 結果向量

        異常:
            MalformedInputError: 長度不匹配
        """
        if len(vector) != self.cols:
            raise MalformedInputError(f"Vector length {len(vector)} != {self.cols} columns")
        values = [Fraction(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(row, values)), Fraction(0)) for row in self.entries)

    def integer_rows(self) -> List[List[int]]:
        """逐行乘以分母的最小公倍數，得到整數矩陣（與原矩陣行空間相同）"""
        result = []
        for row in self.entries:
            scale = math.lcm(*(q.denominator for q in row)) if row else 1
            result.append([q.numerator * (scale // q.denominator) for q in row])
        return result

    def to_dict(self) -> Dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(q) for q in row] for row in self.entries],
        }


def _fraction_free_rref(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int], int]:
    """
    無分數 Gauss-Jordan 消元（Bareiss 型），按列順序選取第一個非零主元

    每一步的除法都是整除；結束時每個主元都等於同一個值 d
    （主元列子矩陣的行列式，差一個符號）。

    參數:
        rows (List[List[int]]): 整數矩陣
        ncols (int): 列數

    返回:
        Tuple[List[List[int]], List[int], int]: (約化後矩陣, 主元列, d)
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    pivots: List[int] = []
    prev = 1
    r = 0

    for c in range(ncols):
        if r == nrows:
            break
        pivot_index = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_index is None:
            continue
        if pivot_index != r:
            m[r], m[pivot_index] = m[pivot_index], m[r]

        pivot_row = m[r]
        piv = pivot_row[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            a = row[c]
            if a == 0:
                if piv != prev:
                    for j in range(ncols):
                        if row[j]:
                            row[j] = row[j] * piv // prev
            else:
                for j in range(ncols):
                    row[j] = (row[j] * piv - a * pivot_row[j]) // prev
            row[c] = 0

        logger.debug("pivot %d at column %d (%d bits)", r, c, abs(piv).bit_length())
        prev = piv
        pivots.append(c)
        r += 1

    return m, pivots, prev


def rank_and_nullspace(matrix: RationalMatrix) -> Tuple[int, List[RationalVector]]:
    """
    精確秩與零空間基

    先逐行清除分母，再做無分數消元。零空間基按自由列順序排列，每個向量
    都是整數、容量 1、首個非零項為正，因此結果逐字節可重現。

    參數:
        matrix (RationalMatrix): 矩陣

    返回:
        Tuple[int, List[RationalVector]]: (秩, 零空間基)
    """
    ncols = matrix.cols
    reduced, pivots, det = _fraction_free_rref(matrix.integer_rows(), ncols)
    rank = len(pivots)

    pivot_set = set(pivots)
    basis: List[RationalVector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [0] * ncols
        vector[free] = det
        for t, pc in enumerate(pivots):
            vector[pc] = -reduced[t][free]
        basis.append(tuple(Fraction(v) for v in normalize_integer_vector(vector)))

    logger.debug("matrix %dx%d: rank %d, nullity %d", matrix.rows, ncols, rank, len(basis))
    return rank, basis


def _check_prime(prime: int) -> None:
    if not isinstance(prime, int) or prime < 2 or not sympy.isprime(prime):
        raise MalformedInputError(f"{prime!r} is not a prime")
    if prime >= 2 ** 31:
        raise MalformedInputError(f"Prime {prime} too large for int64 elimination")


def reduce_mod(q: Fraction, prime: int, position=None) -> int:
    """
    有理數模 p 約化

    異常:
        BadReductionError: p 整除分母
    """
    if q.denominator % prime == 0:
        raise BadReductionError(
            f"Prime {prime} divides denominator of {format_rational(q)} at {position}",
            prime,
            position,
        )
    return (q.numerator % prime) * pow(q.denominator, -1, prime) % prime


def rank_modular(matrix: RationalMatrix, prime: int) -> int:
    """
    矩陣模 p 的秩

    參數:
        matrix (RationalMatrix): 矩陣
        prime (int): 質數（< 2^31）

    返回:
        int: 秩，總是不超過精確秩

    異常:
        BadReductionError: p 整除某個元素的分母，附帶其位置
    """
    _check_prime(prime)
    if matrix.rows == 0 or matrix.cols == 0:
        return 0

    a = np.array(
        [[reduce_mod(q, prime, (i, j)) for j, q in enumerate(row)] for i, row in enumerate(matrix.entries)],
        dtype=np.int64,
    )

    rank = 0
    for c in range(matrix.cols):
        if rank == matrix.rows:
            break
        nonzero = np.nonzero(a[rank:, c])[0]
        if nonzero.size == 0:
            continue
        pivot_index = rank + int(nonzero[0])
        if pivot_index != rank:
            a[[rank, pivot_index]] = a[[pivot_index, rank]]
        inverse = pow(int(a[rank, c]), prime - 2, prime)
        a[rank] = (a[rank] * inverse) % prime
        factors = a[rank + 1:, c].copy()
        a[rank + 1:] = (a[rank + 1:] - np.outer(factors, a[rank]) % prime) % prime
        rank += 1

    return rank


def random_good_primes(count: int, low: int = 1000, high: int = 10000, seed: int = 0) -> List[int]:
    """
    在 (low, high) 中用固定種子選取不同的質數

    參數:
        count (int): 數量
        low (int): 下界（不含）
        high (int): 上界（不含）
        seed (int): 隨機種子

    返回:
        List[int]: 質數列表
    """
    candidates = list(sympy.primerange(low + 1, high))
    if count > len(candidates):
        raise MalformedInputError(f"Only {len(candidates)} primes in ({low}, {high})")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(candidates), size=count, replace=False)
    return [int(candidates[i]) for i in chosen]


def cross_check_ranks(matrix: RationalMatrix, primes: Sequence[int], exact_rank: Optional[int] = None) -> Dict[int, int]:
    """
    以模 p 秩交叉檢查精確秩

    嚴格下降是允許的（壞約化），但要記錄警告。

    參數:
        matrix (RationalMatrix): 矩陣
        primes (Sequence[int]): 質數
        exact_rank (Optional[int]): 已知的精確秩，None 時重新計算

    返回:
        Dict[int, int]: 每個質數對應的模秩

    異常:
        DuvalError: 模秩超過精確秩（不可能發生，說明實現有錯）
    """
    if exact_rank is None:
        exact_rank, _ = rank_and_nullspace(matrix)

    ranks = {}
    for prime in primes:
        try:
            ranks[prime] = rank_modular(matrix, prime)
        except BadReductionError as e:
            logger.warning("Skipping prime %d: %s", prime, e)
            continue
        if ranks[prime] > exact_rank:
            raise DuvalError(f"Modular rank {ranks[prime]} mod {prime} exceeds exact rank {exact_rank}")
        if ranks[prime] < exact_rank:
            logger.warning("Rank drops mod %d: %d < %d", prime, ranks[prime], exact_rank)
    return ranks
