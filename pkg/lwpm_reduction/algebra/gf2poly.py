# -*- coding: utf-8 -*-
"""
GF(2) 多项式运算模块
多项式以 Python 整数作为打包的系数位串存储：第 i 位为 x^i 的系数
支持加法、乘法、带余除法、整除判断、次数、汉明重量以及文本解析/格式化
"""

from typing import Iterable, List, Optional, Tuple

import numpy as np

from ..exceptions import NotDivisibleError, PolynomialParseError, ZeroDivisorError

STYLE_ALGEBRAIC = "algebraic"
STYLE_EXPONENTS = "exponents"
POLY_STYLES = (STYLE_ALGEBRAIC, STYLE_EXPONENTS)

# 文本中允许的最大指数
MAX_EXPONENT = 1 << 20


def popcount(value: int) -> int:
    """非负整数的置位个数"""
    return bin(value).count("1")


def _clmul(a: int, b: int) -> int:
    # 按较小操作数的置位做移位异或
    if a < b:
        a, b = b, a
    result = 0
    shift = 0
    while b:
        if b & 1:
            result ^= a << shift
        b >>= 1
        shift += 1
    return result


def _divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisorError()
    db = b.bit_length() - 1
    quotient = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        quotient |= 1 << shift
        a ^= b << shift
    return quotient, a


class Gf2Poly:
    """GF(2) 上的多项式（不可变）"""

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("coefficient word must be non-negative")
        object.__setattr__(self, "_bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Poly is immutable")

    def __reduce__(self):
        return (Gf2Poly, (self._bits,))

    # 构造方法
    @classmethod
    def zero(cls) -> "Gf2Poly":
        return cls(0)

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls(1)

    @classmethod
    def monomial(cls, exponent: int) -> "Gf2Poly":
        """x^exponent"""
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        return cls(1 << exponent)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Gf2Poly":
        """由指数列表构造，重复的指数按模2抵消"""
        bits = 0
        for e in exponents:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            bits ^= 1 << int(e)
        return cls(bits)

    @classmethod
    def from_bits(cls, coefficients: Iterable[int]) -> "Gf2Poly":
        """由系数向量构造，下标0为常数项"""
        bits = 0
        for i, c in enumerate(coefficients):
            if int(c) & 1:
                bits |= 1 << i
        return cls(bits)

    # 基本属性
    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> Optional[int]:
        """次数；零多项式返回 None"""
        if self._bits == 0:
            return None
        return self._bits.bit_length() - 1

    @property
    def weight(self) -> int:
        """汉明重量（非零系数个数）"""
        return popcount(self._bits)

    def is_zero(self) -> bool:
        return self._bits == 0

    def exponents(self) -> List[int]:
        """升序的非零系数指数"""
        if self._bits == 0:
            return []
        digits = bin(self._bits)[:1:-1]
        return [i for i, c in enumerate(digits) if c == "1"]

    def coefficient(self, i: int) -> int:
        return (self._bits >> i) & 1

    def to_bits(self, length: Optional[int] = None) -> np.ndarray:
        """系数向量（uint8），可补零到指定长度"""
        if length is None:
            length = 0 if self._bits == 0 else self._bits.bit_length()
        if self._bits.bit_length() > length:
            raise ValueError(f"polynomial of degree {self.degree} does not fit in {length} coefficients")
        vector = np.zeros(length, dtype=np.uint8)
        vector[self.exponents()] = 1
        return vector

    def valuation(self) -> Optional[int]:
        """能整除本多项式的 x 的最高次幂；零多项式返回 None"""
        if self._bits == 0:
            return None
        return (self._bits & -self._bits).bit_length() - 1

    def shift(self, k: int) -> "Gf2Poly":
        """乘以 x^k（k 为负时要求低位为零）"""
        if k >= 0:
            return Gf2Poly(self._bits << k)
        if self._bits & ((1 << -k) - 1):
            raise NotDivisibleError(f"x^{-k} does not divide {self}")
        return Gf2Poly(self._bits >> -k)

    def evaluate(self, x: int) -> int:
        """在 x ∈ {0,1} 处求值"""
        if x not in (0, 1):
            raise ValueError("GF(2) has only the elements 0 and 1")
        if x == 0:
            return self._bits & 1
        return self.weight & 1

    # 运算
    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return Gf2Poly(self._bits ^ other._bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return Gf2Poly(_clmul(self._bits, other._bits))

    def __divmod__(self, other: "Gf2Poly") -> Tuple["Gf2Poly", "Gf2Poly"]:
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        q, r = _divmod(self._bits, other._bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gf2Poly):
            return NotImplemented
        return self._bits == other._bits

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self._bits))

    def __bool__(self) -> bool:
        return self._bits != 0

    def __str__(self) -> str:
        return format_poly(self, STYLE_ALGEBRAIC)

    def __repr__(self) -> str:
        return f"Gf2Poly({format_poly(self, STYLE_ALGEBRAIC)!r})"


def add(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    """逐系数异或"""
    return p + q


def mul(p: Gf2Poly, q: Gf2Poly) -> Gf2Poly:
    """无进位卷积（模2）"""
    return p * q


def divmod_poly(k: Gf2Poly, p: Gf2Poly) -> Tuple[Gf2Poly, Gf2Poly]:
    """长除法，返回 (商, 余式)"""
    return divmod(k, p)


def divides(p: Gf2Poly, k: Gf2Poly) -> bool:
    """p 是否整除 k；divides(p, 0) 恒为真"""
    if p.is_zero():
        raise ZeroDivisorError()
    return (k % p).is_zero()


def exact_div(k: Gf2Poly, p: Gf2Poly) -> Gf2Poly:
    """整除时返回 k / p，否则抛出 NotDivisibleError"""
    q, r = divmod(k, p)
    if not r.is_zero():
        raise NotDivisibleError(f"{p} does not divide {k}")
    return q


def degree(p: Gf2Poly) -> Optional[int]:
    return p.degree


def weight(p: Gf2Poly) -> int:
    return p.weight


def format_poly(p: Gf2Poly, style: str = STYLE_ALGEBRAIC) -> str:
    """按指定风格输出多项式文本，项按升幂排列"""
    exponents = p.exponents()
    if style == STYLE_EXPONENTS:
        return ",".join(str(e) for e in exponents)
    if style != STYLE_ALGEBRAIC:
        raise ValueError(f"unknown polynomial style {style!r}")
    if not exponents:
        return "0"
    terms = []
    for e in exponents:
        if e == 0:
            terms.append("1")
        elif e == 1:
            terms.append("x")
        else:
            terms.append(f"x^{e}")
    return " + ".join(terms)


def parse_poly(text: str, style: str = STYLE_ALGEBRAIC) -> Gf2Poly:
    """解析多项式文本，重复项按模2抵消"""
    if style == STYLE_EXPONENTS:
        return _parse_exponent_list(text)
    if style != STYLE_ALGEBRAIC:
        raise ValueError(f"unknown polynomial style {style!r}")
    return _parse_algebraic(text)


def _is_ascii_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _skip_spaces(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _read_digits(text: str, pos: int) -> Tuple[str, int]:
    start = pos
    while pos < len(text) and _is_ascii_digit(text[pos]):
        pos += 1
    return text[start:pos], pos


def _checked_exponent(digits: str, pos: int) -> int:
    significant = digits.lstrip("0")
    if len(significant) > len(str(MAX_EXPONENT)) or int(significant or "0") > MAX_EXPONENT:
        raise PolynomialParseError(f"exponent exceeds the limit {MAX_EXPONENT}", pos)
    return int(significant or "0")


def _parse_algebraic(text: str) -> Gf2Poly:
    bits = 0
    pos = _skip_spaces(text, 0)
    if pos == len(text):
        raise PolynomialParseError("expected a term", pos)
    while True:
        pos = _skip_spaces(text, pos)
        if pos == len(text):
            raise PolynomialParseError("expected a term after '+'", pos)
        ch = text[pos]
        if ch in "xX":
            pos = _skip_spaces(text, pos + 1)
            exponent = 1
            if pos < len(text) and text[pos] == "^":
                pos = _skip_spaces(text, pos + 1)
                digits, end = _read_digits(text, pos)
                if not digits:
                    raise PolynomialParseError("expected an exponent after '^'", pos)
                exponent = _checked_exponent(digits, pos)
                pos = end
            bits ^= 1 << exponent
        elif _is_ascii_digit(ch):
            digits, end = _read_digits(text, pos)
            if digits not in ("0", "1"):
                raise PolynomialParseError(f"coefficient {digits!r} is not a GF(2) constant", pos)
            if digits == "1":
                bits ^= 1
            pos = end
        else:
            raise PolynomialParseError(f"unexpected character {ch!r}", pos)
        pos = _skip_spaces(text, pos)
        if pos == len(text):
            return Gf2Poly(bits)
        if text[pos] != "+":
            raise PolynomialParseError(f"expected '+' but found {text[pos]!r}", pos)
        pos += 1


def _parse_exponent_list(text: str) -> Gf2Poly:
    if not text.strip():
        return Gf2Poly(0)
    bits = 0
    pos = 0
    for item in text.split(","):
        stripped = item.strip()
        offset = pos + (len(item) - len(item.lstrip()))
        if not stripped:
            raise PolynomialParseError("empty exponent", offset)
        if not all(_is_ascii_digit(c) for c in stripped):
            bad = next(i for i, c in enumerate(stripped) if not _is_ascii_digit(c))
            raise PolynomialParseError(f"unexpected character {stripped[bad]!r}", offset + bad)
        bits ^= 1 << _checked_exponent(stripped, offset)
        pos += len(item) + 1
    return Gf2Poly(bits)
