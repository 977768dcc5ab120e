# -*- coding: utf-8 -*-
"""
文本格式模块
矩阵、约束系统、MIN-PM 实例、归约证书和反例的逐行文本读写
所有格式都是纯文本，写出后可由对应的 parse_* 读回
"""

from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.gf2poly import (STYLE_ALGEBRAIC, Gf2Poly, POLY_STYLES, format_poly,
                               parse_poly)
from ..algebra.toeplitz import BinaryMatrix
from ..exceptions import DimensionError, FormatError, LwpmError
from ..reduction.min_pm import MinPmInstance, ReductionCertificate
from ..sat.affine_system import AffineSystem

INSTANCE_HEADER = "min-pm instance"
CERTIFICATE_HEADER = "reduction certificate"
COUNTEREXAMPLE_HEADER = "counterexample"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(行号, 去掉首尾空白的内容)，跳过空白行"""
    lines = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped:
            lines.append((line_no, stripped))
    return lines


def _parse_dimensions(line_no: int, line: str) -> Tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"expected 'm k', got {line!r}", line_no)
    try:
        m, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"dimensions must be integers, got {line!r}", line_no) from None
    if m < 1 or k < 1:
        raise FormatError(f"dimensions must be positive, got {m}x{k}", line_no)
    return m, k


def _bits_text(values) -> str:
    return "".join(str(int(b)) for b in values)


def _parse_bits(line_no: int, text: str, length: Optional[int] = None) -> np.ndarray:
    if any(c not in "01" for c in text):
        bad = next(c for c in text if c not in "01")
        raise FormatError(f"unexpected character {bad!r} in bit string", line_no)
    if length is not None and len(text) != length:
        raise FormatError(f"expected {length} bits, got {len(text)}", line_no)
    return np.array([int(c) for c in text], dtype=np.uint8)


# ---------------------------------------------------------------- BinaryMatrix
def matrix_to_text(matrix: BinaryMatrix) -> str:
    lines = [f"{matrix.rows} {matrix.cols}"]
    for i in range(matrix.rows):
        lines.append(_bits_text(matrix[i]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    """第一行 'm k'，随后 m 行各 k 个 0/1 字符"""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty matrix file", 1)
    m, k = _parse_dimensions(*lines[0])
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lines[0][0]
        raise FormatError(f"expected {m} rows, found {len(body)}", last)
    rows = [_parse_bits(line_no, line, k) for line_no, line in body]
    return BinaryMatrix(np.vstack(rows))


# ---------------------------------------------------------------- AffineSystem
def system_to_text(system: AffineSystem) -> str:
    lines = [f"{system.m} {system.k}"]
    for i in range(system.m):
        support, b = system.constraint(i)
        indices = " ".join(str(j) for j in support)
        lines.append(f"{b}: {indices}" if indices else f"{b}:")
    return "\n".join(lines) + "\n"


def _parse_constraint(line_no: int, line: str, k: int) -> Tuple[List[int], int]:
    if ":" not in line:
        raise FormatError(f"expected 'b: i1 i2 ...', got {line!r}", line_no)
    head, tail = line.split(":", 1)
    head = head.strip()
    if head not in ("0", "1"):
        raise FormatError(f"rhs must be 0 or 1, got {head!r}", line_no)
    support = []
    for token in tail.split():
        try:
            j = int(token)
        except ValueError:
            raise FormatError(f"bad variable index {token!r}", line_no) from None
        if not 0 <= j < k:
            raise FormatError(f"variable index {j} outside 0..{k - 1}", line_no)
        support.append(j)
    return support, int(head)


def parse_system(text: str) -> AffineSystem:
    """第一行 'm k'，随后 m 行 'b: i1 i2 ... iℓ'"""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty system file", 1)
    m, k = _parse_dimensions(*lines[0])
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lines[0][0]
        raise FormatError(f"expected {m} constraints, found {len(body)}", last)
    constraints = [_parse_constraint(line_no, line, k) for line_no, line in body]
    return AffineSystem.from_constraints(k, constraints)


# ---------------------------------------------------------------- MinPmInstance
def _read_fields(lines: Sequence[Tuple[int, str]], header: str) -> Tuple[dict, int]:
    """读取 'key value' 字段直到 'system' 行，返回 (字段, 已读行数)"""
    if not lines or lines[0][1] != header:
        line_no = lines[0][0] if lines else 1
        raise FormatError(f"expected header {header!r}", line_no)
    fields = {}
    consumed = 1
    for line_no, line in lines[1:]:
        if line == "system":
            break
        key, _, value = line.partition(" ")
        if key in fields:
            raise FormatError(f"duplicate field {key!r}", line_no)
        fields[key] = (line_no, value.strip())
        consumed += 1
    return fields, consumed


def _field(fields: dict, key: str, convert: Callable = str, default=None):
    if key not in fields:
        if default is not None:
            return default
        raise FormatError(f"missing field {key!r}")
    line_no, value = fields[key]
    try:
        return convert(value)
    except (ValueError, LwpmError) as e:
        raise FormatError(f"bad {key}: {e}", line_no) from e


def instance_to_text(instance: MinPmInstance, style: str = STYLE_ALGEBRAIC) -> str:
    rows, cols = instance.toeplitz_shape
    lines = [
        INSTANCE_HEADER,
        f"format {style}",
        f"poly {format_poly(instance.poly, style)}",
        f"n {instance.n}",
        f"toeplitz {rows}x{cols}",
    ]
    return "\n".join(lines) + "\n"


def _instance_from_fields(fields: dict) -> MinPmInstance:
    style = _field(fields, "format", default=STYLE_ALGEBRAIC)
    if style not in POLY_STYLES:
        raise FormatError(f"unknown polynomial format {style!r}", fields["format"][0])
    poly = _field(fields, "poly", lambda value: parse_poly(value, style))
    n = _field(fields, "n", int)
    try:
        return MinPmInstance(poly, n)
    except DimensionError as e:
        raise FormatError(str(e), fields["n"][0]) from e


def parse_instance(text: str) -> MinPmInstance:
    fields, _ = _read_fields(_content_lines(text), INSTANCE_HEADER)
    return _instance_from_fields(fields)


# ---------------------------------------------------------------- ReductionCertificate
def certificate_to_text(certificate: ReductionCertificate, style: str = STYLE_ALGEBRAIC) -> str:
    instance = certificate.instance
    pin = "none" if certificate.pin is None else f"x{certificate.pin[0]}={certificate.pin[1]}"
    lines = [
        CERTIFICATE_HEADER,
        f"format {style}",
        f"poly {format_poly(instance.poly, style)}",
        f"n {certificate.n}",
        f"d {certificate.d}",
        f"t {certificate.t}",
        f"pin {pin}",
        "system",
    ]
    return "\n".join(lines) + "\n" + system_to_text(certificate.system)


def _parse_pin(value: str) -> Optional[Tuple[int, int]]:
    if value == "none":
        return None
    if not value.startswith("x") or "=" not in value:
        raise ValueError(f"expected 'none' or 'x<i>=<b>', got {value!r}")
    variable, bit = value[1:].split("=", 1)
    if bit not in ("0", "1"):
        raise ValueError(f"pinned value must be 0 or 1, got {bit!r}")
    return int(variable), int(bit)


def parse_certificate(text: str) -> ReductionCertificate:
    lines = _content_lines(text)
    fields, consumed = _read_fields(lines, CERTIFICATE_HEADER)
    instance = _instance_from_fields(fields)
    pin = _field(fields, "pin", _parse_pin, default="none")
    pin = None if pin == "none" else pin
    for key, expected in (("d", instance.degree), ("t", instance.t)):
        if key in fields and _field(fields, key, int) != expected:
            raise FormatError(f"{key} does not match the polynomial and n", fields[key][0])
    if consumed >= len(lines):
        raise FormatError("missing 'system' section", lines[-1][0] if lines else 1)
    system_lines = lines[consumed + 1:]
    offset = system_lines[0][0] - 1 if system_lines else 0
    try:
        system = parse_system("\n".join(line for _, line in system_lines))
    except FormatError as e:
        if e.line is None:
            raise
        message = str(e)[len(f"line {e.line}: "):]
        raise FormatError(message, e.line + offset) from e
    rows, cols = instance.toeplitz_shape
    if system.m != rows or system.k != cols:
        raise FormatError(f"system is {system.m}x{system.k}, expected {rows}x{cols}", offset + 1)
    return ReductionCertificate(instance, system, pin)


# ---------------------------------------------------------------- counterexample
class Counterexample:
    """正向归约恒等式的反例"""

    def __init__(self, kind: str, instance: MinPmInstance, expected: int, actual: int,
                 assignment: Optional[Sequence[int]] = None):
        self.kind = kind
        self.instance = instance
        self.expected = expected
        self.actual = actual
        self.assignment = None if assignment is None else np.asarray(assignment, dtype=np.uint8)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Counterexample):
            return NotImplemented
        same_assignment = (
            (self.assignment is None and other.assignment is None)
            or (self.assignment is not None and other.assignment is not None
                and np.array_equal(self.assignment, other.assignment))
        )
        return (self.kind == other.kind and self.instance == other.instance
                and self.expected == other.expected and self.actual == other.actual
                and same_assignment)

    def __repr__(self) -> str:
        return (f"Counterexample({self.kind}, {self.instance}, "
                f"expected={self.expected}, actual={self.actual})")


def counterexample_to_text(counterexample: Counterexample, style: str = STYLE_ALGEBRAIC) -> str:
    instance = counterexample.instance
    lines = [
        COUNTEREXAMPLE_HEADER,
        f"kind {counterexample.kind}",
        f"format {style}",
        f"poly {format_poly(instance.poly, style)}",
        f"n {instance.n}",
        f"expected {counterexample.expected}",
        f"actual {counterexample.actual}",
    ]
    if counterexample.assignment is not None:
        lines.append(f"assignment {_bits_text(counterexample.assignment)}")
    return "\n".join(lines) + "\n"


def parse_counterexample(text: str) -> Counterexample:
    fields, _ = _read_fields(_content_lines(text), COUNTEREXAMPLE_HEADER)
    instance = _instance_from_fields(fields)
    assignment = None
    if "assignment" in fields:
        line_no, value = fields["assignment"]
        assignment = _parse_bits(line_no, value)
    return Counterexample(_field(fields, "kind"), instance, _field(fields, "expected", int),
                          _field(fields, "actual", int), assignment)


# ---------------------------------------------------------------- 文件读写
def _write_text(text: str, file_path: str) -> None:
    with open(file_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _read_text(file_path: str) -> str:
    with open(file_path, "r", encoding="utf-8") as f:
        return f.read()


def save_matrix(matrix: BinaryMatrix, file_path: str) -> None:
    _write_text(matrix_to_text(matrix), file_path)


def load_matrix(file_path: str) -> BinaryMatrix:
    return parse_matrix(_read_text(file_path))


def save_system(system: AffineSystem, file_path: str) -> None:
    _write_text(system_to_text(system), file_path)


def load_system(file_path: str) -> AffineSystem:
    return parse_system(_read_text(file_path))


def save_instance(instance: MinPmInstance, file_path: str, style: str = STYLE_ALGEBRAIC) -> None:
    _write_text(instance_to_text(instance, style), file_path)


def load_instance(file_path: str) -> MinPmInstance:
    return parse_instance(_read_text(file_path))


def save_certificate(certificate: ReductionCertificate, file_path: str,
                     style: str = STYLE_ALGEBRAIC) -> None:
    _write_text(certificate_to_text(certificate, style), file_path)


def load_certificate(file_path: str) -> ReductionCertificate:
    return parse_certificate(_read_text(file_path))


def save_counterexample(counterexample: Counterexample, file_path: str,
                        style: str = STYLE_ALGEBRAIC) -> None:
    _write_text(counterexample_to_text(counterexample, style), file_path)


def load_counterexample(file_path: str) -> Counterexample:
    return parse_counterexample(_read_text(file_path))
