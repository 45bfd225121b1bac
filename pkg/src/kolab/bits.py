"""Bit strings and their encodings.

Bit strings are plain ``str`` objects over ``'0'``/``'1'``. Index 0 is the
leftmost bit and ``a + b`` is concatenation, so no wrapper class is needed.
"""
from __future__ import annotations

import re

BitStr = str

MAX_BITS = 1 << 20

_BITS_RE = re.compile(r"[01]*\Z")
_HEX_RE = re.compile(r"([0-9a-fA-F]*):(\d+)\Z")


def is_bits(s: str) -> bool:
    return bool(_BITS_RE.match(s))


def check_bits(s: str) -> BitStr:
    if not is_bits(s):
        raise ValueError(f"not a bit string: {s!r}")
    if len(s) > MAX_BITS:
        raise ValueError(f"bit string longer than {MAX_BITS} bits")
    return s


def encode_nat(v: int) -> BitStr:
    """Minimal big-endian binary form; ``encode_nat(0) == ''``."""
    if v < 0:
        raise ValueError("negative value")
    return format(v, "b") if v else ""


def decode_nat(s: BitStr) -> int:
    return int(s, 2) if s else 0


def to_hex(x: BitStr) -> str:
    """Pack ``x`` as ``HEX:LEN``, left-padded to whole hex digits."""
    digits = (len(x) + 3) // 4
    if not digits:
        return f":{len(x)}"
    return f"{int(x, 2):0{digits}x}:{len(x)}"


def from_hex(digits: str, length: int) -> BitStr:
    if not re.fullmatch(r"[0-9a-fA-F]*", digits):
        raise ValueError(f"malformed hex digits: {digits!r}")
    if length > 4 * len(digits) or length <= 4 * (len(digits) - 1):
        raise ValueError(f"length {length} inconsistent with {len(digits)} hex digits")
    if not digits:
        return ""
    value = int(digits, 16)
    if value >> length:
        raise ValueError("nonzero padding bits")
    return format(value, f"0{length}b")


def parse_bits(text: str) -> BitStr:
    """Accept either a literal ``0101`` string or the ``HEX:LEN`` form."""
    text = text.strip()
    m = _HEX_RE.match(text)
    if m:
        return from_hex(m.group(1), int(m.group(2)))
    return check_bits(text)


def hex_or_dash(x: BitStr | None) -> str:
    return "-" if x is None else to_hex(x)
