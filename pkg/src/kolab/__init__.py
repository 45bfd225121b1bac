"""Desk-scale laboratory for a universal decompressor whose random strings decide halting."""

from .bits import encode_nat, from_hex, parse_bits, to_hex
from .params import MachineBudgets, SchemeParams

__all__ = ["encode_nat", "from_hex", "parse_bits", "to_hex", "MachineBudgets", "SchemeParams"]
