"""The decompressor U, the warm-up parity decompressor W, and G calibration.

U dispatches on its prefix (D from ``SchemeParams``):

1. ``1^(D-1) 0 d'``  run V on ``d'``; outputs of the form ``y' 0^pad`` with
   ``|y'|`` specific are gated by the G rule.
2. ``1^D 0 d'``      output ``d'`` verbatim.
3. ``0 d'``          when ``|d'| + slack = p*k`` is specific, read ``d'`` as a
   k x n matrix ``A`` (n = p - 1) followed by ``d2``; if V(d2 | n) = y with
   ``|y| = n`` and the first l bits of y halt (p is the l-th prime), output
   ``A . Ay . 0^pad``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bits import BitStr, encode_nat
from .complexity import AboveBound, ComplexityTable, cached_table, complexity_of, v_decode
from .gf2 import Gf2Matrix, matvec
from .machine import STUCK, ExecOutcome, Kind, in_halting
from .params import DEFAULT_PARAMS, SchemeParams
from .primes import parse_specific


@dataclass(frozen=True)
class Case3Parse:
    p: int
    k: int
    l: int
    n: int
    A: Gf2Matrix
    d2: BitStr


def parse_case3(d1: BitStr, params: SchemeParams) -> Case3Parse | None:
    sp = parse_specific(len(d1) + params.slack)
    if sp is None or sp.k < params.slack:
        return None
    split = sp.n * sp.k
    A = Gf2Matrix.deserialize(d1[:split], sp.k, sp.n)
    return Case3Parse(sp.p, sp.k, sp.l, sp.n, A, d1[split:])


def is_exception_form(y: BitStr, pad: int) -> bool:
    """True when ``y = y' 0^pad`` with ``|y'|`` specific."""
    stem = len(y) - pad
    return stem >= 1 and y.endswith("0" * pad) and parse_specific(stem) is not None


def case1_admits(desc_len: int, out_len: int, params: SchemeParams) -> bool:
    if params.case1_rule == "strict":
        return desc_len < out_len - params.G
    return out_len > desc_len - params.G


def which_case(d: BitStr, params: SchemeParams) -> int | None:
    D = params.D
    if d.startswith("1" * D + "0"):
        return 2
    if d.startswith("1" * (D - 1) + "0"):
        return 1
    if d.startswith("0"):
        return 3
    return None


def u_decode(d: BitStr, params: SchemeParams = DEFAULT_PARAMS) -> ExecOutcome:
    case = which_case(d, params)
    if case == 2:
        return ExecOutcome(Kind.HALTED, d[params.D + 1 :], 0)
    if case == 1:
        d1 = d[params.D :]
        out = v_decode(d1, "", params.budgets)
        if out.kind is Kind.HALTED and is_exception_form(out.output, params.pad):
            if not case1_admits(len(d1), len(out.output), params):
                return STUCK
        return out
    if case == 3:
        return _case3(d[1:], params)
    return STUCK


def _case3(d1: BitStr, params: SchemeParams) -> ExecOutcome:
    parse = parse_case3(d1, params)
    if parse is None:
        return STUCK
    out = v_decode(parse.d2, encode_nat(parse.n), params.budgets)
    if out.kind is not Kind.HALTED or len(out.output) != parse.n:
        return STUCK
    y = out.output
    if not in_halting(y[: parse.l], params.budgets):
        return STUCK
    a_bits = d1[: parse.n * parse.k]
    return ExecOutcome(Kind.HALTED, a_bits + matvec(parse.A, y) + "0" * params.pad, out.steps)


def w_decode(d: BitStr, params: SchemeParams = DEFAULT_PARAMS) -> ExecOutcome:
    """``00 d'`` runs V; ``1 d'`` runs V but keeps only halting outputs."""
    if d.startswith("00"):
        return v_decode(d[2:], "", params.budgets)
    if d.startswith("1"):
        out = v_decode(d[1:], "", params.budgets)
        if out.kind is Kind.HALTED and in_halting(out.output, params.budgets):
            return out
    return STUCK


def parity_solve_halting(x: BitStr, w_table: ComplexityTable) -> bool:
    c = complexity_of(w_table, x)
    if isinstance(c, AboveBound):
        raise ValueError(f"C_W({x!r}) is {c}")
    return c % 2 == 1


@dataclass(frozen=True)
class Calibration:
    G: int
    witness: BitStr | None
    max_gap: int | None
    checked: int
    premise_count: int


def calibrate_G(params: SchemeParams = DEFAULT_PARAMS, max_len: int = 6,
                table: ComplexityTable | None = None) -> Calibration:
    """Smallest G with  C_V(x) >= |x| - D  =>  C_V(x 0^pad) >= |x| + pad - G.

    Checked for every x with ``|x| <= max_len``. A padded string whose
    complexity lies above the table bound cannot force G above zero.
    """
    bound = params.enum_bound
    if max_len + params.pad > bound:
        raise ValueError(f"max_len + pad = {max_len + params.pad} exceeds enum_bound {bound}")
    table = table or cached_table("v", "", bound, params)
    best_gap, witness, checked, premises = None, None, 0, 0
    for length in range(max_len + 1):
        for i in range(1 << length):
            x = format(i, f"0{length}b") if length else ""
            checked += 1
            cx = complexity_of(table, x)
            if not isinstance(cx, AboveBound) and cx < length - params.D:
                continue
            premises += 1
            cp = complexity_of(table, x + "0" * params.pad)
            if isinstance(cp, AboveBound):
                continue
            gap = length + params.pad - cp
            if best_gap is None or gap > best_gap:
                best_gap, witness = gap, x
    return Calibration(max(0, best_gap or 0), witness, best_gap, checked, premises)
