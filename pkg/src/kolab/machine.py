"""The base decompressor V_opt and the step-bounded halting set.

``v_opt`` dispatches on the leading bits of a description:

* ``1 x``    literal mode, outputs ``x``;
* ``01 w``   pad mode, outputs ``w`` right-padded with zeros to length
  ``decode(cond)`` (undefined when ``w`` is already longer);
* ``00 p``   runs ``p`` on the opcode machine below;
* ``''``, ``0``  undefined.

The opcode machine fetches 3-bit opcodes from a moving position:

    000 HALT   001 APPEND0   010 APPEND1   011 APPEND_COND
    100 DOUBLE 101 JUMP v    110 DROP_LAST 111 NOP

JUMP reads the next 3 bits as ``v`` and continues at bit offset ``3v``.
There are no conditional branches, so control flow never depends on the
buffer: once more opcodes have been fetched than there are fetch positions,
some position repeated and the run is reported as DIVERGED.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .bits import BitStr, decode_nat
from .params import MachineBudgets


class Kind(Enum):
    HALTED = "Halted"
    DIVERGED = "Diverged"
    STUCK = "Stuck"
    BUDGET_EXCEEDED = "BudgetExceeded"


class ExecOutcome(NamedTuple):
    kind: Kind
    output: BitStr | None = None
    steps: int = 0

    @property
    def halted(self) -> bool:
        return self.kind is Kind.HALTED


STUCK = ExecOutcome(Kind.STUCK)


def run_program(prog: BitStr, cond: BitStr, budget: int, max_output: int) -> ExecOutcome:
    size = len(prog)
    positions = size // 3
    pos = 0
    steps = 0
    buf = ""
    while True:
        if pos + 3 > size:
            return ExecOutcome(Kind.DIVERGED, None, steps)
        steps += 1
        if steps > budget:
            return ExecOutcome(Kind.BUDGET_EXCEEDED, None, budget)
        if steps > positions:
            return ExecOutcome(Kind.DIVERGED, None, steps)
        op = prog[pos : pos + 3]
        pos += 3
        if op == "000":
            return ExecOutcome(Kind.HALTED, buf, steps)
        elif op == "001":
            buf += "0"
        elif op == "010":
            buf += "1"
        elif op == "011":
            buf += cond
        elif op == "100":
            buf += buf
        elif op == "101":
            if pos + 3 > size:
                return ExecOutcome(Kind.DIVERGED, None, steps)
            pos = 3 * int(prog[pos : pos + 3], 2)
            continue
        elif op == "110":
            buf = buf[:-1]
        # 111 is NOP
        if len(buf) > max_output:
            return ExecOutcome(Kind.STUCK, None, steps)


def v_opt(d: BitStr, cond: BitStr = "", budgets: MachineBudgets = MachineBudgets()) -> ExecOutcome:
    if len(d) < 2:
        if d == "1":
            return ExecOutcome(Kind.HALTED, "", 0)
        return STUCK
    if d[0] == "1":
        return ExecOutcome(Kind.HALTED, d[1:], 0)
    if d[1] == "1":
        w = d[2:]
        target = decode_nat(cond)
        if target < len(w) or target > budgets.max_output:
            return STUCK
        return ExecOutcome(Kind.HALTED, w + "0" * (target - len(w)), 0)
    return run_program(d[2:], cond, budgets.exec_budget, budgets.max_output)


@lru_cache(maxsize=1 << 16)
def halting_outcome(x: BitStr, budgets: MachineBudgets = MachineBudgets()) -> ExecOutcome:
    """Run ``x`` as a raw opcode stream on the empty condition."""
    return run_program(x, "", budgets.halt_budget, budgets.max_output)


def in_halting(x: BitStr, budgets: MachineBudgets = MachineBudgets()) -> bool:
    return halting_outcome(x, budgets).kind is Kind.HALTED
