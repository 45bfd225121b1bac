import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolab.bits import encode_nat
from kolab.machine import Kind, halting_outcome, in_halting, run_program, v_opt
from kolab.params import MachineBudgets


def reference_run(prog, cond, budget, max_output):
    """Straight simulation with only the step budget as a stop."""
    pos, steps, buf = 0, 0, []
    while steps < budget:
        if pos + 3 > len(prog):
            return None
        steps += 1
        op, pos = int(prog[pos : pos + 3], 2), pos + 3
        if op == 0:
            return "".join(buf)
        if op == 1:
            buf.append("0")
        elif op == 2:
            buf.append("1")
        elif op == 3:
            buf.extend(cond)
        elif op == 4:
            buf = buf + buf
        elif op == 5:
            if pos + 3 > len(prog):
                return None
            pos = 3 * int(prog[pos : pos + 3], 2)
        elif op == 6:
            buf = buf[:-1]
        if len(buf) > max_output:
            return None
    return None


def test_literal_mode():
    assert v_opt("1" + "0110") == (Kind.HALTED, "0110", 0)


def test_pad_mode():
    assert v_opt("01" + "00", encode_nat(6)).output == "000000"
    assert v_opt("01" + "0000", encode_nat(3)).kind is Kind.STUCK


def test_program_mode_append_cond():
    out = v_opt("00" + "011" + "000", encode_nat(4))
    assert out.halted and out.output == "100"


def test_self_jump_never_halts():
    assert v_opt("00" + "101" + "000").kind in (Kind.DIVERGED, Kind.BUDGET_EXCEEDED)


def test_empty_descriptions_stuck():
    assert v_opt("").kind is Kind.STUCK
    assert v_opt("0").kind is Kind.STUCK


def test_forward_jump_skips_code():
    # JUMP 3 continues at offset 9, skipping the APPEND1 at offset 6
    prog = "101" + "011" + "010" + "001" + "000"
    assert run_program(prog, "", 100, 100).output == "0"


def test_double_overflow_is_stuck():
    prog = "010" + "100" * 17 + "000"
    assert run_program(prog, "", 4096, 1 << 16).kind is Kind.STUCK
    assert run_program("010" + "100" * 16 + "000", "", 4096, 1 << 16).output == "1" * (1 << 16)


def test_drop_last_on_empty_is_noop():
    assert run_program("110" + "010" + "000", "", 10, 10).output == "1"


def test_budget_exceeded_on_long_straight_line():
    prog = "111" * 20 + "000"
    assert run_program(prog, "", 10, 100).kind is Kind.BUDGET_EXCEEDED
    assert run_program(prog, "", 21, 100).halted


@pytest.mark.parametrize("x, halts", [("000", True), ("0000000", True), ("1111111", False)])
def test_in_halting_examples(x, halts):
    assert in_halting(x) is halts


def test_halting_census_seven_bits():
    # HALT first (16), or a non-JUMP opcode then HALT (6 * 2)
    halting = [format(i, "07b") for i in range(128) if in_halting(format(i, "07b"))]
    assert len(halting) == 28
    for x in halting:
        assert x[:3] == "000" or (x[:3] != "101" and x[3:6] == "000")


def test_halting_outcome_reports_steps():
    out = halting_outcome("001000")
    assert out.halted and out.steps == 2


@given(st.text(alphabet="01", max_size=40), st.text(alphabet="01", max_size=6))
def test_agrees_with_reference_interpreter(prog, cond):
    fast = run_program(prog, cond, 4096, 256)
    ref = reference_run(prog, cond, 4096, 256)
    assert (fast.output if fast.halted else None) == ref


def test_agrees_with_reference_exhaustive_short():
    for length in range(15):
        for i in range(1 << length):
            prog = format(i, f"0{length}b") if length else ""
            fast = run_program(prog, "10", 4096, 1 << 16)
            assert (fast.output if fast.halted else None) == reference_run(prog, "10", 4096, 1 << 16)


@given(st.text(alphabet="01", max_size=30), st.integers(1, 20), st.integers(0, 50))
def test_budget_monotone(prog, budget, extra):
    small = run_program(prog, "", budget, 1 << 16)
    if small.halted:
        assert run_program(prog, "", budget + extra, 1 << 16) == small


@given(st.text(alphabet="01", max_size=30), st.text(alphabet="01", max_size=8))
def test_deterministic(d, cond):
    assert v_opt(d, cond) == v_opt(d, cond)


@given(st.text(alphabet="01", max_size=30))
def test_every_string_has_a_literal_description(x):
    assert v_opt("1" + x).output == x


def test_budgets_must_be_positive():
    with pytest.raises(ValueError):
        MachineBudgets(exec_budget=0)
