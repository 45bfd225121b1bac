"""The even decompressor V and exact complexity tables.

A table is built by forward enumeration: every description of length at most
``bound`` is run once, in length-then-lexicographic order, and each output
keeps the first (hence shortest, lexicographically least) description that
produced it. Values above the bound are never guessed; they come back as
``AboveBound``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .bits import BitStr, from_hex, hex_or_dash, to_hex
from .machine import ExecOutcome, Kind, v_opt
from .params import DEFAULT_PARAMS, MachineBudgets, SchemeParams

MACHINES = ("vopt", "v", "u", "w")
BOUND_CAP = 26


class StaleCacheError(ValueError):
    pass


def v_decode(d: BitStr, cond: BitStr = "", budgets: MachineBudgets = MachineBudgets()) -> ExecOutcome:
    """Odd-length descriptions lose their last bit, so every minimum is even."""
    if len(d) % 2:
        d = d[:-1]
    return v_opt(d, cond, budgets)


@dataclass(frozen=True)
class AboveBound:
    bound: int

    def __str__(self) -> str:
        return f"> {self.bound}"


def decoder(machine_id: str, cond: BitStr, params: SchemeParams) -> Callable[[BitStr], ExecOutcome]:
    budgets = params.budgets
    if machine_id == "vopt":
        return lambda d: v_opt(d, cond, budgets)
    if machine_id == "v":
        return lambda d: v_decode(d, cond, budgets)
    from .udec import u_decode, w_decode

    if cond:
        raise ValueError(f"machine {machine_id!r} takes no condition")
    if machine_id == "u":
        return lambda d: u_decode(d, params)
    if machine_id == "w":
        return lambda d: w_decode(d, params)
    raise ValueError(f"unknown machine {machine_id!r}")


@dataclass
class ComplexityTable:
    machine_id: str
    cond: BitStr
    bound: int
    params_hash: str
    entries: dict[BitStr, int]
    witnesses: dict[BitStr, BitStr] = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, ComplexityTable):
            return NotImplemented
        return (self.machine_id, self.cond, self.bound, self.params_hash, self.entries) == (
            other.machine_id, other.cond, other.bound, other.params_hash, other.entries)

    def witness(self, x: BitStr, params: SchemeParams) -> BitStr | None:
        """Lexicographically least minimal description of ``x``.

        Tables loaded from a cache carry no witnesses; those are re-found by
        scanning the descriptions of the recorded length.
        """
        if x in self.witnesses:
            return self.witnesses[x]
        c = self.entries.get(x)
        if c is None:
            return None
        if params.hash != self.params_hash:
            raise StaleCacheError("params do not match the table")
        run = decoder(self.machine_id, self.cond, params)
        for i in range(1 << c):
            d = format(i, f"0{c}b") if c else ""
            out = run(d)
            if out.kind is Kind.HALTED and out.output == x:
                self.witnesses[x] = d
                return d
        raise AssertionError("table entry without a description")


def build_table(machine_id: str, cond: BitStr = "", bound: int = 18,
                params: SchemeParams = DEFAULT_PARAMS) -> ComplexityTable:
    if not 0 <= bound <= BOUND_CAP:
        raise ValueError(f"bound {bound} outside 0..{BOUND_CAP}")
    run = decoder(machine_id, cond, params)
    halted = Kind.HALTED
    best: dict[BitStr, int] = {}
    wit: dict[BitStr, BitStr] = {}
    for length in range(bound + 1):
        fmt = f"0{length}b"
        for i in range(1 << length):
            d = format(i, fmt) if length else ""
            out = run(d)
            if out.kind is halted and out.output not in best:
                best[out.output] = length
                wit[out.output] = d
    return ComplexityTable(machine_id, cond, bound, params.hash, best, wit)


def complexity_of(table: ComplexityTable, x: BitStr) -> int | AboveBound:
    c = table.entries.get(x)
    return AboveBound(table.bound) if c is None else c


def _header(table: ComplexityTable) -> str:
    cond = to_hex(table.cond) if table.cond else "-"
    return (f"KCACHE v1 machine={table.machine_id} cond={cond} "
            f"bound={table.bound} params={table.params_hash}")


def save_cache(table: ComplexityTable, path: str | os.PathLike) -> None:
    lines = [_header(table)]
    for x in sorted(table.entries, key=lambda s: (len(s), int(s, 2) if s else 0)):
        lines.append(f"{to_hex(x)} {table.entries[x]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_cache(path: str | os.PathLike, params: SchemeParams | None = None) -> ComplexityTable:
    text = Path(path).read_text(encoding="ascii").splitlines()
    if not text:
        raise ValueError("empty cache file")
    head = text[0].split()
    if head[:2] != ["KCACHE", "v1"] or len(head) != 6:
        raise ValueError(f"malformed cache header: {text[0]!r}")
    try:
        fields = dict(item.split("=", 1) for item in head[2:])
        machine_id, cond_s = fields["machine"], fields["cond"]
        bound, params_hash = int(fields["bound"]), fields["params"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed cache header: {text[0]!r}") from exc
    if machine_id not in MACHINES:
        raise ValueError(f"unknown machine {machine_id!r}")
    if params is not None and params.hash != params_hash:
        raise StaleCacheError(f"cache built for params {params_hash}, current {params.hash}")
    cond = "" if cond_s == "-" else from_hex(*_split_hex(cond_s))
    entries = {}
    for line in text[1:]:
        try:
            key, value = line.split()
            entries[from_hex(*_split_hex(key))] = int(value)
        except ValueError as exc:
            raise ValueError(f"malformed cache record: {line!r}") from exc
    return ComplexityTable(machine_id, cond, bound, params_hash, entries)


def _split_hex(token: str) -> tuple[str, int]:
    digits, _, length = token.partition(":")
    return digits, int(length)


_MEMO: dict[tuple, ComplexityTable] = {}


def cached_table(machine_id: str, cond: BitStr = "", bound: int = 18,
                 params: SchemeParams = DEFAULT_PARAMS,
                 cache_dir: str | os.PathLike | None = None) -> ComplexityTable:
    """Build a table once per process, optionally persisting it on disk.

    ``cache_dir`` defaults to ``$KOLAB_CACHE_DIR`` when set.
    """
    key = (machine_id, cond, bound, params.hash)
    if key in _MEMO:
        return _MEMO[key]
    cache_dir = cache_dir or os.environ.get("KOLAB_CACHE_DIR")
    table = None
    path = None
    if cache_dir:
        name = f"{machine_id}_{hex_or_dash(cond).replace(':', '-')}_{bound}_{params.hash}.kcache"
        path = Path(cache_dir) / name
        if path.exists():
            try:
                table = load_cache(path, params)
            except ValueError:
                table = None
    if table is None:
        table = build_table(machine_id, cond, bound, params)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            save_cache(table, path)
    _MEMO[key] = table
    return table
