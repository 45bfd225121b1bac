"""Construction constants shared by every decompressor, table and report."""
from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class MachineBudgets:
    exec_budget: int = 4096
    halt_budget: int = 4096
    max_output: int = 1 << 16

    def __post_init__(self):
        if min(self.exec_budget, self.halt_budget, self.max_output) <= 0:
            raise ValueError("budgets must be strictly positive")


CASE1_RULES = ("strict", "literal")


@dataclass(frozen=True)
class SchemeParams:
    """Constants of the decompressor U.

    ``D`` sets the case prefixes ``1^(D-1) 0`` and ``1^D 0``; ``G`` is the
    gap that gates case-1 outputs of the form ``y' 0^pad``; ``pad`` is the
    zero run appended to case-3 outputs and ``slack`` the difference between
    the row count k and the length of the inner V-description.

    ``case1_rule="strict"`` admits an exception-form output only when
    ``|d'| < |y| - G``; ``"literal"`` admits it when ``|y| > |d'| - G``.
    """

    D: int = 4
    G: int = 8
    pad: int = 9
    slack: int = 5
    budgets: MachineBudgets = field(default_factory=MachineBudgets)
    enum_bound: int = 18
    case1_rule: str = "strict"

    def __post_init__(self):
        if self.pad < 1 or self.pad % 2 == 0:
            raise ValueError("pad must be odd")
        if self.slack < 1 or self.slack % 2 == 0:
            raise ValueError("slack must be odd")
        # D = 1 would make the case-1 prefix "0" collide with case 3.
        if self.D < 2:
            raise ValueError("D must be at least 2")
        if self.G < 3:
            raise ValueError("G must be at least 3")
        if self.enum_bound < 0:
            raise ValueError("enum_bound must be non-negative")
        if self.case1_rule not in CASE1_RULES:
            raise ValueError(f"case1_rule must be one of {CASE1_RULES}")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> "SchemeParams":
        budget_keys = {f.name for f in dataclasses.fields(MachineBudgets)}
        budget_changes = {k: changes.pop(k) for k in list(changes) if k in budget_keys}
        if budget_changes:
            changes["budgets"] = dataclasses.replace(self.budgets, **budget_changes)
        return dataclasses.replace(self, **changes)

    @property
    def hash(self) -> str:
        return digest(self.as_dict())


def digest(obj) -> str:
    """16-hex-digit digest of a JSON-serializable object."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.blake2b(blob, digest_size=8).hexdigest()


DEFAULT_PARAMS = SchemeParams()
