"""Membership in R_U = {x : C_U(x) >= |x|}.

Two deciders share one verdict type:

* exact       looks ``q`` up in the forward U table (every description of
              length up to ``enum_bound``), so it needs ``|q| <= enum_bound + 1``;
* structural  searches only the description shapes that can be shorter than
              ``q``: case-3 inversion of the ``A . c . 0^pad`` layout, and a
              case-1 lookup in the forward V table. Case 2 is never shorter.

Every non-random verdict carries a witness that decodes to ``q`` under U.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bits import BitStr, encode_nat
from .complexity import cached_table, v_decode
from .gf2 import Gf2Matrix, SeededRng
from .machine import Kind, in_halting
from .params import DEFAULT_PARAMS, SchemeParams
from .primes import parse_specific
from .udec import case1_admits, is_exception_form

MODES = ("exact", "structural")
INVERSION_CAP = 26


class OracleRangeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    q: BitStr
    random: bool
    mode: str
    witness: BitStr | None = None
    cost: int = 0


@lru_cache(maxsize=256)
def case3_candidates(n: int, j: int, l: int, params: SchemeParams) -> tuple[tuple[BitStr, int], ...]:
    """All ``(d2, y)`` with ``|d2| = j``, V(d2 | n) = y, ``|y| = n`` and y[:l] halting.

    Ordered by d2, so the first match is the lexicographically least witness.
    """
    cond = encode_nat(n)
    found = []
    for i in range(1 << j):
        d2 = format(i, f"0{j}b") if j else ""
        out = v_decode(d2, cond, params.budgets)
        if out.kind is Kind.HALTED and len(out.output) == n and in_halting(out.output[:l], params.budgets):
            found.append((d2, int(out.output, 2)))
    return tuple(found)


def _maps_to(rows: tuple[int, ...], y: int, c: BitStr) -> bool:
    for r, bit in zip(rows, c):
        if ((r & y).bit_count() & 1) != (bit == "1"):
            return False
    return True


class MembershipOracle:
    """Counts queries and memoizes verdicts for one (params, mode) pair."""

    def __init__(self, params: SchemeParams = DEFAULT_PARAMS, mode: str = "structural",
                 cache_dir=None, memo_size: int = 1 << 14):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.params = params
        self.mode = mode
        self.cache_dir = cache_dir
        self.queries = 0
        self._decide = lru_cache(maxsize=memo_size)(
            self._exact if mode == "exact" else self._structural)

    def __call__(self, q: BitStr) -> OracleVerdict:
        self.queries += 1
        return self._decide(q)

    def _exact(self, q: BitStr) -> OracleVerdict:
        bound = self.params.enum_bound
        if len(q) > bound + 1:
            raise OracleRangeError(f"|q| = {len(q)} exceeds exact regime {bound + 1}")
        table = cached_table("u", "", bound, self.params, self.cache_dir)
        cost = (1 << len(q)) - 2 if q else 0
        c = table.entries.get(q)
        if c is None or c >= len(q):
            return OracleVerdict(q, True, "exact", None, cost)
        return OracleVerdict(q, False, "exact", table.witness(q, self.params), cost)

    def _structural(self, q: BitStr) -> OracleVerdict:
        witness, cost = self._invert_case3(q)
        if witness is None:
            w1, c1 = self._search_case1(q)
            witness, cost = w1, cost + c1
        return OracleVerdict(q, witness is None, "structural", witness, cost)

    def _invert_case3(self, q: BitStr) -> tuple[BitStr | None, int]:
        params = self.params
        stem = len(q) - params.pad
        if stem < 1 or not q.endswith("0" * params.pad):
            return None, 0
        sp = parse_specific(stem)
        if sp is None or sp.k < params.slack:
            return None, 0
        j = sp.k - params.slack
        if j > INVERSION_CAP:
            raise OracleRangeError(f"case-3 inversion over 2^{j} descriptions exceeds cap")
        split = sp.n * sp.k
        a_bits, c = q[:split], q[split:stem]
        rows = Gf2Matrix.deserialize(a_bits, sp.k, sp.n).rows
        for d2, y in case3_candidates(sp.n, j, sp.l, params):
            if _maps_to(rows, y, c):
                return "0" + a_bits + d2, 1 << j
        return None, 1 << j

    def _search_case1(self, q: BitStr) -> tuple[BitStr | None, int]:
        params = self.params
        limit = min(len(q) - params.D - 1, params.enum_bound)
        if limit < 0:
            return None, 0
        table = cached_table("v", "", params.enum_bound, params, self.cache_dir)
        cost = (1 << (limit + 1)) - 1
        c = table.entries.get(q)
        if c is None or c > limit:
            return None, cost
        if is_exception_form(q, params.pad) and not case1_admits(c, len(q), params):
            return None, cost
        return "1" * (params.D - 1) + "0" + table.witness(q, params), cost


_ORACLES: dict[tuple, MembershipOracle] = {}


def get_oracle(params: SchemeParams = DEFAULT_PARAMS, mode: str = "structural") -> MembershipOracle:
    key = (params, mode)
    if key not in _ORACLES:
        _ORACLES[key] = MembershipOracle(params, mode)
    return _ORACLES[key]


def in_r_u_exact(q: BitStr, params: SchemeParams = DEFAULT_PARAMS) -> OracleVerdict:
    return get_oracle(params, "exact")(q)


def in_r_u_structural(q: BitStr, params: SchemeParams = DEFAULT_PARAMS) -> OracleVerdict:
    return get_oracle(params, "structural")(q)


def all_strings(length: int):
    for i in range(1 << length):
        yield format(i, f"0{length}b") if length else ""


def cross_validate(lengths, samples: int, params: SchemeParams = DEFAULT_PARAMS,
                   seed: int = 0, exhaustive_upto: int = 15, queries=None) -> dict:
    """Compare exact and structural verdicts length by length.

    Lengths up to ``exhaustive_upto`` are swept completely; longer ones are
    sampled ``samples`` times from the seeded stream. ``queries`` may supply
    an explicit list of strings instead.
    """
    exact = MembershipOracle(params, "exact")
    structural = MembershipOracle(params, "structural")
    per_length: dict[int, dict] = {}
    disagreements = []

    def check(q: BitStr) -> None:
        a, b = exact(q), structural(q)
        row = per_length.setdefault(len(q), {"count": 0, "agree": 0, "non_random": 0})
        row["count"] += 1
        row["agree"] += a.random == b.random
        row["non_random"] += not a.random
        if a.random != b.random:
            disagreements.append(q)

    if queries is not None:
        for q in queries:
            check(q)
    else:
        for length in lengths:
            if length <= exhaustive_upto:
                for q in all_strings(length):
                    check(q)
            else:
                for i in range(samples):
                    q = format(SeededRng.substream(seed, length, i).bits(length), f"0{length}b")
                    check(q)
    total = sum(r["count"] for r in per_length.values())
    agree = sum(r["agree"] for r in per_length.values())
    return {
        "params_hash": params.hash,
        "seed": seed,
        "per_length": {str(k): v for k, v in sorted(per_length.items())},
        "total": total,
        "agreement": agree / total if total else 1.0,
        "disagreements": disagreements[:20],
    }
