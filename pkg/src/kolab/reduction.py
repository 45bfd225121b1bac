"""Deciding the step-bounded halting set with R_U membership queries only.

For an input x of length l, set n = p_l - 1 and y = x 0^(n-l). For each row
count k, sample m matrices A and count how often

    A . Ay  is random   and   A . Ay . 0^pad  is not random.

The answer is HALTS when some k reaches the threshold fraction. The decision
path touches nothing but oracle verdicts; ground truth is attached to the
report afterwards for scoring.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

from scipy.stats import beta

from .bits import BitStr, to_hex
from .gf2 import Gf2Matrix, SeededRng, sample_matrix
from .oracle import MembershipOracle
from .params import DEFAULT_PARAMS, SchemeParams, digest
from .primes import nth_prime

K_FILTERS = ("all", "odd_only")


@dataclass(frozen=True)
class ReductionConfig:
    m: int = 200
    seed: int = 0
    threshold: float = 0.5
    k_filter: str = "all"
    params: SchemeParams = field(default_factory=SchemeParams)
    mode: str = "structural"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 < self.threshold <= 1:
            raise ValueError("threshold must lie in (0, 1]")
        if self.k_filter not in K_FILTERS:
            raise ValueError(f"k_filter must be one of {K_FILTERS}")

    @property
    def hash(self) -> str:
        return digest(asdict(self))


def hoeffding_bound(m: int, p: float, threshold: float) -> float:
    """exp(-2 m (threshold - p)^2): chance that m draws of rate p reach the threshold."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if not 0 <= p < threshold <= 1:
        raise ValueError("need 0 <= p < threshold <= 1")
    return math.exp(-2 * m * (threshold - p) ** 2)


def spurious_bound(params: SchemeParams) -> float:
    return 2.0 ** (1 - params.slack)


def event_probe(y: BitStr, A: Gf2Matrix, oracle: MembershipOracle) -> tuple[bool, bool, bool]:
    """Return (fired, first query random, padded query random)."""
    q = A.serialize() + format(A.apply_int(int(y, 2)), f"0{A.k}b")
    first = oracle(q).random
    padded = oracle(q + "0" * oracle.params.pad).random
    return first and not padded, first, padded


def _ks(n: int, k_filter: str) -> list[int]:
    return [k for k in range(1, n) if k_filter == "all" or k % 2 == 1]


def _matrix(seed: int, k: int, n: int, i: int) -> Gf2Matrix:
    return sample_matrix(k, n, SeededRng.substream(seed, k, i))


def decide(x: BitStr, cfg: ReductionConfig, oracle: MembershipOracle) -> dict:
    """The decision itself; consults only ``oracle``."""
    l = len(x)
    if l < 1:
        raise ValueError("x must be non-empty")
    p_l = nth_prime(l)
    n = p_l - 1
    y = x + "0" * (n - l)
    per_k = []
    first_non_random = 0
    for k in _ks(n, cfg.k_filter):
        fired = 0
        for i in range(cfg.m):
            hit, first, _ = event_probe(y, _matrix(cfg.seed, k, n, i), oracle)
            fired += hit
            first_non_random += not first
        per_k.append({"k": k, "fired": fired, "m": cfg.m, "fraction": fired / cfg.m})
    firing = [row["k"] for row in per_k if row["fraction"] >= cfg.threshold]
    return {
        "l": l, "p_l": p_l, "n": n, "y": to_hex(y),
        "verdict": "HALTS" if firing else "LOOPS",
        "firing_k": firing,
        "per_k": per_k,
        "first_query_non_random": first_non_random,
    }


def decide_halting(x: BitStr, cfg: ReductionConfig = ReductionConfig(),
                   oracle: MembershipOracle | None = None) -> dict:
    from .machine import in_halting

    oracle = oracle or MembershipOracle(cfg.params, cfg.mode)
    start_queries = oracle.queries
    t0 = time.perf_counter()
    result = decide(x, cfg, oracle)
    wall = time.perf_counter() - t0
    truth = in_halting(x, cfg.params.budgets)
    return {
        "x": x,
        **result,
        "ground_truth": truth,
        "correct": (result["verdict"] == "HALTS") == truth,
        "seed": cfg.seed,
        "params_hash": cfg.params.hash,
        "config_hash": cfg.hash,
        "oracle_mode": oracle.mode,
        "oracle_queries": oracle.queries - start_queries,
        "hoeffding_bound_negative_side": hoeffding_bound(cfg.m, spurious_bound(cfg.params), cfg.threshold),
        "wall_time": wall,
    }


def clopper_pearson(count: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    alpha = 1 - level
    lo = 0.0 if count == 0 else float(beta.ppf(alpha / 2, count, trials - count + 1))
    hi = 1.0 if count == trials else float(beta.ppf(1 - alpha / 2, count + 1, trials - count))
    return lo, hi


def first_non_halting(l: int, params: SchemeParams = DEFAULT_PARAMS) -> BitStr:
    from .machine import in_halting

    for i in range(1 << l):
        x = format(i, f"0{l}b")
        if not in_halting(x, params.budgets):
            return x
    raise ValueError(f"every program of length {l} halts")


def spurious_rate_experiment(l: int, k: int, trials: int, seed: int = 0,
                             params: SchemeParams = DEFAULT_PARAMS, x: BitStr | None = None,
                             oracle: MembershipOracle | None = None) -> dict:
    """Per-matrix event frequency for a non-halting x, with a 95% interval."""
    from .machine import in_halting

    if trials < 1:
        raise ValueError("trials must be positive")
    x = x or first_non_halting(l, params)
    if len(x) != l or in_halting(x, params.budgets):
        raise ValueError("x must be a non-halting program of length l")
    n = nth_prime(l) - 1
    if not 1 <= k < n:
        raise ValueError(f"k must lie in 1..{n - 1}")
    oracle = oracle or MembershipOracle(params, "structural")
    y = x + "0" * (n - l)
    fired = sum(event_probe(y, _matrix(seed, k, n, i), oracle)[0] for i in range(trials))
    lo, hi = clopper_pearson(fired, trials)
    bound = spurious_bound(params)
    return {
        "x": x, "l": l, "n": n, "k": k, "trials": trials, "seed": seed,
        "fired": fired, "frequency": fired / trials,
        "ci95": [lo, hi], "bound": bound,
        "passes": hi <= bound + 0.02,
        "params_hash": params.hash,
    }
