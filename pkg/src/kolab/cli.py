"""``kolab`` command line front end.

Configuration is resolved as defaults < ``--config`` file < flags. Every
JSON report embeds the resolved configuration and its hash.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

from .bits import decode_nat, encode_nat, parse_bits, to_hex
from .complexity import AboveBound, BOUND_CAP, MACHINES, cached_table, complexity_of
from .gf2 import collision_census
from .machine import halting_outcome
from .oracle import MODES, MembershipOracle
from .params import MachineBudgets, SchemeParams, digest
from .reduction import K_FILTERS, ReductionConfig, decide_halting, spurious_rate_experiment
from .udec import calibrate_G

SCHEMA_VERSION = 1
SCALE_NOTE = ("halting is step-bounded (H_T); m is configurable instead of n^50; "
              "D and G are calibrated constants, not asymptotic ones")


@dataclass
class RunConfig:
    D: int = 4
    G: int = 8
    pad: int = 9
    slack: int = 5
    enum_bound: int = 18
    case1_rule: str = "strict"
    exec_budget: int = 4096
    halt_budget: int = 4096
    max_output: int = 1 << 16
    mode: str = "structural"
    m: int = 200
    seed: int = 0
    threshold: float = 0.5
    k_filter: str = "all"
    cache_dir: str = ""
    threads: int = 1

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        values = {}
        types = {f.name: f.type for f in fields(cls)}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or key not in types:
                raise ValueError(f"config line {lineno}: unknown or malformed entry {raw!r}")
            values[key] = _coerce(types[key], value)
        return cls(**values)

    def serialize(self) -> str:
        return "".join(f"{k}={getattr(self, k)}\n" for k in self.keys())

    def override(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    @property
    def params(self) -> SchemeParams:
        budgets = MachineBudgets(self.exec_budget, self.halt_budget, self.max_output)
        return SchemeParams(self.D, self.G, self.pad, self.slack, budgets, self.enum_bound, self.case1_rule)

    @property
    def reduction(self) -> ReductionConfig:
        return ReductionConfig(self.m, self.seed, self.threshold, self.k_filter, self.params, self.mode)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @property
    def hash(self) -> str:
        d = self.as_dict()
        # where caches live and how many workers run never changes a result
        d.pop("cache_dir")
        d.pop("threads")
        return digest(d)


def _coerce(type_name, value: str):
    if type_name in (int, "int"):
        return int(value)
    if type_name in (float, "float"):
        return float(value)
    return value


def report(command: str, cfg: RunConfig, result: dict, costs: dict, wall_time: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg.as_dict(),
        "config_hash": cfg.hash,
        "params_hash": cfg.params.hash,
        "seed": cfg.seed,
        "result": result,
        "costs": costs,
        "scale_note": SCALE_NOTE,
        "wall_time": wall_time,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def strip_wall_time(obj):
    if isinstance(obj, dict):
        return {k: strip_wall_time(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_wall_time(v) for v in obj]
    return obj


# ---------------------------------------------------------------- commands

def cmd_halting(args, cfg):
    x = parse_bits(args.x)
    out = halting_outcome(x, cfg.params.budgets)
    halts = out.halted
    print(f"{'true' if halts else 'false'} steps={out.steps} outcome={out.kind.value}")
    return {"x": to_hex(x), "halts": halts, "outcome": out.kind.value, "steps": out.steps}, {"steps": out.steps}


def cmd_complexity(args, cfg):
    x = parse_bits(args.x)
    cond = encode_nat(args.cond) if args.cond is not None else ""
    bound = cfg.enum_bound
    table = cached_table(args.machine, cond, bound, cfg.params, cfg.cache_dir or None)
    c = complexity_of(table, x)
    print(str(c))
    value = str(c) if isinstance(c, AboveBound) else c
    return ({"machine": args.machine, "x": to_hex(x), "cond": args.cond, "bound": bound, "complexity": value},
            {"executions": (1 << (bound + 1)) - 1})


def cmd_oracle(args, cfg):
    q = parse_bits(args.q)
    verdict = MembershipOracle(cfg.params, cfg.mode, cfg.cache_dir or None)(q)
    witness = to_hex(verdict.witness) if verdict.witness is not None else None
    print(f"random={'true' if verdict.random else 'false'} mode={verdict.mode} "
          f"witness={witness or '-'} cost={verdict.cost}")
    return ({"q": to_hex(q), "random": verdict.random, "mode": verdict.mode, "witness": witness},
            {"executions": verdict.cost})


def cmd_calibrate(args, cfg):
    params = cfg.params
    cal = calibrate_G(params, args.max_len)
    result = {
        "D": params.D,
        "G_configured": params.G,
        "G_star": cal.G,
        "max_gap": cal.max_gap,
        "witness": to_hex(cal.witness) if cal.witness is not None else None,
        "max_len": args.max_len,
        "premise_count": cal.premise_count,
        "valid": cal.G <= params.G,
    }
    print(f"G*={cal.G} (configured G={params.G}) witness={result['witness']}")
    return result, {"strings_checked": cal.checked, "table_bound": params.enum_bound}


def cmd_reduce(args, cfg):
    x = parse_bits(args.x)
    rep = decide_halting(x, cfg.reduction, MembershipOracle(cfg.params, cfg.mode, cfg.cache_dir or None))
    print(f"verdict={rep['verdict']} ground_truth={'HALTS' if rep['ground_truth'] else 'LOOPS'} "
          f"firing_k={rep['firing_k']} queries={rep['oracle_queries']}")
    rep["x"] = to_hex(x)
    return rep, {"oracle_queries": rep["oracle_queries"]}


def cmd_spurious(args, cfg):
    x = parse_bits(args.x) if args.x else None
    rep = spurious_rate_experiment(args.l, args.k, args.trials, cfg.seed, cfg.params, x)
    print(f"frequency={rep['frequency']:.4f} ci95=[{rep['ci95'][0]:.4f}, {rep['ci95'][1]:.4f}] "
          f"bound={rep['bound']} passes={rep['passes']}")
    rep["x"] = to_hex(rep["x"])
    return rep, {"oracle_queries": 2 * args.trials}


def cmd_collision(args, cfg):
    rows = []
    exact = True
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            pairs = 0
            for a in range(1 << n):
                for b in range(1 << n):
                    if a == b:
                        continue
                    count, total = collision_census(n, k, format(a, f"0{n}b"), format(b, f"0{n}b"))
                    exact &= count == 1 << (n * k - k)
                    pairs += 1
            rows.append({"n": n, "k": k, "pairs": pairs, "per_pair_count": 1 << (n * k - k),
                         "total": 1 << (n * k)})
    print(f"exact={exact} cells={len(rows)}")
    return {"exact": exact, "cells": rows}, {"matrices": sum(r["pairs"] * r["total"] for r in rows)}


def _endtoend_one(job):
    x, red = job
    rep = decide_halting(x, red)
    rep.pop("wall_time")
    return rep


def cmd_endtoend(args, cfg):
    red = cfg.reduction
    xs = [format(i, f"0{args.l}b") for i in range(1 << args.l)]
    jobs = [(x, red) for x in xs]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            reps = list(pool.map(_endtoend_one, jobs))
    else:
        reps = [_endtoend_one(j) for j in jobs]
    n = reps[0]["n"]
    cv = cached_table("v", encode_nat(n), min(BOUND_CAP, args.l + 5), cfg.params)
    rows = []
    for rep in reps:
        y = rep["x"] + "0" * (n - args.l)
        c = complexity_of(cv, y)
        rows.append({
            "x": rep["x"], "verdict": rep["verdict"], "ground_truth": rep["ground_truth"],
            "correct": rep["correct"], "firing_k": rep["firing_k"],
            "firing_fractions": [r["fraction"] for r in rep["per_k"] if r["k"] in rep["firing_k"]],
            "max_fraction": max(r["fraction"] for r in rep["per_k"]),
            "cv_y_given_n": c if isinstance(c, int) else str(c),
        })
    accuracy = sum(r["correct"] for r in rows) / len(rows)
    print(f"accuracy={accuracy:.4f} programs={len(rows)} halting={sum(r['ground_truth'] for r in rows)}")
    result = {"l": args.l, "n": n, "accuracy": accuracy, "programs": rows,
              "hoeffding_bound_negative_side": reps[0]["hoeffding_bound_negative_side"]}
    return result, {"oracle_queries": sum(r["oracle_queries"] for r in reps)}


# ---------------------------------------------------------------- parsing

def _config_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="flat key=value configuration file")
    g.add_argument("--json", help="write the JSON report here")
    g.add_argument("--D", type=int)
    g.add_argument("--G", type=int)
    g.add_argument("--pad", type=int)
    g.add_argument("--slack", type=int)
    g.add_argument("--bound", "--enum-bound", dest="enum_bound", type=int)
    g.add_argument("--case1-rule", dest="case1_rule", choices=("strict", "literal"))
    g.add_argument("--exec-budget", dest="exec_budget", type=int)
    g.add_argument("--halt-budget", dest="halt_budget", type=int)
    g.add_argument("--max-output", dest="max_output", type=int)
    g.add_argument("--mode", choices=MODES)
    g.add_argument("--m", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--threshold", type=float)
    g.add_argument("--k-filter", dest="k_filter", choices=K_FILTERS)
    g.add_argument("--cache-dir", dest="cache_dir")
    g.add_argument("--threads", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _config_flags()
    parser = argparse.ArgumentParser(prog="kolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("halting", parents=[common], help="run x as a program")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_halting)

    p = sub.add_parser("complexity", parents=[common], help="exact complexity from a forward table")
    p.add_argument("--machine", choices=MACHINES, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--cond", type=int, help="numeric condition, passed in binary")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("oracle", parents=[common], help="R_U membership")
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("calibrate", parents=[common], help="smallest valid G")
    p.add_argument("--max-len", dest="max_len", type=int, required=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("reduce", parents=[common], help="decide halting with oracle queries")
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("experiment", help="batch experiments")
    ex = p.add_subparsers(dest="experiment", required=True)
    e = ex.add_parser("spurious", parents=[common], help="event rate for a non-halting input")
    e.add_argument("--l", type=int, default=7)
    e.add_argument("--k", type=int, default=15)
    e.add_argument("--trials", type=int, default=2000)
    e.add_argument("--x")
    e.set_defaults(func=cmd_spurious)
    e = ex.add_parser("collision", parents=[common], help="exhaustive collision census")
    e.add_argument("--max-n", dest="max_n", type=int, default=4)
    e.add_argument("--max-k", dest="max_k", type=int, default=3)
    e.set_defaults(func=cmd_collision)
    e = ex.add_parser("endtoend", parents=[common], help="decide every program of length l")
    e.add_argument("--l", type=int, default=7)
    e.set_defaults(func=cmd_endtoend)
    return parser


CONFIG_KEYS = RunConfig.keys()


def resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = RunConfig.parse(Path(args.config).read_text())
    cfg = cfg.override(**{k: getattr(args, k, None) for k in CONFIG_KEYS})
    if not cfg.cache_dir and os.environ.get("KOLAB_CACHE_DIR"):
        cfg = cfg.override(cache_dir=os.environ["KOLAB_CACHE_DIR"])
    return cfg


def run_command(argv: list[str] | None = None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    name = args.command if args.command != "experiment" else f"experiment {args.experiment}"
    try:
        cfg = resolve_config(args)
        cfg.params  # validates
        t0 = time.perf_counter()
        result, costs = args.func(args, cfg)
        rep = report(name, cfg, result, costs, time.perf_counter() - t0)
    except (ValueError, OSError) as exc:
        print(f"kolab: error: {exc}", file=sys.stderr)
        return 1, None
    if args.json:
        Path(args.json).write_text(dumps(rep))
    return 0, rep


def main(argv: list[str] | None = None) -> int:
    code, _ = run_command(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
