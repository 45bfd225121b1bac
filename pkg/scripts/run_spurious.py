"""Spurious event rate for a non-halting program at every k, one JSON report."""
import argparse

from kolab.cli import dumps
from kolab.primes import nth_prime
from kolab.reduction import spurious_rate_experiment

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--l", type=int, default=7)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="spurious.json")
    a = ap.parse_args()
    reps = [spurious_rate_experiment(a.l, k, a.trials, seed=a.seed)
            for k in range(1, nth_prime(a.l) - 1)]
    for r in reps:
        print(f"k={r['k']:2d} fired={r['fired']:4d} ci95_hi={r['ci95'][1]:.4f} passes={r['passes']}")
    with open(a.out, "w") as fh:
        fh.write(dumps(reps))
