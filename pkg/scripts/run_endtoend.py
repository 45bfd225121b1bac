"""Decide every seven-bit program with the reduction and write a JSON report."""
import argparse
import sys

from kolab.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="endtoend.json")
    ap.add_argument("--seed", default="0")
    ap.add_argument("--threads", default="1")
    a = ap.parse_args()
    sys.exit(main(["experiment", "endtoend", "--l", "7", "--m", "200", "--seed", a.seed,
                   "--threads", a.threads, "--json", a.out]))
