#!/usr/bin/env python3
"""Reproduce the oscillator-network consensus study.

Simulates the seeded 5-agent path-graph network of pendulum-like gradient
agents twice: untransformed (terminal outputs split into clusters) and after
the per-agent feedback shear that restores monotone steady-state relations
(outputs reach consensus at zero, matching the transformed optimal-potential
prediction).  Writes trajectories, the transformed relation and potential,
a summary, and a manifest to --outdir; prints one pass/fail line per check.
"""

import argparse
import sys

from pqikit.cli import main


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results/gradient-network")
    args = parser.parse_args()
    sys.exit(main(["case-study", "gradient-network", "--outdir", args.outdir]))
