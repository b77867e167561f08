#!/usr/bin/env python3
"""Reproduce the unstable-plant passivation study.

Runs the full transfer-function pipeline on G(s) = 0.75/(s^2 + 2s - 2):
loop-shift selection, index computation, transform synthesis, transformed
transfer function, and strict passivity indices.  Writes lti_report.json,
case_study_summary.json, and manifest.json to --outdir and prints one
pass/fail line per check.
"""

import argparse
import sys

from pqikit.cli import main


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results/lti")
    args = parser.parse_args()
    sys.exit(main(["case-study", "lti", "--outdir", args.outdir]))
