#!/usr/bin/env python3
"""Steady-state duality experiment on the two-agent quadratic network.

Solves the optimal potential problem (over node outputs) and the optimal
flow problem (over edge couplings, built from the Legendre duals of the node
potentials) on a fine shared grid, then reports the duality gap and checks
the solutions against the network simulation's steady state.
"""

import argparse
import json

import numpy as np

from pqikit import IntegralFunction, legendre, simulate, solve_ofp, solve_opp
from pqikit.systems import quadratic_network


def run(grid_points: int) -> dict:
    spec = quadratic_network()
    fine = np.linspace(-5.0, 5.0, grid_points)
    centers = (1.0, 3.0)
    pots = [
        IntegralFunction.from_function(lambda y, c=c: 0.5 * (y - c) ** 2, fine)
        for c in centers
    ]
    opp = solve_opp(spec, grid=fine, node_potentials=pots)
    ofp = solve_ofp(spec, grid=fine,
                    node_potentials=[legendre(p, fine) for p in pots])
    sim = simulate(spec)
    return {
        "grid_points": grid_points,
        "opp_objective": opp.objective,
        "ofp_objective": ofp.objective,
        "duality_gap": abs(opp.objective + ofp.objective),
        "opp_primal": [float(v) for v in opp.primal],
        "ofp_coupling": [float(v) for v in ofp.coupling],
        "simulated_steady_state": [float(v) for v in sim.steady_state],
        "prediction_error": float(
            np.max(np.abs(np.asarray(opp.primal) - sim.steady_state))
        ),
    }


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid-points", type=int, default=200001)
    parser.add_argument("--out", default=None,
                        help="optional JSON output path")
    args = parser.parse_args()
    report = run(args.grid_points)
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
