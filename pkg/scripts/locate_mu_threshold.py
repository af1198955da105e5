#!/usr/bin/env python3
"""Locate the sharp expansion-capacity threshold mu0 in the weak-bacteria
scenario (mu1 = 0.1): vanishing for mu2 below mu0, spreading above.

Prints the probe history as CSV and the located value.  Expect a couple of
minutes; probes near the threshold extend their own horizon once.
"""

import argparse
import sys

import pulsefront as pf
from pulsefront.model import InitialData
from pulsefront.output import fmt
from pulsefront.presets import base_params_cd
from pulsefront.solver import SolverConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=1.0)
    ap.add_argument("--hi", type=float, default=10.0)
    ap.add_argument("--tol", type=float, default=0.3)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--steps-per-period", type=int, default=1000)
    args = ap.parse_args()

    params = base_params_cd(args.lo)
    init = InitialData.cos_quarter(2.0, 0.3, 0.1)
    cfg = SolverConfig(n=args.n, steps_per_period=args.steps_per_period)
    result = pf.find_mu_threshold(params, init, cfg, (args.lo, args.hi), args.tol)

    print("probe,verdict")
    for value, verdict in result.history:
        print(f"{fmt(value)},{verdict}")
    print(f"mu0,{fmt(result.value)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
