#!/usr/bin/env python3
"""Phase-diagram slice along the disinfection intensity.

Sweeps the linear reset slope rho = G'(0) on the strong-capacity benchmark
set and tabulates the two decisive eigenvalues plus the simulated outcome.
Smaller rho (stronger disinfection) pushes both eigenvalues up; the run
shows where the long-time verdict flips from spreading to vanishing.
"""

import argparse
import sys

import pulsefront as pf
from pulsefront.model import InitialData, LinearImpulse
from pulsefront.output import fmt
from pulsefront.presets import base_params_a
from pulsefront.solver import SolverConfig, run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rhos", default="1.0,0.8,0.6,0.4,0.2,0.1,0.05")
    ap.add_argument("--t-end", type=float, default=100.0)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--steps-per-period", type=int, default=1000)
    args = ap.parse_args()

    init = InitialData.cos_quarter(2.0, 0.3, 0.1)
    cfg = SolverConfig(n=args.n, steps_per_period=args.steps_per_period)
    print("rho,intensity,lambda_infinity,lambda_h0,verdict,final_h,final_sup_u")
    for rho in (float(r) for r in args.rhos.split(",")):
        p = base_params_a().with_(impulse=LinearImpulse(rho=rho))
        analytic = pf.classify_analytic(p)
        series = run(p, init, cfg, args.t_end)
        verdict = analytic.verdict
        if verdict is pf.Verdict.THRESHOLD_DEPENDENT:
            verdict = pf.detect_outcome(series, p).verdict
        print(
            ",".join(
                [
                    fmt(rho),
                    fmt(1.0 - rho),
                    fmt(analytic.lambda_infinity),
                    fmt(analytic.lambda_h0),
                    str(verdict),
                    fmt(float(series.h[-1])),
                    fmt(float(series.sup_u[-1])),
                ]
            ),
            flush=True,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
