#!/usr/bin/env python3
"""Reproduce the three reference breaking runs plus the no-breaking control.

Each case lands in its own subdirectory of --out with timeseries.csv,
summary.json and (for breaking runs) rate_products.csv.  With --fast the
grids shrink to smoke-test size: estimates get rougher but every case still
finishes in seconds.
"""
import argparse
import json
from pathlib import Path

from ohlab.characteristics import rate_products, write_rate_products_csv
from ohlab.evolution import (SimulationConfig, Termination, estimate_blowup,
                             simulate, write_summary, write_timeseries)
from ohlab.initial import two_mode_quantities

CASES = [
    # tag, a, b, n, dt, stop_slope
    ("a05_b0", 0.05, 0.0, 4096, 1e-3, -200.0),
    ("a01_b005", 0.01, 0.005, 4096, 1e-3, -200.0),
    ("a0_b005", 0.0, 0.005, 8192, 5e-4, -100.0),
    ("control_a005", 0.005, 0.0, 4096, 1e-3, -200.0),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/breaking", type=Path)
    ap.add_argument("--fast", action="store_true",
                    help="quarter-resolution smoke variant")
    args = ap.parse_args()

    for tag, a, b, n, dt, stop in CASES:
        if args.fast:
            # coarse grids saturate the recorded slope minimum near -40
            # before the production stop level is ever reached
            n, dt, stop = max(n // 4, 1024), 2.0 * dt, -30.0
        outdir = args.out / tag
        outdir.mkdir(parents=True, exist_ok=True)
        cfg = SimulationConfig(initial=two_mode_quantities(a, b), n=n, dt=dt,
                               t_max=25.0 if tag != "control_a005" else 20.0,
                               stop_slope=stop)
        record = simulate(cfg)
        est = None
        if record.terminated is Termination.SlopeBlowup:
            est = estimate_blowup(record)
            write_rate_products_csv(rate_products(record, est),
                                    outdir / "rate_products.csv")
        write_timeseries(record, outdir / "timeseries.csv")
        write_summary(record, est, outdir / "summary.json")
        line = {"case": tag, "terminated": record.terminated.value}
        if est is not None:
            line.update(B=round(est.b, 4), C=round(est.c, 4),
                        T=round(est.t_blowup, 4))
        print(json.dumps(line))


if __name__ == "__main__":
    main()
