#!/usr/bin/env python3
"""Map the wave-breaking region of the (a, b) parameter plane.

Default mode evaluates the four analytic criteria on a grid and writes
region.csv; --simulate additionally integrates each grid point and records
the fitted breaking time (much slower — budget hours for a dense grid).
"""
import argparse
import json
from pathlib import Path

from ohlab.scan import (ScanConfig, region_ordering_violations, scan,
                        write_region_csv, write_simulation_csv)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/region", type=Path)
    ap.add_argument("--a-max", type=float, default=0.2)
    ap.add_argument("--b-max", type=float, default=0.2)
    ap.add_argument("--count", type=int, default=41,
                    help="grid points per axis")
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--simulate", action="store_true")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    cfg = ScanConfig(a_range=(0.0, args.a_max, args.count),
                     b_range=(0.0, args.b_max, args.count),
                     criteria_only=not args.simulate,
                     workers=args.workers)
    result = scan(cfg)
    if args.simulate:
        write_simulation_csv(result, args.out / "region_sim.csv")
    else:
        write_region_csv(result, args.out / "region.csv")
    print(json.dumps({
        "points": len(result.rows),
        "charac_satisfied": sum(r["charac"] for r in result.rows),
        "ordering_violations": len(region_ordering_violations(result)),
    }))


if __name__ == "__main__":
    main()
