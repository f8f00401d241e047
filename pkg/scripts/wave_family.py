#!/usr/bin/env python3
"""Trace the periodic traveling-wave family from the small-amplitude
sinusoid up toward the corner wave, and write the amplitude/residual table
plus the limiting corner profile."""
import argparse
import json
from pathlib import Path

import numpy as np

from ohlab.waves import (CREST_SPEED_RATIO, continuation_branch, corner_wave,
                         ode_residual, write_branch_csv, write_profile_csv)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/waves", type=Path)
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--gap", type=float, default=2e-3,
                    help="closest approach to the limiting speed ratio")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    ratios = list(np.linspace(1.005, 1.08, 8))
    ratios += list(CREST_SPEED_RATIO - np.geomspace(0.015, args.gap, 6))
    branch = continuation_branch(1.0, ratios, n=args.n)
    write_branch_csv(branch, args.out / "branch.csv")

    corner = corner_wave(1.0, n=args.n)
    write_profile_csv(corner, args.out / "corner.csv")
    write_profile_csv(branch[-1], args.out / "steepest.csv")

    print(json.dumps({
        "branch_points": len(branch),
        "last_ratio": branch[-1].c,
        "crest_fraction_of_corner": branch[-1].phi.max() / corner.phi.max(),
        "corner_interior_residual": ode_residual(corner, scheme="fd",
                                                 exclude_crest=2),
    }))


if __name__ == "__main__":
    main()
