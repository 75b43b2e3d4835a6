"""Recomputes coverage sets of a generated scenario from its stored
positions and checks them against the stored sets.

usage: geometry_check.py SCENARIO.json
"""

import json
import math
import sys


def main(path):
    scn = json.load(open(path))
    geo = scn["geometry"]
    r = geo["coverage_radius"]
    stations = geo["stations"]
    mismatches = 0
    for t, positions in enumerate(geo["user_positions"]):
        for k, p in enumerate(positions):
            want = [j for j, st in enumerate(stations)
                    if math.hypot(p[0] - st[0], p[1] - st[1]) <= r + 1e-9]
            if want != scn["coverage"][t][k]:
                mismatches += 1
                print(f"slot {t} user {k}: stored {scn['coverage'][t][k]} recomputed {want}")
    print(f"{path}: {mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
