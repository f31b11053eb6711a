"""Print census counts and timings for the small-object catalogues.

    python scripts/run_census.py [--max-ring 8] [--max-module 16] [--jobs 1]

Counts of unital rings and abelian groups by order are printed next to the
known values, followed by the sizes of the crossed-bimodule, morphism and
extension corpora that the acceptance suite runs over.
"""

import argparse
import time

from xbimod.census import (
    census_extensions, census_morphisms, crossed_bimodules, groups_of_order, order16_extensions, rings_of_order,
)

KNOWN_RINGS = [1, 1, 1, 4, 1, 1, 1, 11]
KNOWN_GROUPS = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]


def timed(label, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{label:<34} {len(out):>6}   ({time.perf_counter() - t0:.2f} s)")
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-ring", type=int, default=8)
    ap.add_argument("--max-module", type=int, default=16)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print("order  rings (known)  groups (known)")
    for n in range(1, max(args.max_ring, args.max_module) + 1):
        r = len(rings_of_order(n)) if n <= args.max_ring else "-"
        g = len(groups_of_order(n)) if n <= args.max_module else "-"
        kr = KNOWN_RINGS[n - 1] if n <= len(KNOWN_RINGS) else "-"
        kg = KNOWN_GROUPS[n - 1] if n <= len(KNOWN_GROUPS) else "-"
        print(f"{n:>5}  {r:>5} ({kr})  {g:>7} ({kg})")

    xbms = timed("crossed bimodules |R|,|M| <= 4", lambda: crossed_bimodules(4, 4, args.jobs))
    timed("morphisms with center <= 16", lambda: census_morphisms(xbms, jobs=args.jobs))
    timed("extensions of order <= 8", lambda: census_extensions(8))
    timed("extensions of order 16", order16_extensions)


if __name__ == "__main__":
    main()
