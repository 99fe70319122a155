"""Image dimensions over a sweep of abelian strata, checked against min(2g+n-3, 3g-3).

    python scripts/theorem_table.py --g-max 5 --max-n 8 > table.tsv
"""

import argparse
import collections
import sys

from strata.components import list_components
from strata.fiber import image_dimension
from strata.stratum import Emptiness, is_empty
from strata.sweep import SweepConfig, sort_key, strata


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--g-min", type=int, default=2)
    p.add_argument("--g-max", type=int, default=5)
    p.add_argument("--lo", type=int, default=-6)
    p.add_argument("--hi", type=int, default=8)
    p.add_argument("--max-n", type=int, default=8)
    a = p.parse_args()
    cfg = SweepConfig(1, tuple(range(a.g_min, a.g_max + 1)), a.lo, a.hi, a.max_n, meromorphic_only=True)
    counts = collections.Counter()
    print("stratum\tcomponent\tn\timage_dim\tformula\tstatus")
    for s in sorted(strata(cfg), key=sort_key):
        if is_empty(s) is Emptiness.EMPTY:
            counts["empty"] += 1
            continue
        for c in list_components(s):
            r = image_dimension(c)
            formula = min(2 * s.g + s.n - 3, 3 * s.g - 3)
            counts[r.status.value] += 1
            if r.dim is not None and r.dim != formula:
                counts["mismatch"] += 1
            print(f"{s}\t{c.label}\t{s.n}\t{'' if r.dim is None else r.dim}\t{formula}\t{r.status.value}")
    print(dict(counts), file=sys.stderr)
    return 1 if counts["mismatch"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
