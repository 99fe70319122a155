"""Compare find_witness with the brute-force search on all small inputs.

    python scripts/oracle_agreement.py --max-g 3 --max-n 6
"""

import argparse
import collections
import time
from dataclasses import dataclass

from strata.components import list_components
from strata.stratum import Emptiness, Stratum, is_empty
from strata.sweep import marking_sets, signatures
from strata.witness import (
    BudgetExceeded,
    ExceptionalCase,
    HyperellipticComponent,
    NotFound,
    WitnessUnknown,
    brute_force_witness,
    find_witness,
)


@dataclass(frozen=True)
class Config:
    max_g: int = 3
    lo: int = -6
    hi: int = 8
    max_n: int = 5


def run(cfg: Config):
    stats = collections.Counter()
    disagreements = []
    for k in (1, 2):
        for g in range(1, cfg.max_g + 1):
            for mu in signatures(k, g, cfg.lo, cfg.hi, cfg.max_n):
                s = Stratum(k, g, mu)
                if is_empty(s) is Emptiness.EMPTY:
                    continue
                for c in list_components(s) or []:
                    for A in marking_sets(s):
                        try:
                            find_witness(c, A)
                            gen = True
                        except ExceptionalCase:
                            gen = False
                        except (WitnessUnknown, HyperellipticComponent):
                            stats["unknown"] += 1
                            continue
                        stats["decided"] += 1
                        try:
                            brute_force_witness(c, A)
                            orc = True
                        except NotFound:
                            orc = False
                        except BudgetExceeded:
                            stats["budget"] += 1
                            continue
                        if gen != orc:
                            disagreements.append((str(c), sorted(A), gen, orc))
    return stats, disagreements


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-g", type=int, default=3)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--lo", type=int, default=-6)
    p.add_argument("--hi", type=int, default=8)
    a = p.parse_args()
    start = time.perf_counter()
    stats, bad = run(Config(a.max_g, a.lo, a.hi, a.max_n))
    total = stats["decided"] + stats["unknown"]
    print(f"decided {stats['decided']}  unknown {stats['unknown']} ({100 * stats['unknown'] / max(total, 1):.1f}%)"
          f"  budget {stats['budget']}  disagreements {len(bad)}  [{time.perf_counter() - start:.1f}s]")
    for row in bad[:20]:
        print(*row, sep="\t")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
