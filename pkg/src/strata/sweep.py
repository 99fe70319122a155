"""Enumeration of signatures and deterministic batch reports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .components import list_components
from .fiber import image_dimension
from .stratum import Emptiness, GenusTooSmall, MarkingSet, Stratum, is_empty, stratum_dimension
from .witness import (
    BudgetExceeded,
    ExceptionalCase,
    HyperellipticComponent,
    NotFound,
    WitnessUnknown,
    brute_force_witness,
    check_certificate,
    find_witness,
)


@dataclass(frozen=True)
class SweepConfig:
    k: int = 1
    genera: tuple[int, ...] = (2, 3)
    lo: int = -6
    hi: int = 8
    max_n: int = 8
    meromorphic_only: bool = False


def signatures(k: int, g: int, lo: int, hi: int, max_n: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of nonzero entries in [lo, hi] summing to k(2g-2).

    Yielded in order of length, then lexicographically descending.
    """
    total = k * (2 * g - 2)
    values = [v for v in range(hi, lo - 1, -1) if v != 0]

    def rec(prefix: list[int], start: int, remaining: int, left: int):
        if left == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for idx in range(start, len(values)):
            v = values[idx]
            # the rest is at most v each and at least lo each
            if remaining - v > v * (left - 1) or remaining - v < lo * (left - 1):
                continue
            prefix.append(v)
            yield from rec(prefix, idx, remaining - v, left - 1)
            prefix.pop()

    for n in range(1, max_n + 1):
        yield from rec([], 0, total, n)


def strata(cfg: SweepConfig) -> Iterator[Stratum]:
    for g in cfg.genera:
        for mu in signatures(cfg.k, g, cfg.lo, cfg.hi, cfg.max_n):
            s = Stratum(cfg.k, g, mu)
            if cfg.meromorphic_only and not s.is_meromorphic:
                continue
            yield s


def marking_sets(s: Stratum, max_size: int | None = None) -> Iterator[MarkingSet]:
    """Subsets A of {1..n} with |A| <= max_size (default g), up to equal entries.

    Two subsets that differ by swapping markings with equal entries give the
    same question, so only the first in index order is kept.
    """
    bound = s.g if max_size is None else max_size
    seen = set()
    for r in range(min(bound, s.n) + 1):
        for combo in itertools.combinations(range(1, s.n + 1), r):
            key = tuple(sorted((s.entry(i), i in combo) for i in range(1, s.n + 1)))
            if key in seen:
                continue
            seen.add(key)
            yield MarkingSet.of(combo, s.n)


SPORADIC = (
    (3, (9, -1)),
    (3, (6, 3, -1)),
    (3, (3, 3, 3, -1)),
    (4, (12,)),
    (4, (9, 3)),
    (4, (6, 6)),
    (4, (6, 3, 3)),
    (4, (3, 3, 3, 3)),
)


@dataclass(frozen=True)
class SweepRow:
    stratum: str
    component: str
    dim: int
    image_status: str
    image_dim: int | None
    witness: str
    oracle: str | None = None

    def to_json(self) -> dict:
        out = {
            "stratum": self.stratum,
            "component": self.component,
            "dim": self.dim,
            "image_dim": self.image_dim,
            "image_status": self.image_status,
            "witness": self.witness,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


@dataclass
class SweepReport:
    rows: list[SweepRow]
    metadata: dict
    failures: int = 0

    COLUMNS = ("stratum", "component", "dim", "image_dim", "image_status", "witness")

    def to_json(self) -> dict:
        return {"metadata": self.metadata, "rows": [r.to_json() for r in self.rows], "failures": self.failures}

    def to_tsv(self) -> str:
        cols = self.COLUMNS + (("oracle",) if any(r.oracle is not None for r in self.rows) else ())
        lines = ["\t".join(cols)]
        for r in self.rows:
            d = r.to_json()
            lines.append("\t".join("" if d.get(c) is None else str(d.get(c)) for c in cols))
        return "\n".join(lines) + "\n"


def sort_key(s: Stratum) -> tuple:
    return (s.g, s.n, tuple(sorted(s.mu)), s.mu)


def _witness_status(c, A, rules) -> str:

    try:
        cert = find_witness(c, A, rules)
    except ExceptionalCase as exc:
        return f"exceptional:{exc.citation}"
    except HyperellipticComponent:
        return "hyperelliptic"
    except WitnessUnknown:
        return "unknown"
    return "certified" if check_certificate(cert).ok else "rejected"


def _oracle_status(c, A, budget: int) -> str:
    try:
        brute_force_witness(c, A, budget=budget)
    except NotFound:
        return "notfound"
    except BudgetExceeded:
        return "budget"
    return "found"


def stratum_rows(s: Stratum, rules=None, oracle: bool = False, budget: int = 50_000) -> tuple[list[SweepRow], int]:
    """Report rows for one stratum and the number of hard failures."""
    dim = stratum_dimension(s)
    if is_empty(s, rules) is Emptiness.EMPTY:
        return [SweepRow(str(s), "-", dim, "Empty", None, "-")], 0
    comps = list_components(s, rules)
    if comps is None:
        return [SweepRow(str(s), "unknown", dim, "Unknown", None, "-")], 0
    rows, failures = [], 0
    A0 = MarkingSet.of(range(1, min(s.g, s.n) + 1), s.n)
    for c in comps:
        try:
            res = image_dimension(c, rules=rules)
            status, idim = res.status.value, res.dim
        except GenusTooSmall:
            status, idim = "GenusTooSmall", None
        wit = _witness_status(c, A0, rules)
        failures += wit == "rejected"
        orc = None
        if oracle:
            orc = _oracle_status(c, A0, budget)
            decided = wit == "certified" or wit.startswith("exceptional")
            if decided and orc != "budget" and (orc == "found") != (wit == "certified"):
                orc += ":disagree"
                failures += 1
        rows.append(SweepRow(str(s), str(c.label), dim, status, idim, wit, orc))
    return rows, failures


def run_sweep(items: Iterable[Stratum], metadata: dict, rules=None, oracle: bool = False, budget: int = 50_000) -> SweepReport:
    report = SweepReport([], metadata)
    for s in sorted(items, key=sort_key):
        rows, bad = stratum_rows(s, rules, oracle, budget)
        report.rows.extend(rows)
        report.failures += bad
    return report
