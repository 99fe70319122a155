"""Signatures and strata of abelian (k=1) and quadratic (k=2) differentials.

A stratum is stored with its entries in input order; marking ``i`` (1-based)
is the point carrying entry ``mu[i-1]``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class StratumError(ValueError):
    """Base class for invalid stratum data."""


class SumMismatch(StratumError):
    pass


class ZeroEntry(StratumError):
    pass


class UnsupportedK(StratumError):
    pass


class EmptySignature(StratumError):
    pass


class BadGenus(StratumError):
    pass


class WrongK(ValueError):
    pass


class GenusTooSmall(ValueError):
    pass


class Emptiness(str, enum.Enum):
    EMPTY = "empty"
    NONEMPTY = "nonempty"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Stratum:
    k: int
    g: int
    mu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(m) for m in self.mu))
        _check(self.k, self.g, self.mu)

    @property
    def n(self) -> int:
        return len(self.mu)

    def entry(self, i: int) -> int:
        """Entry of the 1-based marking ``i``."""
        return self.mu[i - 1]

    @property
    def is_meromorphic(self) -> bool:
        return any(m < 0 for m in self.mu)

    def normal_form(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.k, self.g, tuple(sorted(self.mu, reverse=True)))

    def sorted(self) -> "Stratum":
        return Stratum(self.k, self.g, tuple(sorted(self.mu, reverse=True)))

    def to_json(self) -> dict:
        return {"k": self.k, "g": self.g, "mu": list(self.mu)}

    @classmethod
    def from_json(cls, data: dict) -> "Stratum":
        return validate_stratum(data["k"], data["g"], data["mu"])

    def __str__(self) -> str:
        name = "H" if self.k == 1 else "Q"
        return f"{name}_{self.g}({','.join(str(m) for m in self.mu)})"


def _check(k: int, g: int, mu: Sequence[int]) -> None:
    if k not in (1, 2):
        raise UnsupportedK(f"k={k} is not supported (only 1 and 2)")
    if g < 1:
        raise BadGenus(f"genus must be >= 1, got {g}")
    if len(mu) == 0:
        raise EmptySignature("signature must have at least one entry")
    if k == 1 and any(m == 0 for m in mu):
        raise ZeroEntry("zero entries are not allowed for k=1")
    expected = k * (2 * g - 2)
    if sum(mu) != expected:
        raise SumMismatch(f"entries sum to {sum(mu)}, expected {expected}")


def validate_stratum(k: int, g: int, entries: Iterable[int]) -> Stratum:
    return Stratum(int(k), int(g), tuple(int(m) for m in entries))


@dataclass(frozen=True)
class MarkingSet:
    """A subset ``A`` of the markings ``{1..n}``; ``B`` is its complement."""

    indices: frozenset[int]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))
        bad = [i for i in self.indices if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"marking indices {sorted(bad)} outside 1..{self.n}")

    @classmethod
    def of(cls, indices: Iterable[int], n: int) -> "MarkingSet":
        return cls(frozenset(indices), n)

    @classmethod
    def full(cls, n: int) -> "MarkingSet":
        return cls(frozenset(range(1, n + 1)), n)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(sorted(self.indices))


def abelian_power_default(s: Stratum) -> bool:
    return s.k == 1 and not s.is_meromorphic


def stratum_dimension(s: Stratum, abelian_power_component: bool | None = None) -> int:
    """2g-2+n on components of k-th powers of holomorphic abelian
    differentials, 2g-3+n otherwise.

    With ``abelian_power_component=None`` the flag is inferred: true exactly
    for holomorphic k=1 strata.
    """
    if abelian_power_component is None:
        abelian_power_component = abelian_power_default(s)
    base = 2 * s.g - 3 + s.n
    return base + 1 if abelian_power_component else base


def expected_image_dimension(s: Stratum, abelian_power_component: bool | None = None) -> int:
    if s.g < 2:
        raise GenusTooSmall("the forgetful map to M_g needs g >= 2")
    return min(stratum_dimension(s, abelian_power_component), 3 * s.g - 3)


def is_even_type(s: Stratum) -> bool:
    if s.k != 1:
        raise WrongK("even type is defined for k=1 only")
    return even_type_entries(s.mu)


def even_type_entries(mu: Sequence[int]) -> bool:
    if all(m % 2 == 0 for m in mu):
        return True
    c = Counter(mu)
    if c[-1] != 2:
        return False
    rest = [m for m in mu if m != -1]
    return len(rest) > 0 and all(m > 0 and m % 2 == 0 for m in rest)


def is_hyperelliptic_type(s: Stratum) -> bool:
    """Whether the stratum carries a hyperelliptic component.

    k=1 holomorphic: (2g-2) and (g-1,g-1).  k=1 meromorphic: (2n,-2p),
    (2n,-p,-p), (n,n,-2p), (n,n,-p,-p).  k=2 with entries >= -1: the four
    families (4(g-j)-6, 4j+2), (2(g-j)-3, 2(g-j)-3, 4j+2),
    (4(g-j)-6, 2j+1, 2j+1), (2(g-j)-3, 2(g-j)-3, 2j+1, 2j+1).
    """
    if s.g < 2:
        return False
    mu = tuple(sorted(s.mu, reverse=True))
    if s.k == 1:
        if not s.is_meromorphic:
            return mu in ((2 * s.g - 2,), (s.g - 1, s.g - 1))
        pos = [m for m in mu if m > 0]
        neg = [m for m in mu if m < 0]
        zeros_ok = (len(pos) == 1 and pos[0] % 2 == 0) or (len(pos) == 2 and pos[0] == pos[1])
        poles_ok = (len(neg) == 1 and neg[0] % 2 == 0) or (len(neg) == 2 and neg[0] == neg[1])
        return zeros_ok and poles_ok
    if any(m < -1 or m == 0 for m in mu):
        return False
    return mu in _quadratic_hyperelliptic_signatures(s.g)


def _quadratic_hyperelliptic_signatures(g: int) -> set[tuple[int, ...]]:
    out = set()
    for j in range(-1, g + 1):
        a, b = 4 * (g - j) - 6, 2 * (g - j) - 3
        cands = []
        if j >= 0:
            cands.append((a, 4 * j + 2))
            cands.append((b, b, 4 * j + 2))
        cands.append((a, 2 * j + 1, 2 * j + 1))
        cands.append((b, b, 2 * j + 1, 2 * j + 1))
        for c in cands:
            if all(m >= -1 and m != 0 for m in c) and sum(c) == 4 * g - 4:
                out.add(tuple(sorted(c, reverse=True)))
    return out


_Q_EMPTY = {(1, ()), (1, (1, -1)), (2, (4,)), (2, (3, 1))}


def is_empty(s: Stratum, rules=None) -> Emptiness:
    """Three-valued emptiness verdict.

    For k=2 a zero entry is an unconstrained marked point, so it is ignored
    when matching the short list of empty quadratic strata.  ``rules`` is an
    optional table with a ``lookup(stratum)`` method; its records win.
    """
    if rules is not None:
        rec = rules.lookup(s)
        if rec is not None and rec.empty is not None:
            return Emptiness.EMPTY if rec.empty else Emptiness.NONEMPTY
    if s.k == 1:
        neg = [m for m in s.mu if m < 0]
        if neg == [-1]:
            return Emptiness.EMPTY
        # Kontsevich-Zorich (holomorphic) and Boissy (meromorphic, g >= 1):
        # the single simple pole is the only obstruction.
        return Emptiness.NONEMPTY
    core = tuple(sorted((m for m in s.mu if m != 0), reverse=True))
    if (s.g, core) in _Q_EMPTY:
        return Emptiness.EMPTY
    if s.g == 1:
        return Emptiness.NONEMPTY
    if all(m >= -1 for m in core):
        return Emptiness.NONEMPTY
    return Emptiness.UNKNOWN
