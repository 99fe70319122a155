"""Boundary clutchings of a stratum into genus 1 and genus g-1 pieces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..stratum import Emptiness, Stratum, StratumError, is_empty


class ClutchError(ValueError):
    pass


class ZeroResidue(ClutchError):
    pass


class EmptyChild(ClutchError):
    pass


class BadIndex(ClutchError):
    pass


class IllegalClutch(ClutchError):
    pass


@dataclass(frozen=True)
class GlueSpec:
    """Orders at the two branches of the node: ``left_order`` on the genus-1
    side, ``right_order`` on the genus g-1 side."""

    left_order: int
    right_order: int

    def __post_init__(self):
        if self.left_order + self.right_order not in (-2, -4):
            raise ValueError("glue orders must sum to -2k")

    @property
    def k(self) -> int:
        return -(self.left_order + self.right_order) // 2

    def as_tuple(self) -> tuple[int, int]:
        return (self.left_order, self.right_order)


def split_entries(
    parent: Stratum, pivot: int, extra: Sequence[int] = ()
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], GlueSpec]:
    """Positions (0-based) going left and right, plus the left and right entry
    tuples without the branch point, and the glue.  No emptiness checks."""
    n = parent.n
    if parent.g < 2:
        raise IllegalClutch("a genus-1 curve has no clutching of this form")
    if not 0 <= pivot < n or any(not 0 <= j < n for j in extra):
        raise BadIndex("marking index out of range")
    if pivot in extra or len(set(extra)) != len(extra):
        raise BadIndex("the extra markings must be distinct from the pivot")
    mu = parent.mu
    if mu[pivot] <= 0 or any(mu[j] <= 0 for j in extra):
        raise IllegalClutch("only zeros move to the genus-1 side")
    left_pos = (pivot,) + tuple(sorted(extra))
    right_pos = tuple(j for j in range(n) if j not in left_pos)
    s = sum(mu[j] for j in left_pos)
    twok = 2 * parent.k
    if s - twok == 0 and parent.k == 1:
        raise ZeroResidue(f"branch order {s} - 2 = 0 would be a zero entry")
    if s < 3:
        raise IllegalClutch(f"pole order {s} at the node is too small")
    glue = GlueSpec(-s, s - twok)
    return left_pos, right_pos, (mu[pivot],) + tuple(mu[j] for j in sorted(extra)), glue


def clutch(parent: Stratum, i: int, B_sub: Iterable[int] | None = None, rules=None):
    """Clutch at the 1-based marking ``i``, moving the markings ``B_sub``
    along to the genus-1 side.

    Returns ``(left, right, glue)``: the genus-1 stratum
    (m_i, m_B..., -m_i-sum m_B) and the genus g-1 stratum
    (remaining entries..., m_i+sum m_B-2k).
    """
    extra = tuple(j - 1 for j in (B_sub or ()))
    left_pos, right_pos, left_entries, glue = split_entries(parent, i - 1, extra)
    try:
        left = Stratum(parent.k, 1, left_entries + (glue.left_order,))
        right = Stratum(parent.k, parent.g - 1, tuple(parent.mu[j] for j in right_pos) + (glue.right_order,))
    except StratumError as exc:
        raise IllegalClutch(str(exc)) from exc
    for child in (left, right):
        if is_empty(child, rules) is Emptiness.EMPTY:
            raise EmptyChild(f"{child} is empty")
    return left, right, glue
