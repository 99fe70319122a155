"""Guided construction of degeneration certificates.

The generator follows the inductions on the genus: split off a genus-1 curve
carrying one point of A and recurse on the genus g-1 side.  Spin components
are tracked by choosing a parity for every leaf so that the parities add up
to the target parity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..components import (
    ComponentDescriptor,
    ComponentKind,
    Parity,
    RuleTable,
    list_components,
    node_parity,
)
from ..stratum import Emptiness, MarkingSet, Stratum, even_type_entries, is_empty, is_hyperelliptic_type
from .certificate import Certificate, Clutch, Leaf, LeafKind
from .checker import NONHYP_PARITY, genus2_case
from .clutch import ClutchError, split_entries


class WitnessError(Exception):
    pass


class ExceptionalCase(WitnessError):
    """The statement h0 = 1 is known to fail for this (component, A)."""

    def __init__(self, citation: str, message: str = ""):
        super().__init__(message or citation)
        self.citation = citation


class WitnessUnknown(WitnessError):
    """No rule of the generator applies; nothing is claimed."""


class HyperellipticComponent(WitnessError):
    pass


EXCEPTION_EVEN_SIMPLE_POLES = "even-component-double-zeros-simple-pole-pair"
EXCEPTION_ODD_DOUBLE_POLE = "odd-component-double-zeros-double-pole"
EXCEPTION_QUADRATIC_211 = "quadratic-(2,1,1)-hyperelliptic-conjugate-points"

_G3_QUADRATIC = {
    (4, 4): "quadratic-genus3-(4,4)",
    (7, 1): "quadratic-genus3-(7,1)-finite-map",
    (6, 1, 1): "quadratic-genus3-(6,1,1)-weierstrass",
}


def exceptional_citation(c: ComponentDescriptor, A: MarkingSet) -> str | None:
    """Citation id when (component, A) is one of the documented failures."""
    s = c.stratum
    sig = tuple(sorted(s.mu, reverse=True))
    a_entries = sorted(s.entry(i) for i in A)
    if s.k == 1 and s.g >= 2 and c.parity is not None:
        twos = [i for i in range(1, s.n + 1) if s.entry(i) == 2]
        if sorted(A) == twos and len(twos) == s.g:
            if sig == (2,) * s.g + (-1, -1) and c.parity is Parity.EVEN:
                return EXCEPTION_EVEN_SIMPLE_POLES
            if sig == (2,) * s.g + (-2,) and c.parity is Parity.ODD:
                return EXCEPTION_ODD_DOUBLE_POLE
    if s.k == 2 and s.g == 2 and sig == (2, 1, 1) and a_entries == [1, 1]:
        return EXCEPTION_QUADRATIC_211
    return None


@dataclass
class _Ctx:
    k: int
    next_edge: int = 1

    def edge(self) -> int:
        e = self.next_edge
        self.next_edge += 1
        return -e


def _leaf(s, labels, A, kind, parity=None, citation=None) -> Leaf:
    A_here = tuple(sorted(x for x in labels if x in A))
    B_here = tuple(sorted(x for x in labels if x > 0 and x not in A))
    return Leaf(s, tuple(labels), A_here, B_here, kind, parity, citation)


def _split(ctx: _Ctx, s: Stratum, labels, pivot: int, extra=()):
    """Labelled clutching at positions ``pivot`` and ``extra``; None if illegal."""
    try:
        left_pos, right_pos, left_entries, glue = split_entries(s, pivot, extra)
    except ClutchError:
        return None
    left = Stratum(s.k, 1, left_entries + (glue.left_order,))
    right = Stratum(s.k, s.g - 1, tuple(s.mu[j] for j in right_pos) + (glue.right_order,))
    if is_empty(left) is Emptiness.EMPTY or is_empty(right) is Emptiness.EMPTY:
        return None
    e = ctx.edge()
    left_labels = tuple(labels[j] for j in left_pos) + (e,)
    right_labels = tuple(labels[j] for j in right_pos) + (e,)
    return left, left_labels, right, right_labels, glue


def _clutch_node(s, labels, A, glue, left, right) -> Clutch:
    A_here = tuple(sorted(x for x in labels if x in A))
    B_here = tuple(sorted(x for x in labels if x > 0 and x not in A))
    return Clutch(s, tuple(labels), A_here, B_here, glue.as_tuple(), left, right)


# ---------------------------------------------------------------------------
# no spin bookkeeping


def _solve_plain(ctx: _Ctx, s: Stratum, labels, A: frozenset) -> Leaf | Clutch | None:
    here = [j for j, x in enumerate(labels) if x in A]
    if len(here) <= 1:
        return _leaf(s, labels, A, LeafKind.GENUS1_DIRECT)
    if s.g == 1:
        return None
    if s.g == 2:
        return _genus2_plain(ctx, s, labels, A, here)
    sig = tuple(sorted(s.mu, reverse=True))
    if s.k == 2 and s.g == 3 and sig in _G3_QUADRATIC:
        return _leaf(s, labels, A, LeafKind.EXPLICIT_ARGUMENT, citation=_G3_QUADRATIC[sig])
    core = [m for m in s.mu if m != 0]
    if len(core) >= s.g:
        return _leaf(s, labels, A, LeafKind.MANY_MARKED_POINTS)
    # least index with a large enough entry; k=2 prefers m >= 4
    thresholds = (3,) if s.k == 1 else (4, 3)
    tried = set()
    for t in thresholds:
        for j in range(s.n):
            if s.mu[j] < t or j in tried:
                continue
            tried.add(j)
            node = _clutch_plain(ctx, s, labels, A, j, ())
            if node is not None:
                return node
    return None


def _clutch_plain(ctx, s, labels, A, pivot, extra):
    parts = _split(ctx, s, labels, pivot, extra)
    if parts is None:
        return None
    left, ll, right, rl, glue = parts
    if sum(1 for x in ll if x in A) > 1:
        return None
    lnode = _leaf(left, ll, A, LeafKind.GENUS1_DIRECT)
    rnode = _solve_plain(ctx, right, rl, A)
    if rnode is None:
        return None
    return _clutch_node(s, labels, A, glue, lnode, rnode)


def _genus2_plain(ctx, s, labels, A, here):
    # two genus-1 curves, one point of A on each
    i, j = here
    first = [i, j]
    if s.k == 1:
        # larger entry first; ties by index
        first.sort(key=lambda p: (-s.mu[p], p))
    for p in first:
        if s.mu[p] >= 3:
            node = _clutch_plain(ctx, s, labels, A, p, ())
            if node is not None:
                return node
    other = [q for q in range(s.n) if q not in here and s.mu[q] > 0]
    for p in first:
        if s.mu[p] <= 0:
            continue
        for r in range(len(other), -1, -1):
            for extra in itertools.combinations(other, r):
                node = _clutch_plain(ctx, s, labels, A, p, extra)
                if node is not None:
                    return node
    a_entries = tuple(sorted((s.mu[p] for p in here), reverse=True))
    case = genus2_case(s.k, s.mu, a_entries)
    if case is None:
        return None
    return _leaf(s, labels, A, LeafKind.GENUS2_TABLE, citation=case)


# ---------------------------------------------------------------------------
# spin bookkeeping (k = 1, even type)


def _solve_spin(ctx: _Ctx, s: Stratum, labels, A: frozenset, parity: Parity):
    here = [j for j, x in enumerate(labels) if x in A]
    sig = tuple(sorted(s.mu, reverse=True))
    if len(here) <= 1:
        return _leaf(s, labels, A, LeafKind.GENUS1_DIRECT, parity)
    if s.g == 1:
        return None
    a_entries = [s.mu[j] for j in here]
    if all(m == 2 for m in a_entries):
        if sig == (2,) * s.g + (-1, -1) and parity is Parity.ODD:
            return _leaf(s, labels, A, LeafKind.EXPLICIT_ARGUMENT, parity, "odd-component-double-zeros-simple-pole-pair")
        if sig == (2,) * s.g + (-2,) and parity is Parity.EVEN:
            return _leaf(s, labels, A, LeafKind.EXPLICIT_ARGUMENT, parity, "even-component-double-zeros-double-pole")
    if s.g >= 3 and is_hyperelliptic_type(s):
        cite = "hyperelliptic-type-two-points-finite-map" if s.n == 2 else "hyperelliptic-type-three-four-points-dimension"
        return _leaf(s, labels, A, LeafKind.EXPLICIT_ARGUMENT, parity, cite)
    if s.g == 2 and NONHYP_PARITY.get(sig) is parity and all(m == -1 for m in a_entries):
        return _leaf(s, labels, A, LeafKind.GENUS2_TABLE, parity, "k1-simple-pole-pair-nonhyp")

    # a point of A with entry >= 4 goes alone to the genus-1 side
    for p in here:
        if s.mu[p] >= 4:
            node = _clutch_spin(ctx, s, labels, A, parity, p, ())
            if node is not None:
                return node
    # an even entry of A plus zeros >= 2 outside A adding up to >= 4
    outside = [q for q in range(s.n) if labels[q] not in A and s.mu[q] >= 2]
    for p in here:
        if s.mu[p] <= 0 or s.mu[p] % 2:
            continue
        for r in range(1, len(outside) + 1):
            for extra in itertools.combinations(outside, r):
                if s.mu[p] + sum(s.mu[q] for q in extra) < 4:
                    continue
                node = _clutch_spin(ctx, s, labels, A, parity, p, extra)
                if node is not None:
                    return node
    return None


def _clutch_spin(ctx, s, labels, A, parity, pivot, extra):
    parts = _split(ctx, s, labels, pivot, extra)
    if parts is None:
        return None
    left, ll, right, rl, glue = parts
    if sum(1 for x in ll if x in A) > 1:
        return None
    if not (even_type_entries(left.mu) and even_type_entries(right.mu)):
        return None
    for right_parity in (Parity.EVEN, Parity.ODD):
        rnode = _solve_spin(ctx, right, rl, A, right_parity)
        if rnode is not None:
            lnode = _leaf(left, ll, A, LeafKind.GENUS1_DIRECT, node_parity(parity, right_parity))
            return _clutch_node(s, labels, A, glue, lnode, rnode)
    # some component on the right will do; the genus-1 side sets the parity
    rnode = _solve_plain(ctx, right, rl, A)
    if rnode is not None:
        lnode = _leaf(left, ll, A, LeafKind.GENUS1_DIRECT, parity)
        return _clutch_node(s, labels, A, glue, lnode, rnode)
    return None


# ---------------------------------------------------------------------------


def find_witness(c: ComponentDescriptor, A: MarkingSet | set | frozenset, rules: RuleTable | None = None) -> Certificate:
    """Certificate that h0(sum of p_i, i in A) = 1 for the generic curve of ``c``.

    Raises ExceptionalCase for the documented failures, WitnessUnknown when
    no rule applies and HyperellipticComponent for hyperelliptic components
    outside the induction.
    """
    s = c.stratum
    if not isinstance(A, MarkingSet):
        A = MarkingSet.of(A, s.n)
    if len(A) > s.g:
        raise ValueError(f"|A| = {len(A)} exceeds the genus {s.g}")
    cite = exceptional_citation(c, A)
    if cite is not None:
        raise ExceptionalCase(cite)
    comps = list_components(s, rules)
    if comps is None or c not in comps:
        raise WitnessUnknown(f"{c} is not a determined component")
    if c.is_hyperelliptic and len(comps) > 1 and c.parity is None:
        raise HyperellipticComponent(f"{c} is hyperelliptic")
    aset = frozenset(A.indices)
    labels = tuple(range(1, s.n + 1))
    ctx = _Ctx(s.k)
    if len(aset) <= 1:
        root = _leaf(s, labels, aset, LeafKind.GENUS1_DIRECT, c.parity)
        return Certificate(root, c, A)
    if c.kind in (ComponentKind.SPORADIC_REGULAR, ComponentKind.SPORADIC_IRREDUCIBLE):
        raise WitnessUnknown("sporadic components are only ruled on the full marking set")
    if 0 in s.mu:
        raise WitnessUnknown("zero entries at the root are not covered")
    if s.k == 1 and not s.is_meromorphic:
        raise WitnessUnknown("holomorphic abelian strata are not covered")
    if s.k == 2 and any(m < -1 for m in s.mu):
        raise WitnessUnknown("quadratic poles of order >= 2 are not covered")
    if c.parity is not None:
        root = _solve_spin(ctx, s, labels, aset, c.parity)
    else:
        root = _solve_plain(ctx, s, labels, aset)
    if root is None:
        raise WitnessUnknown(f"no rule certifies {c} with A={sorted(aset)}")
    return Certificate(root, c, A)
