"""Exhaustive search for degeneration certificates on small strata.

Unlike the generator, the search does not follow any particular induction:
at every node it tries every leaf kind, every citation and every legal
clutching (any zero as pivot, any set of further zeros moved along, both
parity splits).  Subtrees are memoised on the multiset of (entry, in A)
pairs, and the assembled certificate is re-checked by the checker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..components import ComponentDescriptor, Parity, node_parity
from ..stratum import Emptiness, MarkingSet, Stratum, StratumError, even_type_entries, is_empty
from .certificate import Certificate, Clutch, Leaf, LeafKind
from .checker import REGISTRY, _Checker, _Fail, check_certificate, genus2_case


class NotFound(Exception):
    """The search space is exhausted without a valid certificate."""


class BudgetExceeded(Exception):
    pass


DEFAULT_BUDGET = 200_000

# right subtree searched without parities
_FREE = object()


@dataclass
class _Search:
    k: int
    parity_mode: bool
    budget: int
    steps: int = 0
    memo: dict = field(default_factory=dict)
    next_edge: int = 1
    plain: "_Search | None" = None

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search steps")

    # -- candidates ---------------------------------------------------------

    def leaf_candidates(self, s: Stratum, labels, A):
        a_here = tuple(sorted(x for x in labels if x in A))
        b_here = tuple(sorted(x for x in labels if x > 0 and x not in A))
        parities = (None,) if not self.parity_mode else (Parity.EVEN, Parity.ODD)
        a_entries = tuple(sorted((m for x, m in zip(labels, s.mu) if x in A), reverse=True))
        for par in parities:
            yield Leaf(s, labels, a_here, b_here, LeafKind.GENUS1_DIRECT, par)
            if s.g == 2:
                case = genus2_case(s.k, s.mu, a_entries)
                if case is not None:
                    yield Leaf(s, labels, a_here, b_here, LeafKind.GENUS2_TABLE, par, case)
            yield Leaf(s, labels, a_here, b_here, LeafKind.MANY_MARKED_POINTS, par)
            for cite in REGISTRY:
                yield Leaf(s, labels, a_here, b_here, LeafKind.EXPLICIT_ARGUMENT, par, cite)

    def clutch_candidates(self, s: Stratum, labels):
        """(left entries/labels, right entries/labels, glue) for every split."""
        if s.g < 2:
            return
        pos = [j for j in range(s.n) if s.mu[j] > 0]
        for pivot in pos:
            rest = [j for j in pos if j != pivot]
            for r in range(len(rest) + 1):
                for extra in itertools.combinations(rest, r):
                    left_pos = (pivot,) + extra
                    t = sum(s.mu[j] for j in left_pos)
                    a, b = -t, t - 2 * self.k
                    if t < 3 or (b == 0 and self.k == 1):
                        continue
                    right_pos = [j for j in range(s.n) if j not in left_pos]
                    try:
                        left = Stratum(self.k, 1, tuple(s.mu[j] for j in left_pos) + (a,))
                        right = Stratum(self.k, s.g - 1, tuple(s.mu[j] for j in right_pos) + (b,))
                    except StratumError:
                        continue
                    if is_empty(left) is Emptiness.EMPTY or is_empty(right) is Emptiness.EMPTY:
                        continue
                    yield left_pos, right_pos, left, right, (a, b)

    # -- search ---------------------------------------------------------------

    def sub_search(self) -> "_Search":
        """Search without parities sharing the budget and the edge counter."""
        if self.plain is None:
            self.plain = _Search(self.k, False, self.budget)
        self.plain.steps = self.steps
        self.plain.next_edge = self.next_edge + 10_000
        return self.plain

    def leaf_ok(self, leaf: Leaf) -> bool:
        ch = _Checker()
        try:
            ch.node(leaf.to_json(), "n", self.parity_mode)
        except _Fail:
            return False
        return not ch.violations

    def clutch_ok(self, left: Stratum, right: Stratum) -> bool:
        if not self.parity_mode:
            return True
        return even_type_entries(left.mu) and even_type_entries(right.mu)

    def build(self, s: Stratum, labels, A, parity):
        """A subtree for the node, or None.  Memoised on a canonical key."""
        key = (s.g, tuple(sorted((m, x in A) for m, x in zip(s.mu, labels))), parity)
        if self.memo.get(key) is False:
            return None
        self.tick()
        for node in self.candidates(s, labels, A, parity):
            self.memo[key] = True
            return node
        self.memo[key] = False
        return None

    def candidates(self, s: Stratum, labels, A, parity):
        """All valid subtrees for the node, lazily, in a fixed order."""
        for leaf in self.leaf_candidates(s, labels, A):
            if leaf.parity is parity and self.leaf_ok(leaf):
                yield leaf
        a_here = tuple(sorted(x for x in labels if x in A))
        b_here = tuple(sorted(x for x in labels if x > 0 and x not in A))
        for left_pos, right_pos, left, right, glue in self.clutch_candidates(s, labels):
            if not self.clutch_ok(left, right):
                continue
            e = -self.next_edge
            self.next_edge += 1
            ll = tuple(labels[j] for j in left_pos) + (e,)
            rl = tuple(labels[j] for j in right_pos) + (e,)
            splits = [(None, None)] if parity is None else [
                (node_parity(parity, rp), rp) for rp in (Parity.EVEN, Parity.ODD)
            ] + [(parity, _FREE)]
            for lp, rp in splits:
                lnode = self.build(left, ll, A, lp)
                if lnode is None:
                    continue
                if rp is _FREE:
                    plain = self.sub_search()
                    rnode = plain.build(right, rl, A, None)
                    self.steps = plain.steps
                else:
                    rnode = self.build(right, rl, A, rp)
                if rnode is None:
                    continue
                yield Clutch(s, tuple(labels), a_here, b_here, glue, lnode, rnode)


def _relabel_edges(node, start=1):
    """Renumber branch labels 1, 2, ... in preorder so output is canonical."""
    mapping: dict[int, int] = {}

    def walk(n):
        if isinstance(n, Clutch):
            e = (set(n.left.labels) & set(n.right.labels)).pop()
            mapping.setdefault(e, -(len(mapping) + start))
            walk(n.left)
            walk(n.right)

    walk(node)

    def sub(n):
        labels = tuple(mapping.get(x, x) for x in n.labels)
        if isinstance(n, Leaf):
            return Leaf(n.stratum, labels, n.A, n.B, n.kind, n.parity, n.citation)
        return Clutch(n.stratum, labels, n.A, n.B, n.glue, sub(n.left), sub(n.right))

    return sub(node)


def brute_force_witness(
    c: ComponentDescriptor, A: MarkingSet | set | frozenset, budget: int = DEFAULT_BUDGET
) -> Certificate:
    """First certificate (in search order) for ``(c, A)``.

    Raises NotFound when none exists and BudgetExceeded when the search is cut.
    """
    s = c.stratum
    if not isinstance(A, MarkingSet):
        A = MarkingSet.of(A, s.n)
    search = _Search(s.k, c.parity is not None, budget)
    labels = tuple(range(1, s.n + 1))
    aset = frozenset(A.indices)
    for root in search.candidates(s, labels, aset, c.parity):
        cert = Certificate(_relabel_edges(root), c, A)
        if check_certificate(cert).ok:
            return cert
        search.tick()
    raise NotFound(f"no certificate for {c} with A={sorted(aset)}")
