"""Independent checker for degeneration certificates.

The checker reads the JSON form of a certificate and never calls the
generator.  It is total: malformed input yields violations, not exceptions.
Leaf semantics:

* genus1-direct: at most one point of A on the leaf, so h0 = 1 on any
  curve of genus >= 1.
* genus2-table: a genus-2 leaf whose (signature, A) has an entry in the
  embedded decision table, which records the case of the genus-2 argument.
* many-marked-points: genus >= 3 with at least g marked points.
* explicit-argument: a by-hand argument from a closed registry.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable

from ..components import EmptyStratum, Parity, genus1_parities, list_components, node_parity
from ..stratum import Emptiness, Stratum, StratumError, even_type_entries, is_empty, is_hyperelliptic_type

KINDS = {"genus1-direct", "genus2-table", "many-marked-points", "explicit-argument"}


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: [{self.rule}] {self.message}"


@dataclass
class Verdict:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [vars(v) for v in self.violations]}


class _Fail(Exception):
    pass


# ---------------------------------------------------------------------------
# genus-2 decision table


def genus2_case(k: int, mu: tuple[int, ...], a_entries: tuple[int, ...]) -> str | None:
    """Case of the genus-2 argument for a signature and the entries carried
    by the points of A; None when the statement fails or does not apply."""
    if len(a_entries) > 2:
        return None
    if k == 1:
        if 0 in mu or not any(m < 0 for m in mu):
            return None
        if Counter(m for m in mu if m < 0) == Counter([-1]):
            return None
        if len(a_entries) <= 1:
            return "k1-single"
        if max(a_entries) >= 2:
            return "k1-large-entry"
        if a_entries == (-1, -1):
            others = Counter(mu)
            others[-1] -= 2
            rest = list(others.elements())
            if all(m > 0 for m in rest):
                if all(m % 2 == 0 for m in rest):
                    return "k1-simple-pole-pair-nonhyp"
                return "k1-simple-pole-pair-dimension"
        return "k1-two-genus1-clutching"

    core = tuple(sorted((m for m in mu if m != 0), reverse=True))
    if any(m < -1 for m in core) or core in ((4,), (3, 1), ()):
        return None
    if 0 in a_entries:
        return None
    if len(a_entries) <= 1:
        return "k2-single"
    if len(core) == 2:
        return "k2-two-points-finite-map"
    pair = tuple(sorted(a_entries, reverse=True))
    if core == (2, 1, 1) and pair == (1, 1):
        return None
    if pair[0] >= 3:
        if core == (4, 1, -1) and pair == (4, 1):
            return "k2-(4,1,-1)-weierstrass"
        if core == (4, 1, -1) and pair == (4, -1):
            return "k2-(4,-1,1)-finite-map"
        return "k2-large-entry-clutching"
    if pair[0] == pair[1]:
        m = pair[0]
        if m == 1 and core == (1, 1, 1, 1):
            return "k2-(1,1,1,1)-conjugate-points"
        if m == -1 and core in ((3, 3, -1, -1), (6, -1, -1)):
            return "k2-simple-poles-nonhyp"
        return "k2-equal-dimension"
    return "k2-distinct-finite-map"


# Cases whose conclusion is about the non-hyperelliptic component only.
NONHYP_CASES = {"k1-simple-pole-pair-nonhyp", "k2-simple-poles-nonhyp"}

# Parity of the non-hyperelliptic component, where the genus-2 table needs it.
NONHYP_PARITY = {(2, 2, -1, -1): Parity.ODD, (2, 2, -2): Parity.EVEN}


# ---------------------------------------------------------------------------
# explicit-argument registry: id -> predicate(k, g, mu, a_entries, parity)


def _all_twos_plus(tail: tuple[int, ...]):
    def pred(k, g, mu, a_entries, parity):
        return (
            k == 1
            and tuple(sorted(mu, reverse=True)) == (2,) * g + tail
            and all(m == 2 for m in a_entries)
        )

    return pred


def _hyp_even(ns):
    def pred(k, g, mu, a_entries, parity):
        if k != 1 or g < 3 or len(mu) not in ns or 0 in mu:
            return False
        s = Stratum(1, g, mu)
        return s.is_meromorphic and is_hyperelliptic_type(s) and even_type_entries(mu) and parity is not None

    return pred


def _quadratic_g3(sig):
    def pred(k, g, mu, a_entries, parity):
        return k == 2 and g == 3 and tuple(sorted(mu, reverse=True)) == sig and parity is None

    return pred


def _with_parity(pred, required):
    def wrapped(k, g, mu, a_entries, parity):
        return parity is required and pred(k, g, mu, a_entries, parity)

    return wrapped


REGISTRY: dict[str, Callable[..., bool]] = {
    "odd-component-double-zeros-simple-pole-pair": _with_parity(_all_twos_plus((-1, -1)), Parity.ODD),
    "even-component-double-zeros-double-pole": _with_parity(_all_twos_plus((-2,)), Parity.EVEN),
    "hyperelliptic-type-two-points-finite-map": _hyp_even({2}),
    "hyperelliptic-type-three-four-points-dimension": _hyp_even({3, 4}),
    "quadratic-genus3-(4,4)": _quadratic_g3((4, 4)),
    "quadratic-genus3-(7,1)-finite-map": _quadratic_g3((7, 1)),
    "quadratic-genus3-(6,1,1)-weierstrass": _quadratic_g3((6, 1, 1)),
}


# ---------------------------------------------------------------------------


def _has_parity(node: Any) -> bool:
    if not isinstance(node, dict):
        return False
    if "parity" in node:
        return True
    kids = node.get("children")
    return isinstance(kids, list) and any(_has_parity(c) for c in kids)


class _Checker:
    def __init__(self):
        self.violations: list[Violation] = []
        self.leaf_parities: list[Parity] = []

    def fail(self, path, rule, msg):
        self.violations.append(Violation(path, rule, msg))

    def require(self, cond, path, rule, msg):
        if not cond:
            self.fail(path, rule, msg)
        return bool(cond)

    # -- helpers ------------------------------------------------------------

    def stratum(self, node, path) -> Stratum:
        raw = node.get("stratum") if isinstance(node, dict) else None
        try:
            s = Stratum(int(raw["k"]), int(raw["g"]), tuple(int(m) for m in raw["mu"]))
        except (StratumError, KeyError, TypeError, ValueError) as exc:
            self.fail(path, "stratum-valid", f"invalid stratum {raw!r}: {exc}")
            raise _Fail
        return s

    def int_list(self, node, key, path) -> list[int]:
        val = node.get(key)
        if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
            self.fail(path, "schema", f"{key!r} must be a list of integers")
            raise _Fail
        return val

    # -- nodes --------------------------------------------------------------

    def node(self, node: Any, path: str, parity_mode: bool) -> tuple[Stratum, dict[int, int]]:
        if not isinstance(node, dict) or node.get("type") not in ("leaf", "clutch"):
            self.fail(path, "schema", "node must be an object with type leaf or clutch")
            raise _Fail
        s = self.stratum(node, path)
        labels = self.int_list(node, "labels", path)
        A = self.int_list(node, "A", path)
        B = self.int_list(node, "B", path)
        if not self.require(len(labels) == s.n, path, "labels", "one label per entry required"):
            raise _Fail
        if not self.require(len(set(labels)) == len(labels) and 0 not in labels, path, "labels", "labels must be distinct and nonzero"):
            raise _Fail
        entries = dict(zip(labels, s.mu))
        marked = {x for x in labels if x > 0}
        self.require(len(set(A)) == len(A) and len(set(B)) == len(B), path, "split-partition", "duplicate indices in A or B")
        self.require(
            not (set(A) & set(B)) and set(A) | set(B) == marked,
            path,
            "split-partition",
            f"A={sorted(A)} and B={sorted(B)} must partition the markings {sorted(marked)}",
        )
        self.require(
            is_empty(s) is not Emptiness.EMPTY, path, "nonempty", f"{s} is empty"
        )
        if node["type"] == "leaf":
            self.leaf(node, s, entries, A, path, parity_mode)
        else:
            self.clutch(node, s, entries, A, path, parity_mode)
        return s, entries

    def clutch(self, node, s, entries, A, path, parity_mode):
        glue = node.get("glue")
        children = node.get("children")
        if not (isinstance(glue, list) and len(glue) == 2 and all(isinstance(x, int) for x in glue)):
            self.fail(path, "schema", "glue must be [a, b]")
            raise _Fail
        if not (isinstance(children, list) and len(children) == 2):
            self.fail(path, "schema", "a clutch node has exactly two children")
            raise _Fail
        a, b = glue
        self.require(a + b == -2 * s.k, path, "glue-sum", f"glue orders sum {a + b} != {-2 * s.k}")
        self.require(s.g >= 2, path, "clutch-genus", "only curves of genus >= 2 are clutched")
        for key in ("kind", "parity", "citation"):
            self.require(key not in node, path, "schema", f"clutch nodes carry no {key!r}")

        # A right subtree without parities certifies some component of the
        # genus g-1 stratum; the genus-1 side then fixes the parity.
        free = parity_mode and not _has_parity(children[1])
        ls, lent = self.node(children[0], path + "/0", parity_mode)
        rs, rent = self.node(children[1], path + "/1", parity_mode and not free)

        self.require(ls.k == s.k and rs.k == s.k, path, "child-k", "children must have the parent's k")
        self.require(ls.g == 1 and rs.g == s.g - 1, path, "child-genus", f"children have genera {ls.g},{rs.g}, expected 1,{s.g - 1}")
        branch_l = set(lent) - set(entries)
        branch_r = set(rent) - set(entries)
        if not self.require(
            len(branch_l) == 1 and branch_l == branch_r and all(x < 0 for x in branch_l),
            path,
            "branch",
            "each child needs exactly one new negative label, shared between them",
        ):
            return
        e = branch_l.pop()
        self.require(lent[e] == a and rent[e] == b, path, "branch-order", f"branch orders ({lent[e]},{rent[e]}) differ from glue ({a},{b})")
        moved_l = {x: m for x, m in lent.items() if x != e}
        moved_r = {x: m for x, m in rent.items() if x != e}
        self.require(
            not (set(moved_l) & set(moved_r)) and {**moved_l, **moved_r} == entries,
            path,
            "conservation",
            "non-branch entries of the children must be exactly the parent's entries",
        )
        self.require(all(m > 0 for m in moved_l.values()), path, "clutch-legal", "only zeros may move to the genus-1 side")
        self.require(-a >= 3, path, "clutch-legal", f"pole order {-a} at the node must be >= 3")
        self.require(b != 0 or s.k == 2, path, "clutch-legal", "zero branch order for k=1")
        for child, sub in ((children[0], lent), (children[1], rent)):
            ca = set(child.get("A", []))
            self.require(ca == {x for x in A if x in sub}, path, "split-partition", "child A must be the parent A restricted to the child")
        if parity_mode:
            self.require(
                even_type_entries(ls.mu) and even_type_entries(rs.mu),
                path,
                "parity-children",
                "spin bookkeeping needs both children of even type",
            )

    def leaf(self, node, s, entries, A, path, parity_mode):
        kind = node.get("kind")
        if not self.require(kind in KINDS, path, "leaf-kind", f"unknown leaf kind {kind!r}"):
            return
        par_raw = node.get("parity")
        parity = None
        if par_raw is not None:
            try:
                parity = Parity.parse(par_raw)
            except (KeyError, AttributeError):
                self.fail(path, "parity", f"bad parity {par_raw!r}")
                return
        if parity_mode:
            if not self.require(parity is not None, path, "parity", "every leaf needs a parity when the target has one"):
                return
            self.leaf_parities.append(parity)
        else:
            self.require(parity is None, path, "parity", "leaf parity without a spin target")
        a_entries = tuple(sorted((entries[x] for x in A), reverse=True))
        citation = node.get("citation")

        if kind == "genus1-direct":
            self.require(len(A) <= 1, path, "genus1-direct", f"{len(A)} points of A; at most one allowed")
            self.require(citation is None, path, "schema", "genus1-direct leaves carry no citation")
            if parity_mode:
                if s.g == 1:
                    ok = s.k == 1 and parity in genus1_parities(s)
                else:
                    ok = s.k == 1 and even_type_entries(s.mu)
                self.require(ok, path, "parity-available", f"parity {parity} not realised on {s}")
        elif kind == "genus2-table":
            if not self.require(s.g == 2, path, "genus2-table", "genus-2 leaves only"):
                return
            case = genus2_case(s.k, s.mu, a_entries)
            self.require(case is not None and case == citation, path, "genus2-table", f"table case is {case!r}, certificate says {citation!r}")
            if parity_mode:
                ok = case == "k1-simple-pole-pair-nonhyp" and NONHYP_PARITY.get(tuple(sorted(s.mu, reverse=True))) is parity
                self.require(ok, path, "parity-available", "table leaf cannot certify this parity")
        elif kind == "many-marked-points":
            core = [m for m in s.mu if m != 0]
            scope = (s.k == 1 and s.is_meromorphic) or (s.k == 2 and all(m >= -1 for m in core))
            self.require(s.g >= 3 and len(core) >= s.g, path, "many-marked-points", f"needs g >= 3 and n >= g (g={s.g}, n={len(core)})")
            self.require(scope, path, "many-marked-points", "outside the covered signatures")
            self.require(len(A) <= s.g, path, "many-marked-points", "|A| exceeds the genus")
            self.require(not parity_mode, path, "parity-available", "no parity control on this leaf")
            self.require(citation is None, path, "schema", "many-marked-points leaves carry no citation")
        else:
            pred = REGISTRY.get(citation)
            if not self.require(pred is not None, path, "explicit-registry", f"unregistered argument {citation!r}"):
                return
            ok = pred(s.k, s.g, s.mu, a_entries, parity)
            self.require(ok and len(A) <= s.g, path, "explicit-registry", f"{citation} does not apply to {s} with A-entries {a_entries}")


def _root_checks(ch: _Checker, data: dict, s: Stratum) -> None:
    root = data["root"]
    target = data["target"]
    A = data.get("A")
    path = "root"
    ch.require(root.get("labels") == list(range(1, s.n + 1)), path, "root-labels", "root labels must be 1..n")
    ch.require(isinstance(A, list) and sorted(root.get("A", [])) == sorted(A), path, "root-A", "root A differs from the certificate A")
    ch.require(isinstance(A, list) and len(A) <= max(s.g, 1), path, "root-A", "|A| must not exceed g")
    label = target.get("label")
    par = target.get("parity")
    try:
        comps = list_components(s)
    except EmptyStratum:
        comps = None
    if comps is None:
        ch.fail(path, "target", f"components of {s} are not determined")
        return
    names = [(c.kind.value, None if c.parity is None else str(c.parity)) for c in comps]
    if not ch.require((label, par) in names, path, "target", f"{label}/{par} is not a component of {s}: {names}"):
        return
    nonhyp = [c for c in comps if not c.is_hyperelliptic]
    if label in ("regular", "irreducible"):
        ch.require(root.get("type") == "leaf" and root.get("kind") == "genus1-direct", path, "target", "sporadic components are only certified for |A| <= 1")
    if label == "hyperelliptic":
        ch.require(len(comps) == 1 or par is not None, path, "target", "hyperelliptic components are outside the induction")
    if par is None and len(nonhyp) > 1 and label != "hyperelliptic":
        ch.require(root.get("kind") == "genus1-direct", path, "target", "target does not single out a component")
    if root.get("type") == "leaf" and root.get("citation") in NONHYP_CASES:
        ch.require(label != "hyperelliptic", path, "target", "this case certifies the non-hyperelliptic component")
    if par is not None and s.k == 1 and s.g >= 3 and is_hyperelliptic_type(s):
        ch.require(root.get("type") == "leaf", path, "parity-ambiguous", "parity does not single out a component here")


def check_certificate(cert) -> Verdict:
    """Check a Certificate (or its JSON dict)."""
    data = cert.to_json() if hasattr(cert, "to_json") else cert
    ch = _Checker()
    try:
        if not isinstance(data, dict) or not isinstance(data.get("root"), dict) or not isinstance(data.get("target"), dict):
            ch.fail("", "schema", "certificate needs root and target objects")
            raise _Fail
        target_stratum = data["target"].get("stratum")
        par = data["target"].get("parity")
        parity_mode = par is not None
        s, _ = ch.node(data["root"], "root", parity_mode)
        ch.require(s.to_json() == target_stratum, "root", "target", "root stratum differs from the target stratum")
        _root_checks(ch, data, s)
        if parity_mode and ch.leaf_parities:
            try:
                want = Parity.parse(par)
            except (KeyError, AttributeError):
                ch.fail("root", "parity", f"bad target parity {par!r}")
                raise _Fail
            total = Parity.EVEN
            for p in ch.leaf_parities:
                total = node_parity(total, p)
            ch.require(total is want, "root", "parity-fold", f"leaf parities fold to {total}, target is {want}")
    except _Fail:
        pass
    except Exception as exc:  # totality: never let malformed input escape
        ch.fail("", "internal", f"{type(exc).__name__}: {exc}")
    return Verdict(ch.violations)
