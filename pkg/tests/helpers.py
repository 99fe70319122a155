"""Random inputs and certificate mutations shared by the test modules."""

from __future__ import annotations

import copy
import random

from strata.components import EmptyStratum, list_components
from strata.stratum import Emptiness, MarkingSet, Stratum, StratumError, is_empty


def random_signature(rng: random.Random, k: int, g: int, max_n: int = 8, lo: int = -6, hi: int = 8):
    total = k * (2 * g - 2)
    n = rng.randint(1, max_n)
    for _ in range(50):
        head = [rng.choice([v for v in range(lo, hi + 1) if v != 0]) for _ in range(n - 1)]
        last = total - sum(head)
        if last != 0 and lo <= last <= max(hi, total):
            return tuple(head) + (last,)
    return None


def random_input(rng: random.Random, max_g: int = 8):
    """A (component, A) pair with a determined component and |A| <= g."""
    while True:
        k = rng.choice([1, 2])
        g = rng.randint(1, max_g)
        lo = -6 if k == 1 else -1
        mu = random_signature(rng, k, g, lo=lo)
        if mu is None:
            continue
        try:
            s = Stratum(k, g, mu)
            if is_empty(s) is Emptiness.EMPTY:
                continue
            comps = list_components(s)
        except (StratumError, EmptyStratum):
            continue
        if not comps:
            continue
        c = rng.choice(comps)
        size = rng.randint(0, min(g, s.n))
        A = MarkingSet.of(rng.sample(range(1, s.n + 1), size), s.n)
        return c, A


# -- mutations ------------------------------------------------------------
# Each takes a certificate dict and returns a mutated copy, or None when it
# does not apply.  Every mutation below breaks a checker rule by construction.


def _nodes(node, out=None):
    out = [] if out is None else out
    out.append(node)
    for child in node.get("children", []):
        _nodes(child, out)
    return out


def _pick(rng, data, pred):
    cands = [n for n in _nodes(data["root"]) if pred(n)]
    return rng.choice(cands) if cands else None


def m_glue(rng, data):
    n = _pick(rng, data, lambda n: n["type"] == "clutch")
    if n is None:
        return None
    n["glue"][rng.randrange(2)] += rng.choice([-1, 1])
    return data


def m_entry(rng, data):
    n = _pick(rng, data, lambda n: True)
    n["stratum"]["mu"][rng.randrange(len(n["stratum"]["mu"]))] += 1
    return data


def m_genus(rng, data):
    n = _pick(rng, data, lambda n: True)
    n["stratum"]["g"] += rng.choice([-1, 1])
    return data


def m_dup_A(rng, data):
    n = _pick(rng, data, lambda n: len(n["A"]) > 0)
    if n is None:
        return None
    n["A"].append(n["A"][0])
    return data


def m_drop_A(rng, data):
    n = _pick(rng, data, lambda n: len(n["A"]) > 0)
    if n is None:
        return None
    n["A"].pop(rng.randrange(len(n["A"])))
    return data


def m_flip_parity(rng, data):
    n = _pick(rng, data, lambda n: "parity" in n)
    if n is None:
        return None
    n["parity"] = "odd" if n["parity"] == "even" else "even"
    return data


def m_citation(rng, data):
    n = _pick(rng, data, lambda n: n["type"] == "leaf" and n["kind"] in ("explicit-argument", "genus2-table"))
    if n is None:
        return None
    n["citation"] = "unregistered-argument"
    return data


def m_kind(rng, data):
    n = _pick(rng, data, lambda n: n["type"] == "leaf")
    n["kind"] = "folklore"
    return data


def m_label_dup(rng, data):
    n = _pick(rng, data, lambda n: len(n["labels"]) >= 2)
    if n is None:
        return None
    n["labels"][1] = n["labels"][0]
    return data


def m_drop_child(rng, data):
    n = _pick(rng, data, lambda n: n["type"] == "clutch")
    if n is None:
        return None
    n["children"].pop(rng.randrange(2))
    return data


def m_root_A(rng, data):
    n = data["target"]["stratum"]
    extra = [i for i in range(1, len(n["mu"]) + 1) if i not in data["A"]]
    if not extra:
        return None
    data["A"].append(rng.choice(extra))
    return data


MUTATIONS = [m_glue, m_entry, m_genus, m_dup_A, m_drop_A, m_flip_parity, m_citation, m_kind, m_label_dup, m_drop_child, m_root_A]


def mutants(rng: random.Random, data: dict):
    """All applicable single-field mutants of a certificate dict."""
    out = []
    for m in MUTATIONS:
        mutated = m(rng, copy.deepcopy(data))
        if mutated is not None:
            out.append((m.__name__, mutated))
    return out


# -- acceptance reporting -------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
