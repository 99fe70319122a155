"""Connected components of strata, spin parity bookkeeping and the rule table.

Inventories come from, in order: an explicit record in the rule table, then
the family rules of the published classifications (Kontsevich-Zorich for
holomorphic abelian strata, Boissy for meromorphic ones, Lanneau for
quadratic strata with at worst simple poles).  Anything else is unknown and
``list_components`` returns ``None``.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .stratum import (
    Emptiness,
    Stratum,
    WrongK,
    even_type_entries,
    is_empty,
    is_hyperelliptic_type,
)

RULES_ENV = "STRATA_RULES"


class EmptyStratum(ValueError):
    pass


class WrongGenus(ValueError):
    pass


class RuleTableError(ValueError):
    pass


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Parity":
        return cls[text.strip().upper()]


def node_parity(left: Parity, right: Parity) -> Parity:
    """Parity of a spin structure on a curve with one separating node."""
    return Parity(int(left) ^ int(right))


class ComponentKind(str, enum.Enum):
    GENERIC = "generic"
    NON_HYPERELLIPTIC = "nonhyperelliptic"
    HYPERELLIPTIC = "hyperelliptic"
    EVEN_SPIN = "even"
    ODD_SPIN = "odd"
    SPORADIC_REGULAR = "regular"
    SPORADIC_IRREDUCIBLE = "irreducible"


SPIN_KINDS = {ComponentKind.EVEN_SPIN: Parity.EVEN, ComponentKind.ODD_SPIN: Parity.ODD}
SPORADIC_KINDS = {ComponentKind.SPORADIC_REGULAR, ComponentKind.SPORADIC_IRREDUCIBLE}

SPORADIC_SIGNATURES = {
    (3, (9, -1)),
    (3, (6, 3, -1)),
    (3, (3, 3, 3, -1)),
    (4, (12,)),
    (4, (9, 3)),
    (4, (6, 6)),
    (4, (6, 3, 3)),
    (4, (3, 3, 3, 3)),
}

_ALIASES = {
    "hyp": ComponentKind.HYPERELLIPTIC,
    "nonhyp": ComponentKind.NON_HYPERELLIPTIC,
    "reg": ComponentKind.SPORADIC_REGULAR,
    "irr": ComponentKind.SPORADIC_IRREDUCIBLE,
}


@dataclass(frozen=True)
class ComponentLabel:
    kind: ComponentKind
    parity: Parity | None = None
    note: str = field(default="", compare=False)

    def __post_init__(self):
        spin = SPIN_KINDS.get(self.kind)
        if spin is not None:
            if self.parity is None:
                object.__setattr__(self, "parity", spin)
            elif self.parity != spin:
                raise ValueError(f"{self.kind.value} component cannot have parity {self.parity}")

    @classmethod
    def parse(cls, text: str, note: str = "") -> "ComponentLabel":
        name, _, par = text.strip().lower().partition("/")
        kind = _ALIASES.get(name) or ComponentKind(name)
        return cls(kind, Parity.parse(par) if par else None, note)

    def __str__(self) -> str:
        if self.parity is not None and self.kind not in SPIN_KINDS:
            return f"{self.kind.value}/{self.parity}"
        return self.kind.value


@dataclass(frozen=True)
class ComponentDescriptor:
    stratum: Stratum
    label: ComponentLabel

    @property
    def kind(self) -> ComponentKind:
        return self.label.kind

    @property
    def parity(self) -> Parity | None:
        return self.label.parity

    @property
    def is_hyperelliptic(self) -> bool:
        return self.label.kind is ComponentKind.HYPERELLIPTIC

    def to_json(self) -> dict:
        out = {"stratum": self.stratum.to_json(), "label": self.label.kind.value}
        if self.label.parity is not None:
            out["parity"] = str(self.label.parity)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ComponentDescriptor":
        par = data.get("parity")
        label = ComponentLabel(ComponentKind(data["label"]), Parity.parse(par) if par else None)
        return cls(Stratum.from_json(data["stratum"]), label)

    def __str__(self) -> str:
        return f"{self.stratum}[{self.label}]"


@dataclass(frozen=True)
class RuleRecord:
    k: int
    g: int
    mu_sorted: tuple[int, ...]
    components: tuple[ComponentLabel, ...]
    empty: bool | None
    source: str
    quote: str = ""
    sporadic: dict | None = None

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.k, self.g, self.mu_sorted)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "g": self.g,
            "mu_sorted": list(self.mu_sorted),
            "components": [str(c) for c in self.components],
            "empty": self.empty,
            "source": self.source,
            "quote": self.quote,
        }
        if self.sporadic is not None:
            out["sporadic"] = self.sporadic
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RuleRecord":
        comps = tuple(ComponentLabel.parse(c, data.get("source", "")) for c in data.get("components", []))
        return cls(
            k=int(data["k"]),
            g=int(data["g"]),
            mu_sorted=tuple(sorted((int(m) for m in data["mu_sorted"]), reverse=True)),
            components=comps,
            empty=data.get("empty"),
            source=data.get("source", ""),
            quote=data.get("quote", ""),
            sporadic=data.get("sporadic"),
        )


class RuleTable:
    """Immutable, versioned table of classification records keyed by
    ``(k, g, non-increasing mu)``."""

    def __init__(self, records: Iterable[RuleRecord], version: str = "unversioned"):
        self.version = version
        self._records: dict[tuple, RuleRecord] = {}
        for rec in records:
            if rec.key in self._records:
                raise RuleTableError(f"duplicate normal form {rec.key}")
            _validate_record(rec)
            self._records[rec.key] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self._records.values())

    def lookup(self, s: Stratum) -> RuleRecord | None:
        return self._records.get(s.normal_form())

    def to_json(self) -> dict:
        return {"version": self.version, "records": [r.to_json() for r in self]}

    @classmethod
    def from_json(cls, data) -> "RuleTable":
        if isinstance(data, list):
            return cls((RuleRecord.from_json(r) for r in data))
        return cls((RuleRecord.from_json(r) for r in data["records"]), str(data.get("version", "unversioned")))

    @classmethod
    def load(cls, path: str | os.PathLike) -> "RuleTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _validate_record(rec: RuleRecord) -> None:
    if rec.empty and rec.components:
        raise RuleTableError(f"{rec.key}: empty stratum with components")
    kinds = [c.kind for c in rec.components]
    if len(set(rec.components)) != len(rec.components):
        raise RuleTableError(f"{rec.key}: repeated component labels")
    if any(k in SPIN_KINDS for k in kinds) and not (rec.k == 1 and even_type_entries(rec.mu_sorted)):
        raise RuleTableError(f"{rec.key}: spin labels on a stratum that is not of even type")
    if any(k in SPORADIC_KINDS for k in kinds) and (
        rec.k != 2 or (rec.g, rec.mu_sorted) not in SPORADIC_SIGNATURES
    ):
        raise RuleTableError(f"{rec.key}: sporadic labels outside the sporadic list")


def default_rules_path() -> Path:
    env = os.environ.get(RULES_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("strata").joinpath("data/rules.json")))


@lru_cache(maxsize=8)
def _load_cached(path: str, mtime: float) -> RuleTable:
    return RuleTable.load(path)


def default_rules() -> RuleTable:
    path = default_rules_path()
    return _load_cached(str(path), path.stat().st_mtime)


def _labels(*names: str, note: str) -> list[ComponentLabel]:
    return [ComponentLabel.parse(n, note) for n in names]


def family_components(s: Stratum) -> list[ComponentLabel] | None:
    """Inventory from the classification families, or None when the
    families do not decide it."""
    if s.k == 1:
        if s.g == 1:
            return None
        hyp = is_hyperelliptic_type(s)
        even = even_type_entries(s.mu)
        if not s.is_meromorphic:
            note = "Kontsevich-Zorich"
            if s.g == 2:
                return _labels("hyperelliptic", note=note)
            if s.g == 3 and hyp:
                return None
            if hyp and even:
                return _labels("hyperelliptic", "even", "odd", note=note)
            if hyp:
                return _labels("hyperelliptic", "nonhyperelliptic", note=note)
            if even:
                return _labels("even", "odd", note=note)
            return _labels("generic", note=note)
        note = "Boissy"
        if hyp and even:
            if s.g == 2:
                return _labels("hyperelliptic", "nonhyperelliptic", note=note)
            return _labels("hyperelliptic", "even", "odd", note=note)
        if hyp:
            return _labels("hyperelliptic", "nonhyperelliptic", note=note)
        if even:
            return _labels("even", "odd", note=note)
        return _labels("generic", note=note)

    core = tuple(m for m in s.mu if m != 0)
    if any(m < -1 for m in core):
        return None
    note = "Lanneau"
    if s.g == 1:
        return _labels("generic", note=note)
    if (s.g, tuple(sorted(core, reverse=True))) in SPORADIC_SIGNATURES:
        return None
    core_stratum = Stratum(2, s.g, core)
    if is_hyperelliptic_type(core_stratum):
        if s.g == 2:
            return None
        return _labels("hyperelliptic", "nonhyperelliptic", note=note)
    return _labels("generic", note=note)


def _core(s: Stratum) -> Stratum:
    if s.k == 2 and 0 in s.mu and any(m != 0 for m in s.mu):
        return Stratum(2, s.g, tuple(m for m in s.mu if m != 0))
    return s


def list_components(s: Stratum, rules: RuleTable | None = None) -> list[ComponentDescriptor] | None:
    """Component inventory of ``s``, or None when it is not determined.

    Raises EmptyStratum when the stratum is known to be empty.
    """
    if rules is None:
        rules = default_rules()
    if is_empty(s, rules) is Emptiness.EMPTY:
        raise EmptyStratum(f"{s} is empty")
    rec = rules.lookup(_core(s))
    labels = list(rec.components) if rec is not None and rec.components else family_components(s)
    if not labels:
        return None
    return [ComponentDescriptor(s, lab) for lab in labels]


def find_component(s: Stratum, name: str | None = None, rules: RuleTable | None = None) -> ComponentDescriptor:
    """Select a component by label name ("even", "irr", "hyp", ...).

    Without a name the unique non-hyperelliptic component is returned.
    """
    comps = list_components(s, rules)
    if comps is None:
        raise LookupError(f"components of {s} are not determined")
    if name is None:
        nonhyp = [c for c in comps if not c.is_hyperelliptic]
        if len(nonhyp) == 1:
            return nonhyp[0]
        if len(comps) == 1:
            return comps[0]
        raise LookupError(f"{s} has components {[str(c.label) for c in comps]}; choose one")
    want = ComponentLabel.parse(name)
    for c in comps:
        if c.kind is want.kind and (want.parity is None or want.parity == c.parity):
            return c
    if want.kind in SPIN_KINDS:
        for c in comps:
            if c.parity == want.parity:
                return c
    raise LookupError(f"{s} has no component {name!r}; components: {[str(c.label) for c in comps]}")


def genus1_parities(s: Stratum) -> frozenset[Parity]:
    """Spin parities realised by genus-1 strata of even type."""
    if s.k != 1:
        raise WrongK("spin parity needs k=1")
    if s.g != 1:
        raise WrongGenus("genus-1 strata only")
    if even_type_entries(s.mu):
        return frozenset({Parity.EVEN, Parity.ODD})
    return frozenset()


def sporadic_info(s: Stratum, rules: RuleTable | None = None) -> dict | None:
    if s.k != 2 or (s.g, tuple(sorted(s.mu, reverse=True))) not in SPORADIC_SIGNATURES:
        return None
    rec = (rules or default_rules()).lookup(s)
    return None if rec is None else rec.sporadic
