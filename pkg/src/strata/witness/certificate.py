"""Degeneration certificates: trees of one-node clutchings ending in leaves.

Every node records its stratum together with a label per entry.  Positive
labels are the original markings p_1..p_n; a negative label ``-e`` names the
two branches of the node created by the ``e``-th clutching.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Union

from ..components import ComponentDescriptor, Parity
from ..stratum import MarkingSet, Stratum

FORMAT = "strata-certificate/1"


class LeafKind(str, enum.Enum):
    GENUS1_DIRECT = "genus1-direct"
    GENUS2_TABLE = "genus2-table"
    MANY_MARKED_POINTS = "many-marked-points"
    EXPLICIT_ARGUMENT = "explicit-argument"


@dataclass(frozen=True)
class Leaf:
    stratum: Stratum
    labels: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    kind: LeafKind
    parity: Parity | None = None
    citation: str | None = None

    def to_json(self) -> dict:
        out = {
            "type": "leaf",
            "stratum": self.stratum.to_json(),
            "labels": list(self.labels),
            "A": list(self.A),
            "B": list(self.B),
            "kind": self.kind.value,
        }
        if self.parity is not None:
            out["parity"] = str(self.parity)
        if self.citation is not None:
            out["citation"] = self.citation
        return out


@dataclass(frozen=True)
class Clutch:
    stratum: Stratum
    labels: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    glue: tuple[int, int]
    left: "CertNode"
    right: "CertNode"

    def to_json(self) -> dict:
        return {
            "type": "clutch",
            "stratum": self.stratum.to_json(),
            "labels": list(self.labels),
            "A": list(self.A),
            "B": list(self.B),
            "glue": list(self.glue),
            "children": [self.left.to_json(), self.right.to_json()],
        }


CertNode = Union[Leaf, Clutch]


@dataclass(frozen=True)
class Certificate:
    root: CertNode
    target: ComponentDescriptor
    A: MarkingSet = field(compare=True)

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "target": self.target.to_json(),
            "A": sorted(self.A.indices),
            "root": self.root.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        target = ComponentDescriptor.from_json(data["target"])
        A = MarkingSet.of(data["A"], target.stratum.n)
        return cls(node_from_json(data["root"]), target, A)


def node_from_json(data: dict) -> CertNode:
    common = dict(
        stratum=Stratum.from_json(data["stratum"]),
        labels=tuple(data["labels"]),
        A=tuple(data["A"]),
        B=tuple(data["B"]),
    )
    if data["type"] == "leaf":
        par = data.get("parity")
        return Leaf(
            kind=LeafKind(data["kind"]),
            parity=Parity.parse(par) if par else None,
            citation=data.get("citation"),
            **common,
        )
    left, right = data["children"]
    return Clutch(glue=tuple(data["glue"]), left=node_from_json(left), right=node_from_json(right), **common)


def iter_leaves(node: CertNode):
    if isinstance(node, Leaf):
        yield node
    else:
        yield from iter_leaves(node.left)
        yield from iter_leaves(node.right)


def iter_nodes(node: CertNode):
    yield node
    if isinstance(node, Clutch):
        yield from iter_nodes(node.left)
        yield from iter_nodes(node.right)


def depth(node: CertNode) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(depth(node.left), depth(node.right))
