"""Degeneration certificates: generation, independent checking, brute force."""

from .certificate import Certificate, Clutch, Leaf, LeafKind, depth, iter_leaves, iter_nodes
from .checker import REGISTRY, Verdict, Violation, check_certificate, genus2_case
from .clutch import ClutchError, EmptyChild, GlueSpec, IllegalClutch, ZeroResidue, clutch
from .generator import (
    ExceptionalCase,
    HyperellipticComponent,
    WitnessError,
    WitnessUnknown,
    exceptional_citation,
    find_witness,
)

__all__ = [
    "Certificate", "Clutch", "Leaf", "LeafKind", "depth", "iter_leaves", "iter_nodes",
    "REGISTRY", "Verdict", "Violation", "check_certificate", "genus2_case",
    "ClutchError", "EmptyChild", "GlueSpec", "IllegalClutch", "ZeroResidue", "clutch",
    "ExceptionalCase", "HyperellipticComponent", "WitnessError", "WitnessUnknown",
    "exceptional_citation", "find_witness",
]

from .oracle import BudgetExceeded, NotFound, brute_force_witness  # noqa: E402

__all__ += ["BudgetExceeded", "NotFound", "brute_force_witness"]
