"""Generic h0, fiber dimension and image dimension of the forgetful map.

For a component Z and a set A of markings, d = h0(C, sum_{i in A} p_i) at a
generic point of Z; forgetting the other markings has generic fibers of
dimension d - 1.  With A the full marking set this gives the dimension of the
image of Z in M_g.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable

from .components import ComponentDescriptor, ComponentKind, EmptyStratum, RuleTable, list_components, sporadic_info
from .stratum import (
    Emptiness,
    GenusTooSmall,
    MarkingSet,
    expected_image_dimension,
    is_empty,
    stratum_dimension,
)
from .witness import (
    Certificate,
    ExceptionalCase,
    HyperellipticComponent,
    WitnessUnknown,
    check_certificate,
    find_witness,
)
from .witness.generator import EXCEPTION_QUADRATIC_211

WitnessEngine = Callable[..., Certificate]


class Undetermined(Exception):
    """Neither a certificate nor a table entry decides the value."""


class ImageDimMismatch(AssertionError):
    """The h0 pipeline disagrees with the closed formula."""


class H0Basis(str, enum.Enum):
    WITNESS = "WitnessCertified"
    TABLE = "ExceptionTable"
    RIEMANN_ROCH = "RiemannRochExtension"


class ImageStatus(str, enum.Enum):
    EXPECTED = "Expected"
    EXCEPTIONAL = "Exceptional"
    HYPERELLIPTIC = "HyperellipticOutOfScope"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class H0Value:
    value: int
    basis: H0Basis
    certificate: Certificate | None = None
    note: str = ""

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("h0 of an effective divisor is at least 1")


@dataclass(frozen=True)
class ImageDimResult:
    dim: int | None
    status: ImageStatus
    h0: int | None = None

    def to_json(self) -> dict:
        return {"dim": self.dim, "status": self.status.value, "h0": self.h0}


# h0 values recorded for known failures of h0 = 1
EXCEPTION_H0 = {EXCEPTION_QUADRATIC_211: 2}


def _certified(c, A, engine, rules) -> Certificate | None:
    try:
        cert = engine(c, A) if rules is None else engine(c, A, rules=rules)
    except (WitnessUnknown, ExceptionalCase):
        return None
    verdict = check_certificate(cert)
    if not verdict.ok:
        raise RuntimeError(f"witness engine produced an invalid certificate: {verdict.violations[0]}")
    return cert


def generic_h0(
    c: ComponentDescriptor,
    A: MarkingSet | set | frozenset,
    witness_engine: WitnessEngine = find_witness,
    rules: RuleTable | None = None,
) -> H0Value:
    s = c.stratum
    if not isinstance(A, MarkingSet):
        A = MarkingSet.of(A, s.n)
    if is_empty(s, rules) is Emptiness.EMPTY:
        raise EmptyStratum(f"{s} is empty")
    comps = list_components(s, rules)
    if comps is None or c not in comps:
        raise Undetermined(f"{c} is not a determined component")
    if c.is_hyperelliptic and len(comps) > 1 and c.parity is None:
        raise HyperellipticComponent(f"{c} is hyperelliptic")

    if len(A) <= s.g:
        try:
            cert = witness_engine(c, A) if rules is None else witness_engine(c, A, rules=rules)
        except ExceptionalCase as exc:
            if exc.citation in EXCEPTION_H0:
                return H0Value(EXCEPTION_H0[exc.citation], H0Basis.TABLE, note=exc.citation)
            raise Undetermined(f"h0 differs from 1 ({exc.citation}); its value is not tabulated") from exc
        except (WitnessUnknown, HyperellipticComponent):
            cert = None
        if cert is not None:
            if not check_certificate(cert).ok:
                raise RuntimeError("witness engine produced an invalid certificate")
            return H0Value(1, H0Basis.WITNESS, cert)

    info = sporadic_info(s, rules)
    if info is not None and c.kind in (ComponentKind.SPORADIC_REGULAR, ComponentKind.SPORADIC_IRREDUCIBLE):
        if len(A) == s.n and info.get("h0_full"):
            return H0Value(int(info["h0_full"][c.kind.value]), H0Basis.TABLE, note="sporadic")
        raise Undetermined(f"no ruling for {c} with A={sorted(A)}")

    if len(A) > s.g:
        for sub in itertools.combinations(sorted(A), s.g):
            cert = _certified(c, MarkingSet.of(sub, s.n), witness_engine, rules)
            if cert is not None:
                # h0(D + p) <= h0(D) + 1 meets the Riemann-Roch lower bound
                return H0Value(len(A) - s.g + 1, H0Basis.RIEMANN_ROCH, cert)
    raise Undetermined(f"no certificate for {c} with A={sorted(A)}")


def generic_fiber_dimension(
    c: ComponentDescriptor,
    A: MarkingSet | set | frozenset,
    witness_engine: WitnessEngine = find_witness,
    rules: RuleTable | None = None,
) -> int:
    return generic_h0(c, A, witness_engine, rules).value - 1


def image_dimension(
    c: ComponentDescriptor, witness_engine: WitnessEngine = find_witness, rules: RuleTable | None = None
) -> ImageDimResult:
    s = c.stratum
    if s.g < 2:
        raise GenusTooSmall("the forgetful map to M_g needs g >= 2")
    if is_empty(s, rules) is Emptiness.EMPTY:
        raise EmptyStratum(f"{s} is empty")
    if c.is_hyperelliptic:
        return ImageDimResult(None, ImageStatus.HYPERELLIPTIC)
    expected = expected_image_dimension(s)
    if s.k == 1 and not s.is_meromorphic:
        return ImageDimResult(expected, ImageStatus.EXPECTED)
    try:
        h0 = generic_h0(c, MarkingSet.full(s.n), witness_engine, rules)
    except (Undetermined, HyperellipticComponent):
        return ImageDimResult(None, ImageStatus.UNKNOWN)
    dim = stratum_dimension(s) - (h0.value - 1)
    if dim == expected:
        return ImageDimResult(dim, ImageStatus.EXPECTED, h0.value)
    if h0.basis is H0Basis.TABLE and dim < expected:
        return ImageDimResult(dim, ImageStatus.EXCEPTIONAL, h0.value)
    raise ImageDimMismatch(f"{c}: h0 pipeline gives {dim}, formula gives {expected}")
