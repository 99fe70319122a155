"""Strata of abelian (k=1) and quadratic (k=2) differentials: dimensions,
emptiness, components, and the dimension of the image in M_g."""

__version__ = "0.1.0"

from .components import (  # noqa: E402
    ComponentDescriptor,
    ComponentKind,
    ComponentLabel,
    Parity,
    RuleTable,
    default_rules,
    find_component,
    list_components,
    node_parity,
)
from .fiber import ImageDimResult, generic_fiber_dimension, generic_h0, image_dimension  # noqa: E402
from .stratum import (  # noqa: E402
    Emptiness,
    MarkingSet,
    Stratum,
    expected_image_dimension,
    is_empty,
    is_even_type,
    is_hyperelliptic_type,
    stratum_dimension,
    validate_stratum,
)

__all__ = [
    "ComponentDescriptor",
    "ComponentKind",
    "ComponentLabel",
    "Emptiness",
    "ImageDimResult",
    "MarkingSet",
    "Parity",
    "RuleTable",
    "Stratum",
    "default_rules",
    "expected_image_dimension",
    "find_component",
    "generic_fiber_dimension",
    "generic_h0",
    "image_dimension",
    "is_empty",
    "is_even_type",
    "is_hyperelliptic_type",
    "list_components",
    "node_parity",
    "stratum_dimension",
    "validate_stratum",
]
