"""Milnor homotopy invariants, canonical forms and decisions for colored string links."""

from homotopy.decide import (
    Certificate,
    DecisionOutcome,
    Verdict,
    bouquet_reduction,
    closure_equivalent,
    gclosure_equivalent,
    replay,
)
from homotopy.errors import AmbientMismatchError, DomainError, InputError, LinkHomotopyError, ParseError
from homotopy.hbraid import clasp, clasper
from homotopy.scheme import ComponentDecomposition, ComponentId, IndexSequence, invariant_count
from homotopy.stringlink import ColoredStringLink, InvariantVector, canonical_form, cl_homotopic, compose, invert

__all__ = [
    "AmbientMismatchError",
    "Certificate",
    "ColoredStringLink",
    "ComponentDecomposition",
    "ComponentId",
    "DecisionOutcome",
    "DomainError",
    "IndexSequence",
    "InputError",
    "InvariantVector",
    "LinkHomotopyError",
    "ParseError",
    "Verdict",
    "bouquet_reduction",
    "canonical_form",
    "clasp",
    "clasper",
    "cl_homotopic",
    "closure_equivalent",
    "compose",
    "gclosure_equivalent",
    "invariant_count",
    "invert",
    "replay",
]
