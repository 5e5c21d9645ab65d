"""Exact workbench for idempotents, commutators and 2x2 matrix-ring recognition in finite rings."""

from .expr import parse_ring, parse_literal
from .rings import build_ring, Element, Elements, FiniteRing
from .structure import (
    units, idempotents, jacobson_radical, ideal_closure, quotient, corner,
    is_abelian, is_connected, is_local, is_commutative, det, trace, IdealSet,
)

__version__ = "0.1.0"
