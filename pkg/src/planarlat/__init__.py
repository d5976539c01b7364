"""Planar semimodular lattices: diagrams, slimming, 4-cells, expansion and a census."""

from ._accel import BACKEND
from .canonical import canonical_form, is_isomorphic
from .diagram import LatticeDiagram, LatticeError, LemmaViolation
from .expansion import full_expansion, one_step_expansion
from .io import emit_lattice, parse_lattice, read_lattice, write_lattice

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LatticeDiagram",
    "LatticeError",
    "LemmaViolation",
    "canonical_form",
    "emit_lattice",
    "full_expansion",
    "is_isomorphic",
    "one_step_expansion",
    "parse_lattice",
    "read_lattice",
    "write_lattice",
]
