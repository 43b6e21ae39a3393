"""Exact computation of automorphisms, fixed-point sets and generalized
symmetric spaces of the quasi-dihedral groups QD_{8k}."""

from .modarith import GroupParams, SizeGuardError, StructureError
from .qd_group import GroupElement, parse_element
from .affine_aut import AffineAut
from .canonical_aut import ActionKind, CanonicalAut
from .symspace import SpaceReport, Status, space_report
from .harness import ClaimReport, RunManifest, run, emit

__all__ = [
    "GroupParams", "SizeGuardError", "StructureError", "GroupElement", "parse_element",
    "AffineAut", "ActionKind", "CanonicalAut", "SpaceReport", "Status", "space_report",
    "ClaimReport", "RunManifest", "run", "emit",
]
__version__ = "0.1.0"
