"""Exact semigroup-identity checking in triangular, reflexive, and gossip
matrix monoids over commutative semirings."""

from .checker import (
    CheckReport,
    Verdict,
    check_Rn,
    check_Un,
    check_Un_idempotent,
    check_UT,
    run_check,
    same_variety_Un,
)
from .matrices import SMatrix, MorphismTable
from .monoids import ClosureResult, bfs_closure, brute_force_identity, family
from .semirings import SemiringDescriptor, Val, semiring_from_spec
from .words import Identity

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "ClosureResult",
    "Identity",
    "MorphismTable",
    "SMatrix",
    "SemiringDescriptor",
    "Val",
    "Verdict",
    "bfs_closure",
    "brute_force_identity",
    "check_Rn",
    "check_Un",
    "check_Un_idempotent",
    "check_UT",
    "family",
    "run_check",
    "same_variety_Un",
    "semiring_from_spec",
]
