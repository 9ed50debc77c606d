"""Exact Weyl-algebra verification of Capelli-type identities."""

from .configs import CapelliConfig, Permutation
from .identities import (
    Convention,
    VerificationReport,
    pin_convention,
    verify_capelli,
    verify_cauchy_binet,
    verify_cayley,
    verify_dual_capelli,
    verify_theorem1,
    verify_turnbull,
    verify_turnbull_lemma,
)
from .polynomial import Polynomial, Var
from .weyl import WeylElement, generator

__version__ = "0.1.0"

__all__ = [
    "CapelliConfig",
    "Permutation",
    "Convention",
    "VerificationReport",
    "pin_convention",
    "verify_capelli",
    "verify_cauchy_binet",
    "verify_cayley",
    "verify_dual_capelli",
    "verify_theorem1",
    "verify_turnbull",
    "verify_turnbull_lemma",
    "Polynomial",
    "Var",
    "WeylElement",
    "generator",
]
