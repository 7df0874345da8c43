"""Exact verification of multiplier Hopf coquasigroup axioms on F(Z^m x G) and its Ore extensions."""

from __future__ import annotations

from .algebra import FunctionAlgebra
from .iso import BaseIso, IsoRefused, PhiHat, build_phi_hat, check_hypotheses, verify_iso
from .laws import LawResult, Poly, SuiteReport, Witness
from .loop import Loop, LoopError, cyclic_loop, moufang_double, permutation_group, validate_loop
from .ore import (
    Character,
    Derivation,
    Extension,
    NotAPointCharacter,
    OreData,
    check_conditions,
    check_ext_coassociativity,
    derived_identities,
    verify_extension,
)
from .scalar import ONE, ZERO, Scalar, parse_scalar
from .star import check_prop38, check_thm39, star_suite, verify_star_extension

__version__ = "0.1.0"
