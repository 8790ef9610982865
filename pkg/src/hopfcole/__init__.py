"""Exact special polynomials, Hopf-Cole transforms and Burgers-type residual checks."""

__version__ = "0.1.0"

from .multipoly import MultiPoly, parse_poly
from .ratfunc import RationalFn, hopf_cole, phi_solution
from .families import (
    FamilySpec,
    hermite2,
    hermite_lacunary,
    hermite3_complete,
    hermite_complete_m,
    laguerre2,
    hybrid_l2,
    bessel_c0_truncated,
    apply_c0_operator,
    shifted_hermite3,
)
from .pde import LinearDiffOp, run_check

__all__ = [
    "MultiPoly",
    "parse_poly",
    "RationalFn",
    "hopf_cole",
    "phi_solution",
    "FamilySpec",
    "hermite2",
    "hermite_lacunary",
    "hermite3_complete",
    "hermite_complete_m",
    "laguerre2",
    "hybrid_l2",
    "bessel_c0_truncated",
    "apply_c0_operator",
    "shifted_hermite3",
    "LinearDiffOp",
    "run_check",
]
