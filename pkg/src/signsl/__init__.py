"""Numerical toolkit for Sturm-Liouville operators with sign-indefinite weight.

The operator is (sgn x)(-d^2/dx^2 + q) on the line.  The package computes
Titchmarsh-Weyl coefficients with rigorous truncation bounds, locates
non-real eigenvalues as zeros of the coefficient mismatch, decides where the
operator is definitizable, and builds an explicit spectral measure whose
non-real eigenvalues accumulate at a real point.
"""

__version__ = "1.0.0"

from .errors import (SignSLError, ParseError, PotentialClassError,
                     IntegrationError, ToleranceError, BoundaryError,
                     EvennessError, ConstructionError)
from .expr import parse, unparse
from .potential import Potential, TailClass
from .ode import SolutionState, integrate_fundamental, oscillation_count
from .weyl import (WeylDisk, MValue, sqrt_cut, weyl_disk, m_coefficient,
                   big_M, weyl_solution_norm_check)
from .spectrum import (Rect, Eigenvalue, EigenvalueSet, dispersion,
                       count_nonreal, locate_nonreal, axis_scan)
from .classify import (HalfLineSpectrumModel, DefinitizabilityReport,
                       SeparationResult, half_line_model, separation_check,
                       compute_SA, classify)
from .construction import (StepDensityMeasure, ZeroSequence, Certificate,
                           r_eval, r_cont, sup_estimate, choose_next_atom,
                           build_measure, find_zero_sequence, certify_theorem)

__all__ = [
    "__version__",
    "SignSLError", "ParseError", "PotentialClassError", "IntegrationError",
    "ToleranceError", "BoundaryError", "EvennessError", "ConstructionError",
    "parse", "unparse", "Potential", "TailClass",
    "SolutionState", "integrate_fundamental", "oscillation_count",
    "WeylDisk", "MValue", "sqrt_cut", "weyl_disk", "m_coefficient", "big_M",
    "weyl_solution_norm_check",
    "Rect", "Eigenvalue", "EigenvalueSet", "dispersion", "count_nonreal",
    "locate_nonreal", "axis_scan",
    "HalfLineSpectrumModel", "DefinitizabilityReport", "SeparationResult",
    "half_line_model", "separation_check", "compute_SA", "classify",
    "StepDensityMeasure", "ZeroSequence", "Certificate", "r_eval", "r_cont",
    "sup_estimate", "choose_next_atom", "build_measure", "find_zero_sequence",
    "certify_theorem",
]
