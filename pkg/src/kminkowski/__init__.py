"""Exact symbolic engine for kappa-Minkowski space, the kappa-Poincare group
and the (n+1)-dimensional covariant differential calculus."""

from .scalars import BACKEND, IL, LAM, GaussianRational, Scalar
from .engine import Element, Presentation, PresentationError, TensorElement, antipode, coproduct, counit, star
from .minkowski import Metric, MinkowskiAlgebra, build_minkowski, verify_hopf_minkowski
from .poincare import OrthoReducer, PoincareAlgebra, build_poincare, verify_hopf_poincare
from .coaction import CoactionContext, build_context, rho_L, verify_coaction_suite, verify_x_munu_covariance
from .calculus import Calculus, OneForm, TwoForm, build_calculus, d0, d1, wedge, verify_calculus_suite
from .ideal_lab import classify, covariant_closure, quotient_dimension, traceless_generators
from .report import REPORT_SCHEMA, Report
from .cli import parse_expression

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "IL", "LAM", "GaussianRational", "Scalar",
    "Element", "Presentation", "PresentationError", "TensorElement",
    "antipode", "coproduct", "counit", "star",
    "Metric", "MinkowskiAlgebra", "build_minkowski", "verify_hopf_minkowski",
    "OrthoReducer", "PoincareAlgebra", "build_poincare", "verify_hopf_poincare",
    "CoactionContext", "build_context", "rho_L", "verify_coaction_suite", "verify_x_munu_covariance",
    "Calculus", "OneForm", "TwoForm", "build_calculus", "d0", "d1", "wedge", "verify_calculus_suite",
    "classify", "covariant_closure", "quotient_dimension", "traceless_generators",
    "REPORT_SCHEMA", "Report", "parse_expression",
]
