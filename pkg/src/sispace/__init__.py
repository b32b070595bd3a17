"""Shift-invariant spaces of compactly supported generators: spectral
weights, basis classification, generalized Fourier duals and summation."""

__version__ = "0.1.0"

from .piecewise import (PiecewiseFn, box, bspline, combine, convolve, fourier, hat,  # noqa: E402
                        inner_product, psi1, shift_dilate)
from .trigpoly import TrigPoly, divide_out, pair, roots_on_torus  # noqa: E402
from .bracket import (autocorrelation, autocorrelation_exact, bracket_numeric,  # noqa: E402
                      verify_identity_kar1, verify_identity_kar2)
from .analysis import BasisReport, SingularityProfile, classify, factorize, profile  # noqa: E402
from .dual import (DualSystem, build_dual, gf_coefficient, gf_coefficients,  # noqa: E402
                   regular_dual)
from .summation import (abel_mean, cesaro_mean, operator_growth_scan,  # noqa: E402
                        weighted_error)
from .orthonorm import OrthoGenerator, check_onb, prescribe_phi  # noqa: E402
from .generators import builtin, load_generator, load_symbol  # noqa: E402

__all__ = [
    "PiecewiseFn", "box", "hat", "psi1", "bspline", "shift_dilate", "combine", "convolve",
    "inner_product", "fourier", "TrigPoly", "pair", "roots_on_torus", "divide_out",
    "autocorrelation", "autocorrelation_exact", "bracket_numeric", "verify_identity_kar1",
    "verify_identity_kar2", "SingularityProfile", "BasisReport", "profile", "factorize",
    "classify", "DualSystem", "build_dual", "regular_dual", "gf_coefficient", "gf_coefficients",
    "cesaro_mean", "abel_mean", "weighted_error", "operator_growth_scan", "OrthoGenerator",
    "check_onb", "prescribe_phi", "builtin", "load_generator", "load_symbol",
]
