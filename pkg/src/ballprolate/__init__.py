"""Prolate spheroidal wave functions on the d-dimensional unit ball.

The radial problem of each harmonic channel is solved in a Jacobi-polynomial
basis; the package also evaluates the attached integral-operator eigenvalues
and checks the classical bounds and approximation estimates built on them.
"""

from ._validation import AccuracyWarning, UnsupportedDimensionError
from .approx import (TestFunction, bandlimit, compare_projectors, make_gaussian_test,
                     project_ballpoly, project_prolate)
from .ballpoly import BallPolyIndex, ball_poly_eval, ball_poly_radial
from .estimators import BallProlateTransformer
from .harmonics import harmonic_dim, sph_basis_eval, zonal_kernel
from .prolate import (ProblemParams, RadialProlate, SpectralEigenvalues, finite_hankel_apply,
                      hankel_eigenvalue, prolate_eval, prolate_eval_radial, solve_prolate,
                      solve_prolate_family)
from .reports import BoundReport
from .spectra import SpectrumTable, build_spectrum

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning", "UnsupportedDimensionError", "TestFunction", "bandlimit",
    "compare_projectors", "make_gaussian_test", "project_ballpoly", "project_prolate",
    "BallPolyIndex", "ball_poly_eval", "ball_poly_radial", "BallProlateTransformer",
    "harmonic_dim", "sph_basis_eval", "zonal_kernel", "ProblemParams", "RadialProlate",
    "SpectralEigenvalues", "finite_hankel_apply", "hankel_eigenvalue", "prolate_eval",
    "prolate_eval_radial", "solve_prolate", "solve_prolate_family", "BoundReport",
    "SpectrumTable", "build_spectrum",
]
