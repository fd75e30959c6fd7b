"""qlab: desk-scale verification of quasi-local group-ring estimates,
weighted uniformly finite homology, cyclic character maps, filling
functions and combings on concrete finitely generated groups."""

from .groups import Ball, MarkedGroup, make_group
from .kernels import Kernel, QQi, adjoint, convolve
from .quasilocal import BoundInterval, dominating_profile, operator_norm, poly_mu_norm
from .ufchains import EquivariantChain, boundary, diam, weighted_norm
from .cyclic import TensorChain, chi, cyclic_lambda, hochschild_boundary
from .filling import IntegralChain, SimplicialComplex, dehn_profile, min_filling
from .vankampen import Presentation, parse_presentation, vankampen_area
from .combings import Combing, fellow_traveler_constant, make_combing

__version__ = "0.1.0"

__all__ = [
    "Ball", "MarkedGroup", "make_group",
    "Kernel", "QQi", "adjoint", "convolve",
    "BoundInterval", "dominating_profile", "operator_norm", "poly_mu_norm",
    "EquivariantChain", "boundary", "diam", "weighted_norm",
    "TensorChain", "chi", "cyclic_lambda", "hochschild_boundary",
    "IntegralChain", "SimplicialComplex", "dehn_profile", "min_filling",
    "Presentation", "parse_presentation", "vankampen_area",
    "Combing", "fellow_traveler_constant", "make_combing",
    "__version__",
]
