"""Exact Heisenberg-group arithmetic: r-adic integers, finite quotients,
profinite completions, Heisenberg solenoids, and sub-Riemannian estimates."""

__version__ = "0.1.0"

from .group import (Dilation, HeisenbergPoint, commutator, compose, conjugate, dilate,
                    inverse, is_central, project_pi)
from .rings import (ProductElement, RAdicInt, Residue, coherence_check, embed_q, radic_abs,
                    radic_dist, radic_from_cauchy, ultrametric_rho)

__all__ = [
    "Dilation", "HeisenbergPoint", "ProductElement", "RAdicInt", "Residue", "coherence_check",
    "commutator", "compose", "conjugate", "dilate", "embed_q", "inverse", "is_central",
    "project_pi", "radic_abs", "radic_dist", "radic_from_cauchy", "ultrametric_rho",
]
