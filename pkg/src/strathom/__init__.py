"""Exact-arithmetic intersection homology for stratified simplicial
complexes: MacPherson perversities, tame and blown-up variants, refinement
taxonomy with simple decomposition, and coarsening/refinement invariance
verification."""

__version__ = "0.1.0"

from ._kernels import backend_name

__all__ = ["backend_name", "__version__"]
