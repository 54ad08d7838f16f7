"""Exact homology, Laplacian spectra and stable cycles of the Witt subalgebras L_k
and their sl2 loop analogues."""

from .liealg import AlgebraSpec, Chain, d, delta

__version__ = "0.1.0"

__all__ = ["AlgebraSpec", "Chain", "d", "delta", "__version__"]
