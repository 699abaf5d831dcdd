"""Semi-infinite Bruhat order in classical types: tableau criteria, quantum
Bruhat graphs, quantum Kashiwara-Nakashima columns and their crystals."""

from .weyl import RootDatum, SignedPermutation, WeylError

__version__ = "0.1.0"

__all__ = ["RootDatum", "SignedPermutation", "WeylError", "__version__"]
