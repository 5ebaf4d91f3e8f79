"""Parahoric-level combinatorics of extended affine Weyl groups for GL_n and GSp_2n."""
from .rootdata import GL, GSP, RootDatum, root_datum

__version__ = "0.1.0"

__all__ = ["GL", "GSP", "RootDatum", "root_datum", "__version__"]
