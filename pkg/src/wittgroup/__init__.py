"""Exact arithmetic for SL_n over finite local rings, their cohomology and extensions."""

__version__ = "0.1.0"

from .errors import WittGroupError
from .finite_field import FiniteField, ff_create
from .galois_ring import DualNumbers, GaloisRing, dual_create, gr_create, parse_ring, surjection
from .gmodule import GModule, MatrixModules, classify_submodules, hom_space
from .matgroup import FiniteGroup, MatrixGroup, RingMatrix, sl_group
from .cohomology import h1, h2, split_check
from .extensions import TwistedProduct, matrix_extension
from .structure_theorem import TheoremInstance, verify_main_theorem

__all__ = [
    "DualNumbers", "FiniteField", "FiniteGroup", "GModule", "GaloisRing", "MatrixGroup", "MatrixModules",
    "RingMatrix", "TheoremInstance", "TwistedProduct", "WittGroupError", "classify_submodules", "dual_create",
    "ff_create", "gr_create", "h1", "h2", "hom_space", "matrix_extension", "parse_ring", "sl_group",
    "split_check", "surjection", "verify_main_theorem",
]
