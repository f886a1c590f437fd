"""Exact combinatorics of Kac-Moody superalgebras: odd reflections, principal
roots, integral subsystems, snowflake/admissible weights and truncated
characters."""
from .cartan_core import (CartanSupermatrix, BaseDatum, enumerate_bases, odd_reflect,
                          validate_supermatrix, classify, decompose_components, symmetrize)
from .lattice import Weight, Exponent
from .root_system import AlgebraData, Root, WeylWord
from .catalog import load, load_algebra

__all__ = [
    "CartanSupermatrix", "BaseDatum", "enumerate_bases", "odd_reflect",
    "validate_supermatrix", "classify", "decompose_components", "symmetrize",
    "Weight", "Exponent", "AlgebraData", "Root", "WeylWord", "load", "load_algebra",
]
__version__ = "0.1.0"
