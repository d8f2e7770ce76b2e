"""Exact-arithmetic toolkit for planar Brauer trees of principal blocks in
the Coxeter regime: Cartan-type tables and order polynomials, modular
regime validation, tree construction with its planar embedding, the tree
algebra as a quiver with relations, branch-walking tilting complexes, and
an independent metacyclic character-theory oracle.
"""

__version__ = "0.1.0"

from .brauer_tree import (PlanarBrauerTree, SeriesDatum, assemble_tree,
                          decomposition_matrix, principal_block_tree, star_tree)
from .ell_arith import EllContext, validate_regime
from .root_data import CoxeterDatum, TwistedType, coxeter_datum, parse_type

__all__ = [
    "PlanarBrauerTree", "SeriesDatum", "assemble_tree", "decomposition_matrix",
    "principal_block_tree", "star_tree", "EllContext", "validate_regime",
    "CoxeterDatum", "TwistedType", "coxeter_datum", "parse_type",
    "__version__",
]
