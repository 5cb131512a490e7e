"""Exact arithmetic kernel."""

from pentagram.exact.bipoly import BiPoly
from pentagram.exact.jet import Jet, jet_eval
from pentagram.exact.linalg import int_matrix_rank
from pentagram.exact.polymatrix import PolyMatrix, poly_det
from pentagram.exact.rational import GaussRational, Rational, as_rational

__all__ = [
    "BiPoly",
    "GaussRational",
    "Jet",
    "PolyMatrix",
    "Rational",
    "as_rational",
    "int_matrix_rank",
    "jet_eval",
    "poly_det",
]
