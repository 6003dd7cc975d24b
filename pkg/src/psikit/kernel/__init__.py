"""Exact arithmetic and polynomial-ideal algorithms."""

from .config import Limits, get_limits, limits
from .domains import GF, QQ, ZZ, Domain, IntegerRing, PrimeField, RationalField, is_prime, parse_base
from .groebner import INFINITE, GroebnerBasis, eliminate, groebner, normal_form, quotient_basis, saturate
from .poly import GREVLEX, LEX, MonomialOrder, Poly, as_poly, block_order, parse_poly
from .upoly import univ_factor
from .zerodim import Field, NotField, QuotientAlgebra, Witness, Zero, classify_artinian_quotient, min_poly

__all__ = [
    "GF", "QQ", "ZZ", "Domain", "IntegerRing", "PrimeField", "RationalField", "is_prime", "parse_base",
    "INFINITE", "GroebnerBasis", "eliminate", "groebner", "normal_form", "quotient_basis", "saturate",
    "GREVLEX", "LEX", "MonomialOrder", "Poly", "as_poly", "block_order", "parse_poly", "univ_factor",
    "Field", "NotField", "QuotientAlgebra", "Witness", "Zero", "classify_artinian_quotient", "min_poly",
    "Limits", "get_limits", "limits",
]
