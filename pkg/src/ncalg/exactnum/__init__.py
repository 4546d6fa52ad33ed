"""Exact scalar and polynomial arithmetic."""
from .fields import GF, QQ, FieldDesc, ModP, parse_field
from .poly import Poly, poly_gcd, poly_xgcd
from .factor import Factorization, factor_univariate, roots, squarefree_part
from .parse import ParseError, parse_expr, parse_poly, evaluate

__all__ = [
    "GF", "QQ", "FieldDesc", "ModP", "parse_field", "Poly", "poly_gcd", "poly_xgcd",
    "Factorization", "factor_univariate", "roots", "squarefree_part",
    "ParseError", "parse_expr", "parse_poly", "evaluate",
]
