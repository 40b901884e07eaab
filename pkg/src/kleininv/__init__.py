"""Invariants of the modular representations of the Klein four group in
characteristic 2: exact arithmetic, explicit constructions, Groebner and
SAGBI machinery, and a linear-algebra oracle for checking them."""

__version__ = "0.1.0"

from .coeff import F2L, GF2, GF4, Scalar, parse_field  # noqa: E402
from .poly import Polynomial, PolynomialRing, format_polynomial, parse_polynomial  # noqa: E402
from .rep import Representation, parse_selector  # noqa: E402

__all__ = [
    "__version__",
    "F2L",
    "GF2",
    "GF4",
    "Scalar",
    "parse_field",
    "Polynomial",
    "PolynomialRing",
    "format_polynomial",
    "parse_polynomial",
    "Representation",
    "parse_selector",
]
