"""Exact tools for Jacobian pairs: Magnus coefficients, square completion, Newton-polygon sweeps."""

from .arith import LaurentPoly, bracket, divide_exact, is_laurent_multiple, partials, to_text
from .geometry import Direction, NewtonPolygon, decompose, lattice_len, leading_form, newton_polygon, w_deg

__all__ = [
    "Direction", "LaurentPoly", "NewtonPolygon", "bracket", "decompose", "divide_exact",
    "is_laurent_multiple", "lattice_len", "leading_form", "newton_polygon", "partials", "to_text", "w_deg",
]

__version__ = "0.1.0"
