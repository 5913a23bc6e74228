from .RingSpec import GeneratorSpec, Monomial, Poly, RewriteRule, RingSpec, Scalar
from .RingElem import RingElem, format_ring_elem
from .builtin_rings import make_curve_chow_symbolic, make_curve_cohomology
from .checks import pairing

__all__ = [
    "GeneratorSpec", "Monomial", "Poly", "RewriteRule", "RingSpec", "Scalar",
    "RingElem", "format_ring_elem",
    "make_curve_chow_symbolic", "make_curve_cohomology", "pairing",
]
