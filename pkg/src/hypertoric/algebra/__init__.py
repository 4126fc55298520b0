"""Polynomial rings, Groebner bases and ideal operations over Q and F2."""

from .groebner import buchberger, is_groebner, normal_form
from .ideals import (
    GroebnerBasis,
    HilbertData,
    Ideal,
    groebner_basis,
    hilbert_series,
    ideal_contains,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    minimal_generator_degrees,
    minimal_generators,
    substitute,
    substitute_ideal,
)
from .linalg import dims_by_degree, row_rank
from .poly import F2, QQ, MonomialOrder, Poly, PolyRing, field_from_name
