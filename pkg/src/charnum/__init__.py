"""Exact characteristic-number calculus for desk-scale cobordism models."""

from charnum.combinatorics import Partition, alpha, binomial, partitions
from charnum.ringcalc import TruncatedRing, RingElement
from charnum.manifolds import (
    CharVector,
    ManifoldModel,
    char_vector,
    complex_projective,
    dold,
    milnor_hypersurface,
    parse_manifold,
    product,
    real_projective,
    segre_number,
    segre_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "CharVector",
    "ManifoldModel",
    "Partition",
    "RingElement",
    "TruncatedRing",
    "alpha",
    "binomial",
    "char_vector",
    "complex_projective",
    "dold",
    "milnor_hypersurface",
    "parse_manifold",
    "partitions",
    "product",
    "real_projective",
    "segre_number",
    "segre_polynomial",
]
