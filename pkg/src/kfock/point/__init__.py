"""Genus-0 permutation-equivariant K-theoretic invariants of the point."""

from kfock.point.theory import GuardError, Insertion, PointTheory, j_function, metric_g, s_matrix
from kfock.point.correlators import (
    UnstableError,
    corr_poly_insertions,
    corr_strip_ones,
    corr_two_ones,
    correlator,
    quantum_product_constant,
    s_dress_at_one,
    two_point_from_s,
    zero_point,
)
