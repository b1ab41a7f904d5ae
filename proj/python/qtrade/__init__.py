"""Subspace bitrades in Grassmann graphs."""

from ._core import (
    Bitrade,
    QtradeError,
    Subspace,
    adjacency_eigenvalues,
    construct_minimum,
    covers,
    enumerate_subspaces,
    expected_min_distribution,
    gaussian_binomial,
    grassmann_distance,
    grassmann_eigenvalue,
    hat_inner_products,
    hat_set,
    intersection_numbers,
    min_cardinality,
    predicted_distribution,
    search_below,
    signed_hat_inner_products,
    verify_bitrade,
    weight_distribution,
)

__all__ = [
    "Bitrade",
    "QtradeError",
    "Subspace",
    "adjacency_eigenvalues",
    "construct_minimum",
    "covers",
    "enumerate_subspaces",
    "expected_min_distribution",
    "gaussian_binomial",
    "grassmann_distance",
    "grassmann_eigenvalue",
    "hat_inner_products",
    "hat_set",
    "intersection_numbers",
    "min_cardinality",
    "predicted_distribution",
    "search_below",
    "signed_hat_inner_products",
    "verify_bitrade",
    "weight_distribution",
]
