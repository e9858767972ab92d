"""Bilinear averaging operators, sparse domination, and exponent polytopes."""

from ._core import (
    DiscreteMeasure,
    GridFunction,
    SparseCollection,
    adjoint_1,
    bilinear_sphere_measure,
    build_sparse_family,
    constant,
    inner_product,
    lacunary_maximal,
    normalize_support,
    product_sphere_measure,
    random_test_function,
    region_member,
    region_vertices,
    scale_average,
    scaling_exponent,
    set_max_threads,
    single_scale_maximal,
    sparse_form,
    triangle_measure,
    verify_sparsity,
    __version__,
)

__all__ = [
    "DiscreteMeasure",
    "GridFunction",
    "SparseCollection",
    "adjoint_1",
    "bilinear_sphere_measure",
    "build_sparse_family",
    "constant",
    "inner_product",
    "lacunary_maximal",
    "normalize_support",
    "product_sphere_measure",
    "random_test_function",
    "region_member",
    "region_vertices",
    "scale_average",
    "scaling_exponent",
    "set_max_threads",
    "single_scale_maximal",
    "sparse_form",
    "triangle_measure",
    "verify_sparsity",
    "__version__",
]
