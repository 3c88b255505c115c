"""Exact invariants of co-Kahler mapping tori T^2n_A of flat tori.

A finite-order integer matrix A (the linear model of a Hermitian isometry of
T^2n) determines the mapping torus; this package computes its invariant
cohomology, Betti numbers, first integral homology, finite product cover and
non-product certificates, and checks them against independent oracles.
"""

from .exact_linalg import ExactMatrix, OrderResult, charpoly, coker_structure, matrix_order, rational_kernel, snf
from .exterior_algebra import (
    ExteriorElement,
    KahlerForm,
    basis,
    hard_lefschetz_check,
    induced_map,
    lefschetz_operator,
    standard_omega,
    wedge,
)
from .group_action import (
    averaging_projector,
    invariant_betti,
    invariant_kahler_class,
    molien_invariant_dim,
    omega_injectivity_check,
)
from .mapping_torus import (
    BettiVector,
    b1_parity_check,
    betti_numbers,
    eigenvalue_one_parity_check,
    monotonicity_check,
    poincare_duality_check,
    symplectic_pairing,
    wang_betti_oracle,
)
from .pi1_homology import (
    bundle_triviality,
    cover_data,
    first_homology,
    non_product_certificate,
    presentation,
    product_subgroup,
    structure_group,
)
from .report import InputSpec, Report, corpus, parse_input, render, run_pipeline

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoised intermediate (orders, induced maps, fixed spaces)."""
    from . import exact_linalg, exterior_algebra, group_action

    exact_linalg._order_cached.cache_clear()
    exterior_algebra._induced_cached.cache_clear()
    group_action._fixed.cache_clear()
    group_action._power_sum.cache_clear()
