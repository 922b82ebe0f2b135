"""Protected nodes and fringe subtrees in random trees."""

from ._core import (
    CanonicalLaw,
    InfeasibleSize,
    NoConvergence,
    OracleValue,
    ParseError,
    ProtectionStats,
    SizeTooLarge,
    Tree,
    WeightFamily,
    bst_ell_limit,
    bst_unprotected_curve,
    canonical_law,
    ell_protected_limit,
    exact_bst_expectation,
    exact_expected_proportion,
    exact_fringe_law,
    exact_rrt_expectation,
    fringe_distribution,
    gw_tree_probability,
    offspring_pmf,
    phi_tilde,
    protected_limit,
    protection_profile,
    protection_stats,
    rrt_ell_limit,
    rrt_protected_curve,
    run_cli,
    sample_bst,
    sample_conditioned_gw,
    sample_gw,
    sample_rrt,
    solve_tau,
)

__all__ = [name for name in dir() if not name.startswith("_")]
