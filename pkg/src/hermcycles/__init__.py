"""Exact hermitian local densities and special-cycle intersection numbers
for the unitary group of signature (1, 2), with independent brute-force
and tree-combinatorial cross-checks."""

from .density import (
    alpha,
    alpha_prime,
    alpha_self,
    beta_rank1,
    check_functional_equation,
    check_recursion_star,
    closed_form_gu3,
    f_poly,
    f_poly_rank1,
    shifted_poly,
)
from .intersect import (
    check_case_consistency,
    check_kr_identity,
    dtriple_closed,
    dtriple_inclusion_exclusion,
    intersection_number,
    ztriple,
)
from .laurent import LaurentPoly
from .oracle import (
    alpha_hat_rank1,
    beta_hat_rank1,
    count_representations,
    norm_distribution,
    stabilization_check,
    unitary_group_order,
)
from .padic import ExtRingElem, HermMatrix, RingParams, det_valuation, herm_apply, herm_diagonalize
from .tree import (
    build_window,
    degree_zero_check,
    dtriple_via_divisors,
    reduced_locus,
    shell_count,
    special_fiber_divisor,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "RingParams",
    "ExtRingElem",
    "HermMatrix",
    "herm_apply",
    "herm_diagonalize",
    "det_valuation",
    "f_poly",
    "f_poly_rank1",
    "shifted_poly",
    "closed_form_gu3",
    "alpha",
    "alpha_self",
    "alpha_prime",
    "beta_rank1",
    "check_functional_equation",
    "check_recursion_star",
    "norm_distribution",
    "alpha_hat_rank1",
    "beta_hat_rank1",
    "count_representations",
    "stabilization_check",
    "unitary_group_order",
    "intersection_number",
    "ztriple",
    "dtriple_inclusion_exclusion",
    "dtriple_closed",
    "check_kr_identity",
    "check_case_consistency",
    "build_window",
    "reduced_locus",
    "special_fiber_divisor",
    "degree_zero_check",
    "dtriple_via_divisors",
    "shell_count",
    "__version__",
]
