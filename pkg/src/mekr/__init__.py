"""Exact combinatorics and exhaustive checks for the Erdos-Ko-Rado theorem on bounded multisets."""

from .coeffs import (
    CoeffTable,
    Params,
    build_coeff_table,
    coeff,
    coeff_oracle_closed_form,
    coeff_oracle_poly_power,
    total_multiset_count,
)
from .errors import MekrError, PropertyViolation, ResourceError, UsageError
from .lattice import (
    LevelProfile,
    SubsetFamily,
    deficiency_profile,
    enumerate_maximal_intersecting,
    is_maximal_intersecting,
    phi,
    phi_inverse_family,
    phi_inverse_size,
)
from .multiset import (
    MultisetFamily,
    are_isomorphic,
    enumerate_multisets,
    fst_family,
    intersection_size,
    is_trivial,
    star_size,
)
from .spectrum import (
    SpectrumProfile,
    WindowSet,
    spectrum_profile,
    spirality_and_bounds_check,
    transform_identity_check,
    window_dominance,
    window_set,
)
from .verify import VerificationReport, brute_force_max, construct_remark_N, sweep, verify_instance

__version__ = "0.1.0"
