"""shin-lab: configurable-precision evaluation of the shin function family.

The family member at argument x with slot m is (1 + 1/(3x - m))**(2x + 1);
the integer step function omega(x) selects the slot whose member stays just
above 2.  The package provides certified (interval-backed) evaluation of
the family, the interval/length structure of the selector, the exact
second-order Eulerian combinatorics attached to it, gamma and digamma with
error bounds plus the product/series identities around the base log2/2,
and the cut-plane machinery: boundary values, the branch-jump density, its
Stieltjes-style integral representation, and complete-monotonicity /
Bernstein finite-difference rigs.
"""

from .errors import (
    BranchCutError,
    BranchPointError,
    CapExceededError,
    DomainError,
    PrecisionEscalationError,
    ShinLabError,
    StructuralAnomalyError,
    TieUnresolvedError,
    UndecidableComparisonError,
)
from .precision import DEFAULT_DIGITS, Precision, format_decimal, parse_decimal
from .numerics import (
    Complex,
    Ordering,
    Real,
    certified_compare,
    certify_sign,
    compare_threshold,
    const_e,
    const_log2,
    const_pi,
    eval_pow,
    evaluate,
    guarded_ceil,
    guarded_floor,
    working_digits,
)
from .shin_core import (
    SHIN_EXACT_CAP,
    DerivativeBundle,
    FamilyMember,
    ShinSample,
    derivatives,
    omega,
    omega_oracle,
    omega_oracle_scan,
    shin,
    shin_exact,
    shin_member,
    shin_seq,
)
from .intervals import (
    BLENDED_RATIO_ESTIMATE,
    PSI_BOUND_HIGH,
    PSI_BOUND_LOW,
    SERIES_PATTERN,
    BoundsReport,
    IntervalRecord,
    RatioSample,
    SeriesScan,
    bounds_check,
    enumerate_intervals,
    psi,
    psi_limit,
    series_scan,
)
from .eulerian import (
    EulerianTriangle,
    binom,
    eulerian2,
    eulerian2_explicit,
    stirling2,
    triangle,
)
from .gamma_identities import (
    IdentityReport,
    VanishingProductRecord,
    digamma,
    gamma,
    gauss_unit_value,
    loggamma,
    partial_sum_identity,
    product_identity,
    reflection_check,
    vanishing_product,
)
from .quadrature import QuadratureResult, QuadratureSpec, tanh_sinh
from .transforms import (
    BoundaryCase,
    BoundaryRegion,
    BoundarySide,
    CMReport,
    DensitySample,
    LimitReport,
    boundary_value,
    classify_boundary,
    cm_test,
    integrand_mass,
    jump_density,
    jump_density_numeric,
    laplace_limit_check,
    levy_khinchin_inv_shin,
    shin_complex,
    stieltjes_shin,
)

__version__ = "0.1.0"
