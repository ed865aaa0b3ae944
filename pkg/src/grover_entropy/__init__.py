"""Density-matrix laboratory for Grover search.

``dense``     brute-force conditional-state simulation (n <= 2048)
``analytic``  closed-form spectrum/entropy at any n
``flow``      fractional-oracle eigenvalue drift audit
``bounds``    Fano/Holevo chain and the query lower bound
"""

from .analytic import (
    ClosedFormPoint,
    closed_form_point,
    entropy_curve,
    grover_angle,
    optimal_iterations,
)
from .bounds import (
    AuditError,
    BoundReport,
    audit_run,
    binary_entropy,
    entropy_cap,
    fano_rhs,
    query_lower_bound,
    supnorm_requirement,
)
from .dense import (
    DESK_LIMIT,
    ConditionalState,
    DeskScaleError,
    InvalidDimensionError,
    NonHermitianError,
    Spectrum,
    error_probability,
    grover_iterate,
    inversion_about_mean,
    measurement_channel,
    mix_conditionals,
    mutual_information,
    oracle_reflect,
    run_schedule,
    spectrum_of,
    uniform_superposition,
    von_neumann_entropy,
)
from .flow import (
    DriftReport,
    drift_audit,
    eigenvalue_derivative,
    flow_rho,
    fractional_oracle,
    rho_time_derivative,
)

__version__ = "0.1.0"
