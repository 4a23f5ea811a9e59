"""Numeric and exact oracles for derived relations."""

from .numeric import (
    adjoint_section,
    coefficient_values,
    derivatives,
    evaluate_matrix,
    ode_residual,
    rec_residual,
    w1_numeric,
    wn_numeric,
)
from .oracles import (
    gaussian_moment,
    gue_moment_oracle,
    gue_w1_shifted,
    gue_z_factor,
    joint_resolvent_oracle,
)
from .partitions import cumulants_to_moments, moments_to_cumulants, set_partitions
from .special import airy_eval, airy_psi, gue_psi, h_norm, hermite_eval, hermite_poly, phi_eval, psi_eval
