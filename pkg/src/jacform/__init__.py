"""Exact truncated q,t-series for Jacobi forms and stable-pair generating functions."""

from .decompose import GradedMonomial, basis_enum, decompose
from .forms import (
    FormId,
    build,
    delta,
    eisenstein,
    phi_01,
    phi_01_s,
    phi_m21,
    phi_m21_s,
    t_rescale,
    theta_d4,
    weierstrass_p,
    weierstrass_p_q,
)
from .gw import FCoefficients, GWInput, assemble_Z, euler_variant, gw3_abelian, invert_gw, monomial_u
from .pt import (
    GeometryParams,
    charmap,
    check_elliptic_law,
    check_inversion_law,
    exp_slope_sum,
    genus0_Z,
    genus1_Z,
    genus2_Z,
    n_invariant,
    pt0,
    wallcross_factor,
)
from .sbasis import SBasisSeries, USeries, from_sbasis, to_sbasis, u_expand
from .series import (
    BiSeries,
    ValidityBox,
    add,
    double_product,
    eta_product,
    exp_series,
    invert,
    log_series,
    mul,
    sign_flip,
    subst_q_inv_t,
    subst_q_t_lambda,
)

__version__ = "0.1.0"
