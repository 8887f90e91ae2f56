"""Tian-Zhu holomorphic invariants and Futaki invariants of hypersurfaces in CP^n."""

from .errors import (
    BudgetExceeded,
    EmptyPolynomial,
    HyperfutakiError,
    InputError,
    MalformedInput,
    NotConverged,
    NotHomogeneous,
    NotTangent,
    NumericalError,
    ScaleExceeded,
    SigmaZero,
    UnknownVariable,
    ZeroScale,
)
from .hfuncs import (
    PhiBundle,
    SeriesControl,
    brute_h,
    h_dirderiv,
    h_sequence,
    phi_bundle,
    phi_divdiff,
    phi_divdiff_dirderiv,
)
from .invariant import (
    InvariantReport,
    futaki,
    normalization_constant,
    sigma,
    sigma_dirderiv,
    tian_zhu,
)
from .oracle import McEstimate, mc_euler, mc_phi, monomial_sigma
from .poly import (
    DiagonalField,
    HomogeneousPolynomial,
    Weight,
    normalize_field,
    parse_polynomial,
    parse_vector,
    tangent_field_basis,
    weight_of,
)
from .soliton import SolitonResult, invariant_map, solve_soliton

__version__ = "0.1.0"
