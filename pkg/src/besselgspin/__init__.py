"""Exact Casselman-Shalika type formulas for unramified Bessel functions on GSpin(2n+1)."""

from .exactalg import (
    LaurentPoly,
    NotDivisible,
    RationalFunction,
    TruncatedSeries,
    UsageError,
    VarTable,
    lp_arith,
    series_inv_one_minus,
    substitute,
)
from .rootdata import (
    Root,
    RootSystemB,
    SatakeSpec,
    Torus,
    WeylElement,
    coroot_monomial,
    enumerate_weyl,
    special_elements,
    weyl_act,
)

from .characters import delta_gsp, delta_gsp_product, dominant_weights, schur, schur_oracle
from .bessel import bessel_value, bessel_value_simplified, e_delta_vexp, s_delta
from .evalcheck import prob_equal

__version__ = "0.1.0"
