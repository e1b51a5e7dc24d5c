"""Rational-weight Eisenstein series on Gamma0(p), eta-quotient multiplier
systems, exact q-expansions, and Gamma-value exponential series."""

from .arith import (
    ComplexApprox,
    Phase,
    bernoulli,
    dedekind_sum,
    dedekind_sum_naive,
    e_of,
    kronecker,
    sawtooth,
    sigma,
)
from .cover import CoverElement, compose, identity, invert, lift
from .eisenstein import (
    CoeffResult,
    EisensteinParams,
    classical_coeff,
    coeff_infty,
    coeff_one,
    complete_matrix_cusp1,
    exp_sum_infty,
    exp_sum_one,
    kloosterman,
    qexpansion,
)
from .eta import (
    FracSeries,
    eta_integer_series,
    eta_quotient_series,
    eval_eta_quotient,
    order_at_cusp,
    series_rational_power,
)
from .gamma import GammaRequest, gamma_reduce, gamma_reference, gamma_series
from .multiplier import (
    EtaQuotientSpec,
    PrimeLevelSpec,
    chi_T_and_cusp1,
    chi_general,
    chi_integer,
    chi_special,
    is_trivial_condition3,
)
from .verify import (
    IdentityReport,
    verify_carlitz,
    verify_classical,
    verify_gamma_examples,
    verify_thm71,
    verify_thm72,
)

__version__ = "0.1.0"
