"""Evaluation, exact reduction, verification and experimental rediscovery of
double-zeta-value identities: weighted sums, Witten double sums,
harmonic-number sums, alternating and character-twisted double zeta sums."""

from .errors import (
    ArityError,
    DomainError,
    NotReducible,
    ParseError,
    PrecisionError,
    ReductionError,
    UnboundSymbol,
)
from .exact import (
    Rational,
    bernoulli,
    binomial,
    euler_number,
    harmonic,
    harmonic_power,
    hyp2f1_special,
    inv_binomial_sum,
)
from .numerics import (
    CHAR_IDS,
    EvalContext,
    MPReal,
    brute_force_oracle,
    char_dzeta_num,
    char_product,
    chi,
    dzeta_num,
    generator_num,
    harmonic_sum_num,
    L_num,
    periodic_tail_num,
    witten_num,
    zeta_num,
)
from .reductions import (
    alt_value_lookup,
    dzeta_reduce,
    witten_reduce,
    zeta_s1_reduce,
)
from .symexpr import ConstExpr, L_sym, beta_sym, expr_num, zeta_sym

__all__ = [
    "ArityError",
    "CHAR_IDS",
    "ConstExpr",
    "DomainError",
    "EvalContext",
    "L_num",
    "L_sym",
    "MPReal",
    "NotReducible",
    "ParseError",
    "PrecisionError",
    "Rational",
    "ReductionError",
    "UnboundSymbol",
    "alt_value_lookup",
    "bernoulli",
    "beta_sym",
    "binomial",
    "brute_force_oracle",
    "char_dzeta_num",
    "char_product",
    "chi",
    "dzeta_num",
    "dzeta_reduce",
    "euler_number",
    "expr_num",
    "generator_num",
    "harmonic",
    "harmonic_power",
    "harmonic_sum_num",
    "hyp2f1_special",
    "inv_binomial_sum",
    "periodic_tail_num",
    "witten_num",
    "witten_reduce",
    "zeta_num",
    "zeta_s1_reduce",
    "zeta_sym",
]

__version__ = "0.1.0"
