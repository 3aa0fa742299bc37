"""Fourth levels of 2-adic completions of biquadratic number fields.

The level is computed twice for every field: once by closed-form
theorem dispatch on the ramification data of the primes above 2, and
once by brute-force enumeration of fourth-power sums in the finite
quotients O_K/p^N — and the two must always agree.
"""

from .errors import (
    InputError,
    InternalError,
    S4Error,
    VerificationFailure,
)
from .factor2 import Factorization, PrimeAboveTwo, factor_two, maximal_ideals
from .finring import (
    QuotientRing,
    RingIdeal,
    StructuredRing,
    Valuation,
    howell_basis,
    ideal_from_gens,
    ideal_power,
    ideal_product,
    quotient,
    unit_ideal,
    valuation,
)
from .level import LevelResult, level_e4_f1, level_from_ef, level_main2
from .numberfield import (
    BiquadraticField,
    IntegralBasis,
    Pattern,
    integral_basis,
    is_square_free,
    make_field,
    structure_mod,
)
from .oracle import (
    MinimalSum,
    PowerResidueSet,
    fourth_power_congruence_check,
    fourth_powers,
    hensel_modulus_equivalence,
    min_sum_to_minus_one,
    minimal_sum_to_minus_one,
    oracle_level,
    witness_identity,
)
from .cli import compute_report, run_sweep, sweep_fields

__all__ = [
    "BiquadraticField", "Factorization", "IntegralBasis", "InputError",
    "InternalError", "LevelResult", "MinimalSum", "Pattern",
    "PowerResidueSet", "PrimeAboveTwo", "QuotientRing", "RingIdeal",
    "S4Error", "StructuredRing", "Valuation", "VerificationFailure",
    "compute_report", "factor_two", "fourth_power_congruence_check",
    "fourth_powers", "hensel_modulus_equivalence", "howell_basis",
    "ideal_from_gens", "ideal_power", "ideal_product", "integral_basis",
    "is_square_free", "level_e4_f1", "level_from_ef", "level_main2",
    "make_field", "maximal_ideals", "min_sum_to_minus_one",
    "minimal_sum_to_minus_one", "oracle_level", "quotient", "run_sweep",
    "structure_mod", "sweep_fields", "unit_ideal", "valuation",
    "witness_identity",
]

__version__ = "0.1.0"
