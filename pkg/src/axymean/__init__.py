"""Solution counts and mean values for the Diophantine equation a*x*y - x - y = n."""

from .arithmetic import (
    CountOverflowError,
    Factorization,
    count_in_progression,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    moebius,
    primitive_root,
)
from .characters import (
    CharacterGroup,
    DirichletCharacter,
    build_character_group,
    evaluate,
    l_one_digamma,
    l_one_series,
    parity,
)
from .counting import (
    Equation,
    count_bruteforce,
    count_divisor,
    r_table,
    solutions,
    sum_bruteforce,
    sum_hyperbola,
)
from .meanvalue import (
    ExponentFit,
    MeanValueRow,
    constant_c,
    constant_c_corrected,
    evaluate_row,
    fit_error_exponent,
    integral_identity_check,
    lemma5_lhs,
    lemma5_rhs,
    lemma6_check,
    main_term,
    mobius_identity_check,
    scan,
)
from .special import compensated_sum, digamma, euler_gamma

__version__ = "0.1.0"
