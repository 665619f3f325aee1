"""Extremal minorants of log((4 + x^2)/x^2) and conditional bounds for |zeta(1/2 + it)|."""
from .arithmetic import MangoldtTable, chebyshev_psi, prime_sum, sieve_mangoldt
from .bounds import BoundConfig, BoundReport, compare, delta_rule, hadamard_check, main_bound
from .errors import (ConvergenceError, CoverageError, DomainError, PrecisionError, QuadratureError,
                     TermError, ZeroFileError, ZetaBoundError)
from .explicit_formula import ExplicitFormulaLedger, check_balance
from .extremal import (ExtremalParams, alt_minorant, f, g_delta, g_hat, g_values, l1_distance,
                       lambda0)
from .numerics import QuadResult, Tolerance, integrate
from .zeros import ZeroList, find_zeros, load_zeros, save_zeros
from .zetafn import hardy_Z, rs_theta, zeta_critical

__version__ = "0.1.0"

__all__ = [
    "BoundConfig", "BoundReport", "ConvergenceError", "CoverageError", "DomainError",
    "ExplicitFormulaLedger", "ExtremalParams", "MangoldtTable", "PrecisionError", "QuadResult",
    "QuadratureError", "TermError", "Tolerance", "ZeroFileError", "ZeroList", "ZetaBoundError",
    "alt_minorant", "chebyshev_psi", "check_balance", "compare", "delta_rule", "f", "find_zeros",
    "g_delta", "g_hat", "g_values", "hadamard_check", "hardy_Z", "integrate", "l1_distance",
    "lambda0", "load_zeros", "main_bound", "prime_sum", "rs_theta", "save_zeros", "sieve_mangoldt",
    "zeta_critical",
]
