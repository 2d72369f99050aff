"""Multiplicative calculus and Rota-Baxter operators on small matrix groups.

Exact arithmetic uses ``gmpy2.mpq`` entries in numpy object arrays; float
mode uses float64.  The two modes never mix silently.
"""
from .calculus import (
    ftc_check,
    ibp_check,
    leibniz_check,
    mult_derivative_closed_nilpotent,
    mult_derivative_numeric,
    product_integral_closed_nilpotent,
    product_integral_numeric,
    synchronized_limit_check,
)
from .convergence import ConvergenceReport, Schedule
from .differential import diff_closed_form, diff_limit_residual, diffg0e_residual, lie_derivation_residual
from .errors import (
    DegreeOverflow,
    DimensionMismatch,
    DomainError,
    ModeMismatch,
    MultcalcError,
    SpecError,
    SupportOverflow,
)
from .groups import Perm, SeqElt, SignedUnipotentElt
from .lie import LieDerivation, LieOperator, LieWeight
from .matgroup import (
    Mat,
    NilMat,
    UnipotentElt,
    basis,
    exp_general,
    exp_nilpotent,
    heis,
    identity,
    log_near_identity,
    log_unipotent,
    nil3,
    power_real,
)
from .polypath import PolyPath
from .residual import Residual
from .rng import SplitMix64
from .rota_baxter import (
    factorization_operator,
    factorize,
    induced_operator,
    precompose,
    rb_lie_residual,
    rb_limit_eval,
    rb_pair_residual,
    rb_weight1_residual,
    rb_zero_closed_form,
    rboze_finite_residual,
    shift_example,
    trotter_mul,
)
from .tangent import mixed_second_bracket, tangent_of_operator, verify_tangent_theorem
from .weights import PairWeightFamily, apply_pair_weight

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport",
    "DegreeOverflow",
    "DimensionMismatch",
    "DomainError",
    "LieDerivation",
    "LieOperator",
    "LieWeight",
    "Mat",
    "ModeMismatch",
    "MultcalcError",
    "NilMat",
    "PairWeightFamily",
    "Perm",
    "PolyPath",
    "Residual",
    "Schedule",
    "SeqElt",
    "SignedUnipotentElt",
    "SpecError",
    "SplitMix64",
    "SupportOverflow",
    "UnipotentElt",
    "__version__",
    "apply_pair_weight",
    "basis",
    "diff_closed_form",
    "diff_limit_residual",
    "diffg0e_residual",
    "exp_general",
    "exp_nilpotent",
    "factorization_operator",
    "factorize",
    "ftc_check",
    "heis",
    "ibp_check",
    "identity",
    "induced_operator",
    "leibniz_check",
    "lie_derivation_residual",
    "log_near_identity",
    "log_unipotent",
    "mixed_second_bracket",
    "mult_derivative_closed_nilpotent",
    "mult_derivative_numeric",
    "nil3",
    "power_real",
    "precompose",
    "product_integral_closed_nilpotent",
    "product_integral_numeric",
    "rb_lie_residual",
    "rb_limit_eval",
    "rb_pair_residual",
    "rb_weight1_residual",
    "rb_zero_closed_form",
    "rboze_finite_residual",
    "shift_example",
    "synchronized_limit_check",
    "tangent_of_operator",
    "trotter_mul",
    "verify_tangent_theorem",
]
