"""Generalized binomial coefficients, Jarden recurrences and identity proving.

All arithmetic is exact over the rationals.
"""

__version__ = "0.1.0"

from .arith import DensePoly, ExactScalar, format_scalar, scalar
from .binom import (
    GenBinomQuery,
    gaussian_binomial,
    genbinom,
    genbinom_limit,
    genbinom_pascal,
    genbinom_quotient,
    integrality_check,
)
from .matrices import build_A, build_Q, char_poly, similarity_check, verify_charpoly_coefficients
from .prover import (
    Counterexample,
    ProofCertificate,
    SequenceEnv,
    annihilator_for,
    check_certificate,
    parse_env,
    parse_identity,
    prove,
)
from .recurrence import (
    ProductSpec,
    RecurrenceRelation,
    degenerate_relation,
    eval_product,
    jarden_relation,
    quotient_relation,
    verify_relation,
)
from .sequences import SequenceDef, SequenceWindow, companion_term, index_add, term, u_term
