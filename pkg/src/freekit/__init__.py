"""freekit: is a finite subset of a semigroup a code?

Exact decision and semi-decision procedures for words, pairs of words,
rational matrices, free groups and substitutions. Every negative answer
comes with a double factorization that can be checked independently.
"""

from .algebra import (
    AlgebraicNumber,
    Matrix,
    Polynomial,
    algebraic_is_root_of_unity,
    characteristic_polynomial,
    companion_matrix,
    euler_phi,
    mat_mul,
    mat_pow,
    minimal_polynomial,
    r_bound,
)
from .check import code_check
from .freegroup import (
    FreeGroupElement,
    GroupAutomaton,
    benois_saturate,
    eliminate_epsilon,
    fg,
    fg_code_check,
    fg_inv,
    fg_mul,
    fg_rational_member,
    free_reduce,
    freeness_automaton,
)
from .search import (
    GeneratorSet,
    ab_family_check,
    balanced_collision_search,
    det_zero_filter,
    dt_family,
    lambda_sequence,
    quotient_bfs_search,
    sign_pattern_decide,
    verify_double_factorization,
)
from .torsion import (
    TorsionVerdict,
    classify_two_by_two,
    incidence_matrix,
    matrix_is_torsion,
    morphism_is_torsion,
)
from .verdict import DoubleFactorization, SearchOutcome, Verdict
from .words import (
    Alphabet,
    Morphism,
    Pair,
    Word,
    decode_binary,
    encode_binary,
    is_prefix_code,
    parikh,
    sardinas_patterson,
    tuple_two_code_check,
    two_word_code_check,
)

__version__ = "0.1.0"
