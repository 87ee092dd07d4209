"""Exact-arithmetic tools for the attractor E of f_d(x) = (x + d)/beta, d in {0, 1, beta+1}."""
from .core import (
    AffineMap,
    Beta,
    DomainError,
    Interval,
    IntervalSet,
    Membership,
    ValueBelowThree,
    Verdict,
    compose_word,
    decide_membership,
    delta_level,
    format_rational,
    gamma,
    holes,
    make_beta,
    main_hole,
    parse_beta,
    parse_rational,
)
from .codings import (
    CodingCount,
    CodingParseError,
    EPCoding,
    count_all_codings,
    count_codings,
    enumerate_codings,
    eval_coding,
    is_unique,
    lambda_sample,
    parse_coding,
)
from .embedding import (
    BranchCase,
    CandidateMap,
    ClassifyResult,
    VerificationFailure,
    branch_classify,
    check_asymmetry,
    classify_generating,
    digit_expand,
    not_totally_self_similar_witness,
    verify_overlap_identity,
)
from .spectrum import SpectrumDigitVector, spectrum_search, verify_claim_induction
from .symbolic import (
    CubicPoly,
    Enclosure,
    char_poly,
    count_words,
    dimension,
    matrix_A,
    matrix_B,
    measure_upper_bound,
    spectral_radius,
)

__version__ = "0.1.0"
