"""Signed-digit recoding and multi-exponentiation toolkit.

Recoders (non-adjacent form, joint sparse form, complement-aware
recoding), an exact-counting evaluator over pluggable groups, transducer
and Markov-chain analysis of the recoders, and reproducible statistics
with brute-force minimality oracles.
"""

from .expansions import Expansion, JointExpansion, binary, ones_complement, stack
from .experiments import (
    ComplementBitReport,
    RunConfig,
    SchemeComparison,
    SlopeReport,
    StatRecord,
    compare_schemes,
    complement_bit_probabilities,
    cost_slope,
    exhaustive_stats,
    run_stats,
    sample_exponents,
)
from .multiexp import (
    MERSENNE61,
    AdditiveGroup,
    CostCounter,
    GroupOps,
    ModGroup,
    PrecompTable,
    evaluate,
    is_probable_prime,
    multiexp,
    precompute,
    square_and_multiply,
)
from .recoding import (
    ORACLE_BOUND,
    OracleResult,
    RecodingScheme,
    is_naf,
    is_sjsf,
    min_joint_weight_oracle,
    min_weight1_oracle,
    naf,
    naf_complement_weight_gap,
    recode_joint,
    reduce_digit2,
    sjsf,
    wllc_joint,
    wllc_recode,
)
from .transducer import (
    RationalMatrix,
    StateDistribution,
    Transducer,
    double_naf_transducer,
    naf_transducer,
    state_distribution,
    stationary_distribution,
    strongly_connected_components,
    transition_matrix,
    zero_output_probability,
)
from .verification import CHECKS, CheckReport, run_check

__version__ = "0.1.0"

__all__ = [
    "AdditiveGroup",
    "CHECKS",
    "CheckReport",
    "ComplementBitReport",
    "CostCounter",
    "Expansion",
    "GroupOps",
    "JointExpansion",
    "MERSENNE61",
    "ModGroup",
    "ORACLE_BOUND",
    "OracleResult",
    "PrecompTable",
    "RationalMatrix",
    "RecodingScheme",
    "RunConfig",
    "SchemeComparison",
    "SlopeReport",
    "StatRecord",
    "StateDistribution",
    "Transducer",
    "binary",
    "compare_schemes",
    "complement_bit_probabilities",
    "cost_slope",
    "double_naf_transducer",
    "evaluate",
    "exhaustive_stats",
    "is_naf",
    "is_probable_prime",
    "is_sjsf",
    "min_joint_weight_oracle",
    "min_weight1_oracle",
    "multiexp",
    "naf",
    "naf_complement_weight_gap",
    "naf_transducer",
    "ones_complement",
    "precompute",
    "recode_joint",
    "reduce_digit2",
    "run_check",
    "run_stats",
    "sample_exponents",
    "sjsf",
    "square_and_multiply",
    "stack",
    "state_distribution",
    "stationary_distribution",
    "strongly_connected_components",
    "transition_matrix",
    "wllc_joint",
    "wllc_recode",
    "zero_output_probability",
]
