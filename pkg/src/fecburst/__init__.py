"""Residual loss rate and loss burstiness after (N+K, K) block erasure coding."""

from .combinatorics import (
    GroupedTerm,
    binomial,
    composition_count,
    enumerate_grouped_terms,
    multichoose,
    partition_count,
)
from .erasure_model import (
    CodeParams,
    UnrecoverableDistribution,
    q_distribution,
    residual_loss_probability,
)
from .errors import DomainError, InfeasibleError, TermsCapExceeded, UndefinedQuantity
from .multiblock import (
    TruncatedResult,
    baseline_expected_burst,
    expected_burst,
    expected_burst_dp,
    expected_burst_truncated_naive,
    required_terms,
    truncation_error_bound,
)
from .simulator import BurstReport, SimConfig, empirical_single_block_burst, simulate
from .single_block import (
    LossVector,
    brute_force_expected_burst,
    expected_burst_single_block,
    index_size,
    loss_vector_probability,
)

__all__ = [
    "BurstReport",
    "CodeParams",
    "DomainError",
    "GroupedTerm",
    "InfeasibleError",
    "LossVector",
    "SimConfig",
    "TermsCapExceeded",
    "TruncatedResult",
    "UndefinedQuantity",
    "UnrecoverableDistribution",
    "baseline_expected_burst",
    "binomial",
    "brute_force_expected_burst",
    "composition_count",
    "empirical_single_block_burst",
    "enumerate_grouped_terms",
    "expected_burst",
    "expected_burst_dp",
    "expected_burst_single_block",
    "expected_burst_truncated_naive",
    "index_size",
    "loss_vector_probability",
    "multichoose",
    "partition_count",
    "q_distribution",
    "required_terms",
    "residual_loss_probability",
    "simulate",
    "truncation_error_bound",
]
