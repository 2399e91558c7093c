"""srswor: simple random sampling without replacement.

Samplers with optimal draw and memory cost, exact discrete distributions
driven by a seeded uniform source, distributed split/merge of samples, and
a chi-square verification harness.
"""

from .distributed import (
    MergeInput,
    MergeState,
    downsample,
    merge_all,
    merge_all_with_state,
    merge_samples,
    split_sample_counts,
)
from .distributions import (
    BetaParams,
    HypergeomParams,
    bernoulli,
    beta,
    beta_binomial,
    binomial,
    hypergeom_pmf,
    hypergeometric,
)
from .rng import DrawStats, RandomSource, ScriptedSource, ScriptExhaustedError
from .samplers import (
    SampleOrder,
    SampleResult,
    SparseFisherYatesIterator,
    SparseSwapState,
    UndoLog,
    fisher_yates_sample,
    inorder_sample,
    membership_checking_sample,
    permutation_from_transpositions,
    preinit_fy_sample_with_undo,
    reservoir_sample,
    selection_sample,
    sparse_fisher_yates,
    sparse_fy_iterator,
)
from .statcheck import (
    GofReport,
    KsReport,
    chi2_sf,
    chi_square_gof,
    chi_square_two_sample,
    enumerate_subset_distribution,
    expected_hash_occupancy,
    expected_membership_draws,
    first_position_pmf,
    ks_gof,
)
from .suite import CheckRecord, default_samplers, run_suite

__version__ = "0.1.0"

__all__ = [
    "BetaParams",
    "CheckRecord",
    "DrawStats",
    "GofReport",
    "HypergeomParams",
    "KsReport",
    "MergeInput",
    "MergeState",
    "RandomSource",
    "SampleOrder",
    "SampleResult",
    "ScriptExhaustedError",
    "ScriptedSource",
    "SparseFisherYatesIterator",
    "SparseSwapState",
    "UndoLog",
    "bernoulli",
    "beta",
    "beta_binomial",
    "binomial",
    "chi2_sf",
    "chi_square_gof",
    "chi_square_two_sample",
    "default_samplers",
    "downsample",
    "enumerate_subset_distribution",
    "expected_hash_occupancy",
    "expected_membership_draws",
    "first_position_pmf",
    "fisher_yates_sample",
    "hypergeom_pmf",
    "hypergeometric",
    "inorder_sample",
    "ks_gof",
    "membership_checking_sample",
    "merge_all",
    "merge_all_with_state",
    "merge_samples",
    "permutation_from_transpositions",
    "preinit_fy_sample_with_undo",
    "reservoir_sample",
    "run_suite",
    "selection_sample",
    "sparse_fisher_yates",
    "sparse_fy_iterator",
    "split_sample_counts",
]
