"""Splitting and merging of without-replacement samples across blocks.

A k-sample of a partitioned population induces a multivariate
hypergeometric split of k over the blocks; split_sample_counts draws that
split so each block can be sampled independently.  merge_samples goes the
other way: given independent samples of two disjoint populations it
produces a valid sample of the union without touching the unsampled items.

The merge works in the implicit-uniforms picture: a k-sample of n items can
be read as the k smallest of n iid uniforms, and the (k+1)-th order
statistic, distributed Beta(k+1, n-k), is the threshold below which the
sample is a complete census of the union population.  Taking the smallest
threshold T' across shards, every sampled item survives independently with
probability min(1, T'/T_c) given its shard's threshold T_c, so the shard
whose threshold attains the minimum keeps all of its items and every other
shard is thinned by a Binomial draw.  The survivors are a simple random
sample of the union with a random (but valid) size; downsample trims to an
exact target size when one is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .distributions import BetaParams, HypergeomParams, beta, binomial, hypergeometric
from .rng import UniformSource
from .samplers import sparse_fisher_yates


@dataclass(frozen=True)
class MergeInput:
    """One shard: the drawn sample plus the size of the population it came from."""

    sample: tuple
    population_size: int

    def __init__(self, sample: Sequence, population_size: int):
        object.__setattr__(self, "sample", tuple(sample))
        object.__setattr__(self, "population_size", population_size)
        if population_size < 1:
            raise ValueError(f"population size must be >= 1, got {population_size}")
        if len(self.sample) > population_size:
            raise ValueError(
                f"sample of {len(self.sample)} exceeds population {population_size}"
            )
        if len(set(self.sample)) != len(self.sample):
            raise ValueError("sample identifiers must be distinct")


@dataclass(frozen=True)
class MergeState:
    """Per-shard thresholds and surviving counts from one merge."""

    thresholds: tuple
    kappas: tuple


def split_sample_counts(source: UniformSource, block_sizes: Sequence[int],
                        k: int) -> list[int]:
    """Multivariate hypergeometric split of k over blocks of the given sizes.

    Drawn as a chain of single hypergeometric draws: how many of the k land
    in the first block, then how many of the rest land in the second, and so
    on.  The counts always sum to k and never exceed their block.
    """
    sizes = list(block_sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {sizes}")
    total = sum(sizes)
    if not 0 <= k <= total:
        raise ValueError(f"sample size {k} outside [0, {total}]")
    counts = []
    n_rem = total
    k_rem = k
    for size in sizes[:-1]:
        c = hypergeometric(source, HypergeomParams(v=size, n=n_rem, k=k_rem))
        counts.append(c)
        n_rem -= size
        k_rem -= c
    counts.append(k_rem)
    return counts


def merge_all_with_state(source: UniformSource,
                         inputs: Sequence[MergeInput]) -> tuple[list, MergeState]:
    """Merge any number of shard samples; see the module docstring for the law.

    All thresholds are drawn first, then every shard is thinned against the
    common minimum, so the construction is symmetric in its inputs.
    """
    if not inputs:
        raise ValueError("merge requires at least one input")
    thresholds = []
    for inp in inputs:
        k_c = len(inp.sample)
        n_c = inp.population_size
        thresholds.append(beta(source, BetaParams(float(k_c + 1), float(n_c - k_c))))
    t_min = min(thresholds)
    merged: list = []
    kappas = []
    for inp, t_c in zip(inputs, thresholds):
        k_c = len(inp.sample)
        kappa = binomial(source, k_c, min(1.0, t_min / t_c)) if k_c else 0
        kappas.append(kappa)
        if kappa == 0:
            continue
        if kappa == k_c:
            # the winning shard (and any other full survivor) keeps its
            # whole sample; no randomness needed to pick all of it
            merged.extend(inp.sample)
            continue
        positions = sparse_fisher_yates(source, k_c, kappa).indices
        merged.extend(inp.sample[p - 1] for p in positions)
    return merged, MergeState(tuple(thresholds), tuple(kappas))


def merge_samples(source: UniformSource, a: MergeInput,
                  b: MergeInput) -> tuple[list, int]:
    """Two-shard merge; returns the merged sample and its (random) size."""
    merged, state = merge_all_with_state(source, (a, b))
    return merged, sum(state.kappas)


def merge_all(source: UniformSource, inputs: Sequence[MergeInput]) -> tuple[list, int]:
    merged, state = merge_all_with_state(source, inputs)
    return merged, sum(state.kappas)


def downsample(source: UniformSource, sample: Sequence, target: int) -> list:
    """Uniformly keep exactly target items of an existing sample."""
    if not 0 <= target <= len(sample):
        raise ValueError(f"target {target} outside [0, {len(sample)}]")
    if target == 0:
        return []
    positions = sparse_fisher_yates(source, len(sample), target).indices
    return [sample[p - 1] for p in positions]
