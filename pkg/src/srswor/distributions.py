"""Exact discrete and continuous variate generators driven by a UniformSource.

Everything here reduces to the two uniform primitives of the source, so a
whole pipeline is reproducible from one seed.  No approximate method is
used anywhere: binomial generation is exact inversion for small mean and an
exact order-statistic (beta) bisection for large mean, beta generation is
the closed-form quantile map for shape alpha = 1 and Marsaglia-Tsang gamma
pairs otherwise, and the hypergeometric is generated by recursive bisection
on the sorted-sample position law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rng import UniformSource

# Below this product of trials and min(p, 1-p), plain CDF inversion is both
# exact and fast; above it, split the trial count with a beta order statistic.
_INVERSION_LIMIT = 30.0


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters for a Beta draw; beta == 0 degenerates to point mass 1."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")


@dataclass(frozen=True)
class HypergeomParams:
    """A population of n items, k of them sampled, restricted to a prefix of v.

    The variate of interest is how many of the k sampled items land inside
    the first v positions of the population.
    """

    v: int
    n: int
    k: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"population size must be >= 0, got {self.n}")
        if not 0 <= self.v <= self.n:
            raise ValueError(f"prefix size {self.v} outside [0, {self.n}]")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"sample size {self.k} outside [0, {self.n}]")


def bernoulli(source: UniformSource, p: float) -> int:
    """One Bernoulli(p) trial via a single uniform-real comparison."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"bernoulli p={p} outside [0, 1]")
    source.stats.bernoulli += 1
    return 1 if source.next_uniform_real() < p else 0


def binomial(source: UniformSource, n: int, p: float) -> int:
    """Exact Binomial(n, p) draw.

    Counts as one logical binomial draw regardless of how many uniforms the
    internal method consumes.  Degenerate parameters (n = 0, p in {0, 1})
    return deterministically without touching the source.
    """
    if n < 0:
        raise ValueError(f"binomial trial count must be >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binomial p={p} outside [0, 1]")
    source.stats.binomial += 1
    return _binomial_raw(source, n, p)


def _binomial_raw(source: UniformSource, n: int, p: float) -> int:
    if n == 0 or p <= 0.0:
        return 0
    if p >= 1.0:
        return n
    if p > 0.5:
        return n - _binomial_raw(source, n, 1.0 - p)
    if n * p <= _INVERSION_LIMIT:
        return _binomial_inversion(source, n, p)
    # Exact bisection: condition on the m-th smallest of n uniforms, which is
    # Beta(m, n-m+1).  Successes are uniforms below p, so one beta draw
    # decides m trials at once and the remainder is a smaller binomial.
    m = (n + 1) // 2
    x = _beta_raw(source, float(m), float(n - m + 1))
    if x <= p:
        return m + _binomial_raw(source, n - m, (p - x) / (1.0 - x))
    return _binomial_raw(source, m - 1, p / x)


def _binomial_inversion(source: UniformSource, n: int, p: float) -> int:
    # Requires p <= 0.5 and n*p bounded so (1-p)^n stays far above underflow.
    u = source.next_uniform_real()
    f = math.exp(n * math.log1p(-p))
    ratio = p / (1.0 - p)
    c = 0
    cdf = f
    while u > cdf:
        c += 1
        if c > n:
            return n  # guards float shortfall of the accumulated CDF
        f *= ratio * (n - c + 1) / c
        cdf += f
    return c


def beta(source: UniformSource, params: BetaParams) -> float:
    """Beta(alpha, beta) draw in (0, 1].

    beta == 0 returns exactly 1.0 (the sample-everything threshold case).
    alpha == 1 uses the quantile map 1 - U**(1/beta), one uniform draw.
    alpha > 1 uses a Marsaglia-Tsang gamma pair.  alpha < 1 is rejected:
    nothing in this package needs it.
    """
    if params.alpha < 1.0:
        raise ValueError(f"beta sampling requires alpha >= 1, got {params.alpha}")
    source.stats.beta += 1
    return _beta_raw(source, params.alpha, params.beta)


def _beta_raw(source: UniformSource, a: float, b: float) -> float:
    if b == 0.0:
        return 1.0
    if a == 1.0:
        return 1.0 - source.next_uniform_real() ** (1.0 / b)
    g1 = _gamma_raw(source, a)
    g2 = _gamma_raw(source, b)
    return g1 / (g1 + g2)


def _gamma_raw(source: UniformSource, shape: float) -> float:
    # Marsaglia-Tsang (2000) squeeze-rejection; exact for shape >= 1.
    if shape < 1.0:
        u = source.next_uniform_real()
        return _gamma_raw(source, shape + 1.0) * u ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = _std_normal(source)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = source.next_uniform_real()
        x2 = x * x
        if u < 1.0 - 0.0331 * x2 * x2:
            return d * v
        if u > 0.0 and math.log(u) < 0.5 * x2 + d * (1.0 - v + math.log(v)):
            return d * v


def _std_normal(source: UniformSource) -> float:
    # Box-Muller, cosine branch only.  Two uniforms per normal, no cached
    # spare, so the draw sequence stays a pure function of call order.
    while True:
        u1 = source.next_uniform_real()
        if u1 > 0.0:
            break
    u2 = source.next_uniform_real()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def beta_binomial(source: UniformSource, alpha: int, beta_shape: int, n: int) -> int:
    """Beta-Binomial(alpha, beta, n): p ~ Beta then Binomial(n, p).

    alpha == 1 inlines the closed-form Beta quantile, so the draw costs one
    uniform real plus one binomial, which is the budget the in-order sampler
    is accounted at.
    """
    if alpha < 1 or beta_shape < 1:
        raise ValueError(f"beta-binomial shapes must be >= 1, got ({alpha}, {beta_shape})")
    if n < 0:
        raise ValueError(f"beta-binomial trial count must be >= 0, got {n}")
    source.stats.beta_binomial += 1
    if alpha == 1:
        p = 1.0 - source.next_uniform_real() ** (1.0 / beta_shape)
    else:
        p = beta(source, BetaParams(float(alpha), float(beta_shape)))
    return binomial(source, n, p)


def hypergeom_pmf(params: HypergeomParams, c: int) -> float:
    """P(c of the k sampled items fall in the first v of n positions).

    Evaluated in log space with lgamma so large parameters do not overflow.
    Returns 0.0 outside the support [max(0, k-(n-v)), min(k, v)].
    """
    v, n, k = params.v, params.n, params.k
    if c < max(0, k - (n - v)) or c > min(k, v):
        return 0.0
    if n == 0:
        return 1.0
    log_p = (
        _log_comb(v, c)
        + _log_comb(n - v, k - c)
        - _log_comb(n, k)
    )
    return math.exp(log_p)


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def hypergeometric(source: UniformSource, params: HypergeomParams) -> int:
    """Hypergeometric draw by bisection search on sorted-sample positions.

    The j-th smallest of k sampled positions in [1, n] is distributed as
    j + BetaBinomial(j, k-j+1, n-k).  Drawing that position for j = ceil(k/2)
    splits the problem: either the prefix keeps the first j items and the
    question recurses on the suffix, or it recurses strictly below the drawn
    position.  O(log k) beta-binomial draws per call; counts as one logical
    hypergeometric draw.
    """
    source.stats.hypergeometric += 1
    v, n, k = params.v, params.n, params.k
    acc = 0
    while True:
        if k == 0 or v == 0:
            return acc
        if v == n:
            return acc + k
        j = (k + 1) // 2
        pos = j + beta_binomial(source, j, k - j + 1, n - k)
        if pos <= v:
            acc += j
            v -= pos
            n -= pos
            k -= j
        else:
            n = pos - 1
            k = j - 1
