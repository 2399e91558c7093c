"""Statistical oracles: exact pmfs, goodness-of-fit machinery, cost formulas.

This layer is what the test suite and the `verify` command trust, so it is
kept independent of the sampling code paths: pmfs come from log-factorial
identities, p-values from a locally implemented regularized incomplete
gamma function, and expectations from closed-form sums.  No third-party
statistics dependency.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .rng import UniformSource

# Minimum expected count per cell after pooling, the usual chi-square rule.
POOL_THRESHOLD = 5.0


@dataclass(frozen=True)
class GofReport:
    """Chi-square goodness-of-fit outcome; passed means p_value >= alpha."""

    statistic: float
    dof: int
    p_value: float
    passed: bool
    alpha: float


@dataclass(frozen=True)
class KsReport:
    """Kolmogorov-Smirnov outcome for a one-sample CDF comparison."""

    statistic: float
    n: int
    p_value: float
    passed: bool
    alpha: float


# --- regularized incomplete gamma, local implementation ---------------------
#
# P(s, x) by series for x < s+1, Q(s, x) by modified-Lentz continued fraction
# otherwise; both with the exp(-x + s ln x - ln Gamma(s)) prefactor.

_EPS = 1e-15
_MAX_ITER = 800


def _reg_gamma_q(s: float, x: float) -> float:
    if s <= 0.0 or x < 0.0:
        raise ValueError(f"invalid incomplete gamma arguments s={s}, x={x}")
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        ap = s
        term = 1.0 / s
        total = term
        for _ in range(_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        p = total * math.exp(-x + s * math.log(x) - math.lgamma(s))
        return max(0.0, 1.0 - p)
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return min(1.0, math.exp(-x + s * math.log(x) - math.lgamma(s)) * h)


def chi2_sf(statistic: float, dof: int) -> float:
    """Upper tail of the chi-square distribution with dof degrees of freedom."""
    if dof < 1:
        raise ValueError(f"dof must be >= 1, got {dof}")
    if statistic < 0:
        raise ValueError(f"chi-square statistic must be >= 0, got {statistic}")
    if statistic == 0.0:
        return 1.0
    return _reg_gamma_q(dof / 2.0, statistic / 2.0)


def _pool_cells(observed, expected, threshold):
    # Greedy left-to-right pooling driven by expected counts only, so the
    # cell layout never depends on the data being tested.
    pooled_o: list[float] = []
    pooled_e: list[float] = []
    acc_o = 0.0
    acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= threshold:
            pooled_o.append(acc_o)
            pooled_e.append(acc_e)
            acc_o = 0.0
            acc_e = 0.0
    if acc_e > 0.0:
        if pooled_e:
            pooled_o[-1] += acc_o
            pooled_e[-1] += acc_e
        else:
            pooled_o.append(acc_o)
            pooled_e.append(acc_e)
    return pooled_o, pooled_e


def chi_square_gof(observed, expected_probs, alpha: float = 0.001) -> GofReport:
    """Pearson chi-square of observed counts against a fixed probability vector.

    Cells whose expected count falls below 5 are pooled with their neighbors
    before the statistic is formed.  The probability vector must be strictly
    positive and sum to 1 within 1e-9.
    """
    observed = list(observed)
    probs = list(expected_probs)
    if len(observed) != len(probs):
        raise ValueError(
            f"length mismatch: {len(observed)} observed vs {len(probs)} expected"
        )
    if any(p <= 0.0 for p in probs):
        raise ValueError("expected probabilities must all be positive")
    if abs(math.fsum(probs) - 1.0) > 1e-9:
        raise ValueError(f"expected probabilities sum to {math.fsum(probs)}, not 1")
    total = sum(observed)
    if total <= 0:
        raise ValueError("observed counts sum to zero")
    expected = [total * p for p in probs]
    pooled_o, pooled_e = _pool_cells(observed, expected, POOL_THRESHOLD)
    if len(pooled_e) < 2:
        raise ValueError("fewer than two cells remain after pooling")
    statistic = math.fsum((o - e) ** 2 / e for o, e in zip(pooled_o, pooled_e))
    dof = len(pooled_e) - 1
    p_value = chi2_sf(statistic, dof)
    return GofReport(statistic, dof, p_value, p_value >= alpha, alpha)


def chi_square_two_sample(counts_a, counts_b, alpha: float = 0.001) -> GofReport:
    """Homogeneity chi-square for two count vectors over the same cells."""
    a = list(counts_a)
    b = list(counts_b)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    combined = [x + y for x, y in zip(a, b)]
    keep = [i for i, c in enumerate(combined) if c > 0]
    a = [a[i] for i in keep]
    b = [b[i] for i in keep]
    combined = [combined[i] for i in keep]
    total_a = sum(a)
    total_b = sum(b)
    if total_a <= 0 or total_b <= 0:
        raise ValueError("both samples need positive totals")
    grand = total_a + total_b
    # pool on the smaller margin's expected counts
    frac = min(total_a, total_b) / grand
    expected_small = [c * frac for c in combined]
    pooled_idx: list[list[int]] = []
    acc: list[int] = []
    acc_e = 0.0
    for i, e in enumerate(expected_small):
        acc.append(i)
        acc_e += e
        if acc_e >= POOL_THRESHOLD:
            pooled_idx.append(acc)
            acc = []
            acc_e = 0.0
    if acc:
        if pooled_idx:
            pooled_idx[-1].extend(acc)
        else:
            pooled_idx.append(acc)
    if len(pooled_idx) < 2:
        raise ValueError("fewer than two cells remain after pooling")
    statistic = 0.0
    for group in pooled_idx:
        ca = sum(a[i] for i in group)
        cb = sum(b[i] for i in group)
        cc = ca + cb
        ea = cc * total_a / grand
        eb = cc * total_b / grand
        statistic += (ca - ea) ** 2 / ea + (cb - eb) ** 2 / eb
    dof = len(pooled_idx) - 1
    p_value = chi2_sf(statistic, dof)
    return GofReport(statistic, dof, p_value, p_value >= alpha, alpha)


def kolmogorov_sf(lam: float) -> float:
    """Upper tail of the Kolmogorov distribution, alternating series."""
    if lam <= 0.2:
        return 1.0
    total = 0.0
    sign = 1.0
    for j in range(1, 200):
        term = sign * math.exp(-2.0 * j * j * lam * lam)
        total += term
        if abs(term) < 1e-16:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def ks_gof(values, cdf, alpha: float = 0.001) -> KsReport:
    """One-sample KS test of values against a continuous CDF callable."""
    xs = sorted(values)
    n = len(xs)
    if n < 10:
        raise ValueError(f"KS test needs at least 10 values, got {n}")
    d = 0.0
    for i, x in enumerate(xs):
        f = cdf(x)
        d = max(d, f - i / n, (i + 1) / n - f)
    sqrt_n = math.sqrt(n)
    lam = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d
    p_value = kolmogorov_sf(lam)
    return KsReport(d, n, p_value, p_value >= alpha, alpha)


# --- exact pmfs and cost formulas --------------------------------------------


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def first_position_pmf(n: int, k: int, x: int) -> float:
    """P(smallest sampled index = x) = C(n-x, k-1) / C(n, k).

    The smallest of a uniform k-subset of [1, n]; zero outside
    1 <= x <= n-k+1.
    """
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"invalid parameters n={n}, k={k}")
    if x < 1 or x > n - k + 1:
        return 0.0
    return math.exp(_log_comb(n - x, k - 1) - _log_comb(n, k))


def binomial_pmf(n: int, p: float, c: int) -> float:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"invalid parameters n={n}, p={p}")
    if c < 0 or c > n:
        return 0.0
    if p == 0.0:
        return 1.0 if c == 0 else 0.0
    if p == 1.0:
        return 1.0 if c == n else 0.0
    return math.exp(_log_comb(n, c) + c * math.log(p) + (n - c) * math.log1p(-p))


def beta_binomial_pmf(alpha: float, beta: float, n: int, c: int) -> float:
    """Beta-Binomial pmf via log Beta-function ratios."""
    if alpha <= 0 or beta <= 0 or n < 0:
        raise ValueError(f"invalid parameters alpha={alpha}, beta={beta}, n={n}")
    if c < 0 or c > n:
        return 0.0

    def log_beta(a, b):
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)

    return math.exp(
        _log_comb(n, c) + log_beta(c + alpha, n - c + beta) - log_beta(alpha, beta)
    )


def expected_membership_draws(n: int, k: int) -> float:
    """Expected with-replacement draws to collect k distinct of n items.

    Sum over t < k of n/(n-t); exact compensated summation via fsum.
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"invalid parameters n={n}, k={k}")
    return math.fsum(n / (n - t) for t in range(k))


def expected_hash_occupancy(n: int, i: int) -> float:
    """Expected live hash entries of the sparse iterator after i selections."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"invalid parameters n={n}, i={i}")
    return i * (n - i) / n


# --- exhaustive subset distribution check ------------------------------------

MAX_ENUMERATED_SUBSETS = 200
MIN_REPS_PER_SUBSET = 100


def enumerate_subset_distribution(sampler, n: int, k: int, reps: int,
                                  source: UniformSource,
                                  alpha: float = 0.001) -> GofReport:
    """Run a sampler repeatedly and chi-square its subset frequencies.

    sampler is called as sampler(source, n, k) and must return a SampleResult
    whose indices form a k-subset of [1, n].  All C(n, k) subsets are
    enumerated, so the test is against the full exact uniform law; C(n, k)
    is capped at 200 and reps must be at least 100 per subset.
    """
    if not 1 <= k <= n:
        raise ValueError(f"invalid parameters n={n}, k={k}")
    subsets = list(itertools.combinations(range(1, n + 1), k))
    if len(subsets) > MAX_ENUMERATED_SUBSETS:
        raise ValueError(
            f"C({n},{k}) = {len(subsets)} exceeds the enumeration cap "
            f"{MAX_ENUMERATED_SUBSETS}"
        )
    if reps < MIN_REPS_PER_SUBSET * len(subsets):
        raise ValueError(
            f"need at least {MIN_REPS_PER_SUBSET * len(subsets)} reps "
            f"for {len(subsets)} subsets, got {reps}"
        )
    index = {frozenset(s): i for i, s in enumerate(subsets)}
    counts = [0] * len(subsets)
    for _ in range(reps):
        result = sampler(source, n, k)
        key = frozenset(result.indices)
        if len(key) != k or key not in index:
            raise ValueError(f"sampler returned an invalid subset {result.indices}")
        counts[index[key]] += 1
    probs = [1.0 / len(subsets)] * len(subsets)
    return chi_square_gof(counts, probs, alpha)


def normal_sf_two_sided(z: float) -> float:
    """Two-sided tail probability of a standard normal z-score."""
    return math.erfc(abs(z) / math.sqrt(2.0))
