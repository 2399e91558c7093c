"""Simple random sampling without replacement, k out of n, by seven routes.

All samplers draw a uniformly random k-subset of {1..n} (or of the caller's
items).  They differ in output order, work, and memory:

  fisher_yates_sample          selection order, k draws, O(n) array
  sparse_fisher_yates          selection order, k draws, O(k) hash map
  sparse_fy_iterator           selection order, one draw per step, O(k) map
  membership_checking_sample   selection order, ~n(H_n - H_{n-k}) draws, O(k) set
  preinit_fy_sample_with_undo  selection order, k draws, caller array + undo log
  selection_sample             sorted order, <= n Bernoulli draws, O(1) extra
  inorder_sample               sorted order, k beta-binomial draws, O(1) extra
  reservoir_sample             array order, one draw per item past k, O(k)

The two Fisher-Yates variants are exchangeable: given the same source they
produce bit-identical output, the sparse one just stores only the array
slots that differ from their initial value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable

from .distributions import bernoulli, beta_binomial
from .rng import DrawStats, UniformSource


class SampleOrder(enum.Enum):
    SELECTION = "selection"
    SORTED = "sorted"


@dataclass
class SampleResult:
    """A drawn sample plus the draw accounting for the run that produced it.

    indices holds population indices in [1, n] for the index-based samplers;
    for preinit_fy_sample_with_undo and reservoir_sample it holds the
    caller's item values instead.  order is SORTED only when the sequence is
    guaranteed strictly increasing.
    """

    indices: list
    order: SampleOrder
    n: int
    draw_stats: DrawStats


@dataclass
class SparseSwapState:
    """Snapshot of the sparse iterator: i selections done out of n.

    entries maps array positions to the item currently stored there, for
    exactly those live positions whose content differs from the position
    number itself.  Overlaying entries on the identity reproduces the
    classical Fisher-Yates array over positions 1..n-i.
    """

    n: int
    i: int
    entries: dict


@dataclass
class UndoLog:
    """Record of (position, partner) transpositions in application order."""

    swaps: list = field(default_factory=list)

    def apply(self, x: list) -> None:
        for a, b in self.swaps:
            x[a - 1], x[b - 1] = x[b - 1], x[a - 1]

    def undo(self, x: list) -> None:
        """Replay in reverse; transpositions are involutions, so this exactly
        restores whatever apply() (or the sampler) did to x."""
        for a, b in reversed(self.swaps):
            x[a - 1], x[b - 1] = x[b - 1], x[a - 1]


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"population size must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"sample size {k} outside [0, {n}]")


def fisher_yates_sample(source: UniformSource, n: int, k: int) -> SampleResult:
    """Partial Fisher-Yates shuffle over a materialized array.

    Step i swaps a uniformly drawn live position into slot n-i; the item that
    lands there is the i-th selection.  Exactly k uniform-int draws.
    """
    _check_nk(n, k)
    before = source.stats.copy()
    x = list(range(1, n + 1))
    out = []
    for i in range(k):
        top = n - i
        r = source.next_uniform_int(top)
        x[top - 1], x[r - 1] = x[r - 1], x[top - 1]
        out.append(x[top - 1])
    return SampleResult(out, SampleOrder.SELECTION, n, source.stats - before)


class SparseFisherYatesIterator:
    """Streaming Fisher-Yates that never materializes the array.

    A hash map holds only the slots displaced by past swaps, so after i
    selections it stores at most i entries (in expectation i*(n-i)/n).  Each
    next() costs one uniform-int draw and O(1) map operations and yields the
    same index the classical sampler would, draw for draw.

    Entries at slots that can never be drawn again are discarded as soon as
    they die unless delete_entries=False, which keeps the map append-only
    for cost comparisons.
    """

    def __init__(self, n: int, source: UniformSource, delete_entries: bool = True):
        if n < 1:
            raise ValueError(f"population size must be >= 1, got {n}")
        self.n = n
        self.i = 0
        self._source = source
        self._entries: dict = {}
        self._delete = delete_entries

    def __iter__(self) -> "SparseFisherYatesIterator":
        return self

    def __next__(self) -> int:
        if self.i >= self.n:
            raise StopIteration
        top = self.n - self.i
        entries = self._entries
        r = self._source.next_uniform_int(top)
        picked = entries.get(r, r)
        entries[r] = entries.get(top, top)
        if self._delete:
            # slot `top` leaves the drawable range now, so its entry is dead
            entries.pop(top, None)
        self.i += 1
        return picked

    def state(self) -> SparseSwapState:
        return SparseSwapState(self.n, self.i, dict(self._entries))

    def state_size(self) -> int:
        return len(self._entries)


def sparse_fy_iterator(n: int, source: UniformSource,
                       delete_entries: bool = True) -> SparseFisherYatesIterator:
    return SparseFisherYatesIterator(n, source, delete_entries)


def sparse_fisher_yates(source: UniformSource, n: int, k: int,
                        delete_entries: bool = True) -> SampleResult:
    """Hash-map Fisher-Yates: k draws, O(k) time and space, any n."""
    _check_nk(n, k)
    before = source.stats.copy()
    it = SparseFisherYatesIterator(n, source, delete_entries)
    out = [next(it) for _ in range(k)]
    return SampleResult(out, SampleOrder.SELECTION, n, source.stats - before)


def membership_checking_sample(source: UniformSource, n: int, k: int) -> SampleResult:
    """Draw with replacement and reject repeats.

    Simple but not draw-optimal: the expected number of uniform draws is
    sum over t < k of n/(n-t), about n*ln(n/(n-k)) for large n, versus the
    flat k of the Fisher-Yates family.
    """
    _check_nk(n, k)
    before = source.stats.copy()
    seen = set()
    out = []
    while len(out) < k:
        r = source.next_uniform_int(n)
        if r not in seen:
            seen.add(r)
            out.append(r)
    return SampleResult(out, SampleOrder.SELECTION, n, source.stats - before)


def preinit_fy_sample_with_undo(source: UniformSource, x: list,
                                k: int) -> tuple[SampleResult, UndoLog]:
    """Sample k item values from a caller-owned array, then put it back.

    Runs the same swap schedule as fisher_yates_sample over x itself,
    recording each transposition, and rewinds the log before returning, so
    x is element-for-element identical to its input state.  Auxiliary space
    is the k-entry log and the k-entry sample, nothing proportional to n.
    """
    n = len(x)
    _check_nk(n, k)
    before = source.stats.copy()
    log = UndoLog()
    out = []
    for i in range(1, k + 1):
        top = n - i + 1
        r = source.next_uniform_int(top)
        x[top - 1], x[r - 1] = x[r - 1], x[top - 1]
        log.swaps.append((top, r))
        out.append(x[top - 1])
    log.undo(x)
    result = SampleResult(out, SampleOrder.SELECTION, n, source.stats - before)
    return result, log


def selection_sample(source: UniformSource, n: int, k: int) -> SampleResult:
    """Left-to-right scan accepting index i with probability k_left/n_left.

    Output is sorted by construction.  Consumes one Bernoulli draw per index
    scanned and stops as soon as the sample is full, hence at most n draws.
    """
    _check_nk(n, k)
    before = source.stats.copy()
    out = []
    k_left = k
    for i in range(1, n + 1):
        if k_left == 0:
            break
        if bernoulli(source, k_left / (n - i + 1)):
            out.append(i)
            k_left -= 1
    return SampleResult(out, SampleOrder.SORTED, n, source.stats - before)


def inorder_sample(source: UniformSource, n: int, k: int) -> SampleResult:
    """Generate the sorted sample directly from the gap law.

    The gap in front of the next selected position, counted in unselected
    items, is BetaBinomial(1, k_rem, n_rem - k_rem); positions are the
    running prefix sums of gap + 1.  Exactly k beta-binomial draws and O(1)
    working memory, with no need to know anything but n.
    """
    _check_nk(n, k)
    before = source.stats.copy()
    out = []
    pos = 0
    n_rem = n
    k_rem = k
    for _ in range(k):
        gap = beta_binomial(source, 1, k_rem, n_rem - k_rem)
        pos += gap + 1
        out.append(pos)
        n_rem -= gap + 1
        k_rem -= 1
    return SampleResult(out, SampleOrder.SORTED, n, source.stats - before)


def reservoir_sample(source: UniformSource, stream: Iterable[Any], k: int) -> SampleResult:
    """Uniform k-subset of a stream of unknown length, one pass, O(k) memory.

    Item m > k displaces a uniformly chosen reservoir slot with probability
    k/m: this realizes the right action of the random transposition sequence
    (m r_m), r_m <= m, truncated to the first k slots.  One uniform-int draw
    per item after the first k.  The result's indices hold item values in
    reservoir (array) order, which carries no selection-order meaning; n
    reports the number of items consumed.  A stream shorter than k yields
    all of its items.
    """
    if k < 1:
        raise ValueError(f"reservoir capacity must be >= 1, got {k}")
    before = source.stats.copy()
    res = []
    count = 0
    for item in stream:
        count += 1
        if count <= k:
            res.append(item)
        else:
            j = source.next_uniform_int(count)
            if j <= k:
                res[j - 1] = item
    return SampleResult(res, SampleOrder.SELECTION, count, source.stats - before)


def permutation_from_transpositions(source: UniformSource, n: int) -> list[int]:
    """Uniform permutation of [1, n] as a left action of (1 r1)(2 r2)...(n rn).

    Factors apply right to left, so the loop runs i = n down to 1 drawing
    r_i uniform on [1, i] and swapping slots i and r_i.  Exactly n draws,
    including the forced r_1 = 1, so scripted traces stay aligned.
    """
    if n < 1:
        raise ValueError(f"permutation length must be >= 1, got {n}")
    x = list(range(1, n + 1))
    for i in range(n, 0, -1):
        r = source.next_uniform_int(i)
        x[i - 1], x[r - 1] = x[r - 1], x[i - 1]
    return x
