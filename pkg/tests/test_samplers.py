"""Sampler tests: hand-traced draw sequences, equivalences, restoration."""

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from srswor.rng import RandomSource, ScriptedSource
from srswor.samplers import (
    SampleOrder,
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

ALL_INDEX_SAMPLERS = [
    fisher_yates_sample,
    sparse_fisher_yates,
    membership_checking_sample,
    selection_sample,
    inorder_sample,
]


# --- hand traces ---

def test_fisher_yates_trace():
    # n=5, k=3: swap x[5]<->x[2] picks 2, swap x[4]<->x[1] picks 1,
    # swap x[3]<->x[3] picks 3.
    res = fisher_yates_sample(ScriptedSource([2, 1, 3]), 5, 3)
    assert res.indices == [2, 1, 3]
    assert res.order is SampleOrder.SELECTION
    assert res.draw_stats.uniform_int == 3


def test_fisher_yates_full_self_swaps():
    # every draw hits the current top slot, so the array is read backwards
    n = 5
    res = fisher_yates_sample(ScriptedSource([5, 4, 3, 2, 1]), n, n)
    assert res.indices == [5, 4, 3, 2, 1]


def test_sparse_trace_matches_classical():
    res = sparse_fisher_yates(ScriptedSource([2, 1, 3]), 5, 3)
    assert res.indices == [2, 1, 3]
    assert res.draw_stats.uniform_int == 3


def test_sparse_iterator_prefix():
    it = sparse_fy_iterator(5, ScriptedSource([2, 1, 3]))
    assert [next(it) for _ in range(3)] == [2, 1, 3]


def test_membership_trace_counts_rejections():
    # second draw repeats the first and is rejected, costing an extra draw
    res = membership_checking_sample(ScriptedSource([2, 2, 1, 3]), 3, 3)
    assert res.indices == [2, 1, 3]
    assert res.draw_stats.uniform_int == 4


def test_preinit_trace_and_restoration():
    x = [10, 20, 30]
    res, log = preinit_fy_sample_with_undo(ScriptedSource([3, 1]), x, 2)
    assert res.indices == [30, 10]
    assert x == [10, 20, 30]
    assert log.swaps == [(3, 3), (2, 1)]


def test_preinit_trace_alternate_script():
    # first draw 2 swaps slots 3 and 2, so the first selection is the
    # value that started in slot 2
    x = [10, 20, 30]
    res, _ = preinit_fy_sample_with_undo(ScriptedSource([2, 1]), x, 2)
    assert res.indices == [20, 10]
    assert x == [10, 20, 30]


def test_permutation_identity_script():
    # all self-swaps leave the array untouched
    assert permutation_from_transpositions(ScriptedSource([5, 4, 3, 2, 1]), 5) == [1, 2, 3, 4, 5]


def test_permutation_draw_count():
    src = RandomSource(9)
    permutation_from_transpositions(src, 12)
    assert src.stats.uniform_int == 12


# --- output contracts ---

@pytest.mark.parametrize("sampler", ALL_INDEX_SAMPLERS)
def test_sample_is_valid_subset(sampler):
    src = RandomSource(101)
    for n, k in [(1, 0), (1, 1), (7, 3), (20, 20), (50, 1)]:
        res = sampler(src, n, k)
        assert len(res.indices) == k
        assert len(set(res.indices)) == k
        assert all(1 <= i <= n for i in res.indices)
        assert res.n == n


@pytest.mark.parametrize("sampler", ALL_INDEX_SAMPLERS)
def test_k_zero_is_empty(sampler):
    res = sampler(RandomSource(5), 4, 0)
    assert res.indices == []
    assert res.draw_stats.total() == 0


@pytest.mark.parametrize("sampler", ALL_INDEX_SAMPLERS)
def test_bad_nk_rejected(sampler):
    src = RandomSource(6)
    with pytest.raises(ValueError):
        sampler(src, 0, 0)
    with pytest.raises(ValueError):
        sampler(src, 5, 6)
    with pytest.raises(ValueError):
        sampler(src, 5, -1)


def test_sorted_order_samplers():
    src = RandomSource(33)
    for _ in range(200):
        for sampler in (selection_sample, inorder_sample):
            res = sampler(src, 15, 6)
            assert res.order is SampleOrder.SORTED
            assert res.indices == sorted(res.indices)


def test_selection_sample_stops_early():
    # k=n forces acceptance of every index with a certain Bernoulli, after
    # which the scan has nothing left to decide
    res = selection_sample(RandomSource(3), 6, 6)
    assert res.indices == [1, 2, 3, 4, 5, 6]
    res = selection_sample(RandomSource(3), 40, 40)
    assert res.indices == list(range(1, 41))


def test_selection_sample_draw_bound():
    src = RandomSource(77)
    for _ in range(300):
        res = selection_sample(src, 25, 8)
        assert res.draw_stats.bernoulli <= 25


# --- draw budgets ---

def test_exact_draw_budgets():
    # one logical draw per selection for the Fisher-Yates family and the
    # in-order sampler
    for n, k in [(10, 3), (100, 37), (1000, 250)]:
        assert fisher_yates_sample(RandomSource(1), n, k).draw_stats.uniform_int == k
        assert sparse_fisher_yates(RandomSource(1), n, k).draw_stats.uniform_int == k
        res, _ = preinit_fy_sample_with_undo(RandomSource(1), list(range(n)), k)
        assert res.draw_stats.uniform_int == k
        assert inorder_sample(RandomSource(1), n, k).draw_stats.beta_binomial == k


# --- classical vs sparse equivalence ---

@given(
    st.integers(min_value=1, max_value=300),
    st.integers(min_value=0, max_value=2**48),
)
@settings(max_examples=200, deadline=None)
def test_sparse_equals_classical(n, seed):
    k = RandomSource(seed ^ 0xABCD).next_uniform_int(n)
    a = fisher_yates_sample(RandomSource(seed), n, k)
    b = sparse_fisher_yates(RandomSource(seed), n, k)
    assert a.indices == b.indices


@given(st.integers(min_value=0, max_value=2**48))
@settings(max_examples=100, deadline=None)
def test_sparse_no_delete_same_output(seed):
    # keeping dead entries changes memory, never the emitted sequence
    a = sparse_fisher_yates(RandomSource(seed), 60, 25, delete_entries=True)
    b = sparse_fisher_yates(RandomSource(seed), 60, 25, delete_entries=False)
    assert a.indices == b.indices


def test_sparse_state_overlay_reconstructs_classical_array():
    # overlaying the sparse entries on the identity must reproduce the
    # classical array restricted to the live prefix, step for step
    n, k, seed = 40, 40, 314
    x = list(range(1, n + 1))
    classical = RandomSource(seed)
    it = sparse_fy_iterator(n, RandomSource(seed))
    for i in range(k):
        top = n - i
        r = classical.next_uniform_int(top)
        x[top - 1], x[r - 1] = x[r - 1], x[top - 1]
        next(it)
        st_ = it.state()
        assert st_.i == i + 1
        live = {pos: st_.entries.get(pos, pos) for pos in range(1, top)}
        assert live == {pos: x[pos - 1] for pos in range(1, top)}


def test_sparse_state_size_bound():
    src = RandomSource(271)
    it = sparse_fy_iterator(1000, src)
    for i in range(1, 501):
        next(it)
        assert it.state_size() <= i


def test_sparse_iterator_exhausts_at_n():
    it = sparse_fy_iterator(4, RandomSource(0))
    out = list(it)
    assert sorted(out) == [1, 2, 3, 4]
    with pytest.raises(StopIteration):
        next(it)


# --- preinit restoration ---

@given(
    st.lists(st.integers(min_value=-10**6, max_value=10**6), min_size=1, max_size=200),
    st.integers(min_value=0, max_value=2**48),
)
@settings(max_examples=200, deadline=None)
def test_preinit_restores_arbitrary_arrays(items, seed):
    k = RandomSource(seed ^ 0x5EED).next_uniform_int(len(items))
    x = list(items)
    res, log = preinit_fy_sample_with_undo(RandomSource(seed), x, k)
    assert x == items
    assert len(res.indices) == k
    assert len(log.swaps) == k


def test_preinit_sample_values_come_from_array():
    items = ["a", "b", "c", "d", "e", "f"]
    res, _ = preinit_fy_sample_with_undo(RandomSource(8), list(items), 4)
    assert len(set(res.indices)) == 4
    assert set(res.indices) <= set(items)


def test_undo_log_apply_then_undo_roundtrip():
    x = [10, 20, 30]
    _, log = preinit_fy_sample_with_undo(RandomSource(21), x, 3)
    y = list(x)
    log.apply(y)
    log.undo(y)
    assert y == x


def test_preinit_same_subset_as_fisher_yates():
    # same seed, same selected positions, expressed as values
    n, k, seed = 30, 12, 99
    by_index = fisher_yates_sample(RandomSource(seed), n, k)
    by_value, _ = preinit_fy_sample_with_undo(RandomSource(seed), list(range(1, n + 1)), k)
    assert by_value.indices == by_index.indices


# --- in-order sampler ---

def test_inorder_full_sample_is_identity():
    res = inorder_sample(RandomSource(2), 9, 9)
    assert res.indices == list(range(1, 10))


def test_inorder_first_position_distribution():
    # P(first selected position = x) = C(n-x, k-1)/C(n, k); for n=5, k=2
    # that is (0.4, 0.3, 0.2, 0.1) on x = 1..4
    src = RandomSource(61)
    reps = 40000
    counts = [0] * 4
    for _ in range(reps):
        counts[inorder_sample(src, 5, 2).indices[0] - 1] += 1
    pmf = [0.4, 0.3, 0.2, 0.1]
    stat = sum((c - reps * q) ** 2 / (reps * q) for c, q in zip(counts, pmf))
    assert stat < 16.266  # chi2(3) 0.999 quantile


# --- reservoir ---

def test_reservoir_short_stream_returns_everything():
    res = reservoir_sample(RandomSource(4), [7, 8], 5)
    assert res.indices == [7, 8]
    assert res.n == 2
    assert res.draw_stats.total() == 0


def test_reservoir_exact_length_stream():
    res = reservoir_sample(RandomSource(4), [1, 2, 3], 3)
    assert res.indices == [1, 2, 3]


def test_reservoir_draw_count_one_per_overflow_item():
    src = RandomSource(19)
    res = reservoir_sample(src, range(1, 101), 10)
    assert res.draw_stats.uniform_int == 90
    assert res.n == 100


def test_reservoir_requires_positive_capacity():
    with pytest.raises(ValueError):
        reservoir_sample(RandomSource(0), [1, 2], 0)


@given(
    st.integers(min_value=1, max_value=120),
    st.integers(min_value=1, max_value=20),
    st.integers(min_value=0, max_value=2**48),
)
@settings(max_examples=200, deadline=None)
def test_reservoir_is_valid_subset(n, k, seed):
    res = reservoir_sample(RandomSource(seed), range(1, n + 1), k)
    expect = min(n, k)
    assert len(res.indices) == expect
    assert len(set(res.indices)) == expect
    assert set(res.indices) <= set(range(1, n + 1))


def test_reservoir_works_on_generators():
    def gen():
        yield from ("x", "y", "z", "w")

    res = reservoir_sample(RandomSource(5), gen(), 2)
    assert len(res.indices) == 2
    assert set(res.indices) <= {"x", "y", "z", "w"}


# --- one-shot determinism across the board ---

def test_same_seed_same_sample():
    for sampler in ALL_INDEX_SAMPLERS:
        a = sampler(RandomSource(12345), 50, 20)
        b = sampler(RandomSource(12345), 50, 20)
        assert a.indices == b.indices
