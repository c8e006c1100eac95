import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from freefill import kernels
from freefill.kernels import python_kernels as py

needs_c = pytest.mark.skipif(kernels.compiled_kernels is None, reason="extension not built")
cy = kernels.compiled_kernels

letters2 = st.sampled_from([1, -1, 2, -2])
raw_words = st.lists(letters2, max_size=40)


def reduced(rank=2, max_size=30):
    return st.lists(st.sampled_from([s * g for g in range(1, rank + 1) for s in (1, -1)]), max_size=max_size).map(
        oracles.naive_reduce
    )


def test_letter_key_order():
    assert [py.letter_key(a) for a in (1, -1, 2, -2, 3, -3)] == [0, 1, 2, 3, 4, 5]
    assert all(py.key_letter(py.letter_key(a)) == a for a in (1, -1, 7, -7))


@given(raw_words)
def test_free_reduce_matches_naive(w):
    assert py.free_reduce(w) == oracles.naive_reduce(w)


@given(reduced())
def test_smallest_period_matches_divisor_scan(w):
    assert py.smallest_period(w) == (oracles.divisor_period(w) if w else 0)


@given(reduced(), st.integers(0, 40))
def test_is_rotation(w, k):
    k = k % max(len(w), 1)
    rot = w[k:] + w[:k]
    assert py.is_rotation(w, rot)
    other = oracles.naive_inverse(w)
    assert py.is_rotation(w, other) == (other in oracles.all_rotations(w))


@given(reduced())
def test_least_rotation_is_minimal(w):
    k = py.least_rotation(w)
    rots = oracles.all_rotations(w)
    key = lambda u: [py.letter_key(a) for a in u]  # noqa: E731
    assert key(w[k:] + w[:k]) == min(key(r) for r in rots)


@given(reduced(rank=3, max_size=50).map(oracles.naive_cyclic_core))
def test_cyclic_counts_match_naive(w):
    singles, digrams = py.cyclic_counts(w, 3)
    if not w:
        assert sum(singles) == 0 and sum(digrams) == 0
        return
    ns, nd = oracles.naive_counts(w, 3)
    for x, c in ns.items():
        assert singles[py.letter_key(x)] == c
    for (x, y), c in nd.items():
        assert digrams[py.letter_key(x) * 6 + py.letter_key(y)] == c


def test_walk_draws_never_cancels():
    rng = np.random.default_rng(5)
    for _ in range(200):
        draws = rng.integers(0, 3, size=25)
        w = py.walk_draws(int(rng.integers(0, 4)), draws.tolist(), 2)
        assert oracles.naive_reduce(w) == w and len(w) == 26


def test_cyclic_counts_rejects_letter_outside_rank():
    with pytest.raises(ValueError):
        py.cyclic_counts((1, 3), 2)


@needs_c
@given(raw_words)
def test_compiled_free_reduce_agrees(w):
    assert cy.free_reduce(w) == py.free_reduce(w)


@needs_c
@given(reduced(rank=3, max_size=60), st.integers(0, 60))
def test_compiled_kernels_agree(w, k):
    assert cy.smallest_period(w) == py.smallest_period(w)
    assert cy.least_rotation(w) == py.least_rotation(w)
    assert cy.cyclic_peel(w) == py.cyclic_peel(w)
    assert cy.cyclic_counts(w, 3) == py.cyclic_counts(w, 3)
    k = k % max(len(w), 1)
    assert cy.is_rotation(w, w[k:] + w[:k]) is True
    assert cy.is_rotation(w, oracles.naive_inverse(w)) == py.is_rotation(w, oracles.naive_inverse(w))


@needs_c
def test_compiled_walk_and_errors_agree():
    rng = np.random.default_rng(11)
    for _ in range(100):
        draws = rng.integers(0, 5, size=40).tolist()
        first = int(rng.integers(0, 6))
        assert cy.walk_draws(first, draws, 3) == py.walk_draws(first, draws, 3)
    with pytest.raises(ValueError):
        cy.cyclic_counts((1, 3), 2)


@needs_c
def test_select_switches_and_restores():
    prev = kernels.select("python")
    try:
        assert kernels.IMPLEMENTATION == "python"
        assert kernels.free_reduce is py.free_reduce
        kernels.select("cython")
        assert kernels.free_reduce is cy.free_reduce
    finally:
        kernels.select(prev)
    with pytest.raises(ValueError):
        kernels.select("fortran")
