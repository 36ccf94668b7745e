#!/usr/bin/env python3
"""
Renyi index tests: hand-evaluated values, degenerate inputs and the
range / scale / permutation / continuity properties
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import AllZeroWeights, NegativeWeight, NonPositiveAlpha, RenyiToolkitError
from graph_core import Graph
from renyi_index import (
    IndexParams,
    WeightSequence,
    atkinson_index,
    degree_renyi_index,
    degree_renyi_profile,
    renyi_index,
    renyi_profile,
    simpson_index,
    theil_index,
)


# ============================================
# HAND-EVALUATED VALUES
# ============================================

def test_constant_sequence_is_zero():
    assert renyi_index([5, 5, 5, 5], 2.0) == pytest.approx(0.0, abs=1e-15)


def test_star_degrees_alpha_two():
    assert renyi_index([3, 1, 1, 1], 2.0) == pytest.approx(0.25, abs=1e-14)


def test_small_sequence_alpha_two():
    assert renyi_index([1, 2, 1], 2.0) == pytest.approx(1.0 / 9.0, abs=1e-14)


def test_small_sequence_theil_branch():
    assert renyi_index([1, 2, 1], 1.0) == pytest.approx(0.057191, abs=1e-6)
    assert theil_index([1, 2, 1]) == pytest.approx(0.0588917, abs=1e-6)


def test_theil_relation():
    w = [4, 1, 0, 7, 2]
    assert renyi_index(w, 1.0) == pytest.approx(1.0 - math.exp(-theil_index(w)), abs=1e-15)


def test_theil_branch_tolerance():
    w = [1, 2, 1]
    # inside the 1e-9 window the Theil branch answers exactly
    assert renyi_index(w, 1.0 + 5e-10) == renyi_index(w, 1.0)


def test_index_params_accepted():
    assert renyi_index([3, 1, 1, 1], IndexParams(2.0)) == pytest.approx(0.25)
    assert IndexParams(1.0).is_theil
    assert not IndexParams(1.1).is_theil


def test_named_indexes():
    w = [3, 1, 1, 1]
    assert simpson_index(w) == pytest.approx(0.25)
    assert atkinson_index(w, 0.5) == renyi_index(w, 0.5)
    with pytest.raises(NonPositiveAlpha):
        atkinson_index(w, 2.0)


def test_large_alpha_log_space():
    w = [1.0] * 99 + [100.0]
    value = renyi_index(w, 200.0)
    assert 0.0 <= value <= 1.0
    # the power mean is dominated by the max ratio: 1 - (r_max^a / n)^(1/(1-a))
    r_max = 100.0 / (199.0 / 100.0)
    expected = 1.0 - math.exp((200.0 * math.log(r_max) - math.log(100.0)) / (1.0 - 200.0))
    assert value == pytest.approx(expected, rel=1e-6)


def test_large_alpha_matches_direct_below_threshold():
    w = [1, 2, 3, 4, 5]
    assert renyi_index(w, 49.0) == pytest.approx(renyi_index(w, 51.0), abs=0.01)


# ============================================
# ERRORS
# ============================================

def test_all_zero_weights():
    with pytest.raises(AllZeroWeights):
        renyi_index([0, 0, 0], 2.0)


@pytest.mark.parametrize("alpha", [0.0, -1.0, float('inf'), float('nan')])
def test_non_positive_alpha(alpha):
    with pytest.raises(NonPositiveAlpha):
        renyi_index([1, 2], alpha)


def test_negative_weight():
    with pytest.raises(NegativeWeight):
        renyi_index([1, -1, 2], 2.0)


def test_empty_sequence():
    with pytest.raises(RenyiToolkitError):
        WeightSequence([])


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        renyi_index([0, 0], 1.0)


# ============================================
# PROFILE / GRAPHS
# ============================================

def test_profile_single():
    assert renyi_profile([3, 1, 1, 1], [2]) == [(2.0, pytest.approx(0.25))]


def test_profile_constant():
    for _, value in renyi_profile([5, 5], [0.5, 1, 2, 10]):
        assert value == pytest.approx(0.0, abs=1e-15)


def test_profile_continuity_at_one():
    profile = renyi_profile([1, 2, 1], [1 - 1e-6, 1, 1 + 1e-6])
    assert [a for a, _ in profile] == [1 - 1e-6, 1.0, 1 + 1e-6]
    for _, value in profile:
        assert value == pytest.approx(0.057191, abs=1e-4)


def test_degree_index_of_star():
    star = Graph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
    assert degree_renyi_index(star, 2.0) == pytest.approx(0.25)
    assert degree_renyi_profile(star, [2.0]) == [(2.0, pytest.approx(0.25))]


def test_degree_index_of_empty_graph():
    with pytest.raises(AllZeroWeights):
        degree_renyi_index(Graph(4), 2.0)


def test_degree_index_of_graph_without_nodes():
    with pytest.raises(AllZeroWeights):
        degree_renyi_index(Graph(0), 2.0)
    with pytest.raises(AllZeroWeights):
        degree_renyi_profile(Graph(0), [0.5, 1.0])


def test_zero_padding_increases_index():
    rng = np.random.default_rng(7)
    for _ in range(50):
        w = rng.integers(1, 50, size=20).astype(float)
        padded = np.concatenate([w, np.zeros(5)])
        for alpha in (1.0, 2.0, 3.0):
            assert renyi_index(padded, alpha) > renyi_index(w, alpha)


def test_weight_sequence_is_read_only():
    seq = WeightSequence([3, 1, 2])
    assert list(seq.values) == [1.0, 2.0, 3.0]
    with pytest.raises(ValueError):
        seq.values[0] = 5.0


# ============================================
# PROPERTIES
# ============================================

# zeros allowed; subnormals excluded (their mean is not representable)
weights_strategy = st.lists(
    st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1e6)),
    min_size=1, max_size=40,
).filter(lambda w: sum(w) > 0)

alpha_strategy = st.one_of(
    st.floats(min_value=0.1, max_value=0.9),
    st.floats(min_value=1.1, max_value=20.0),
    st.just(1.0),
)


@pytest.mark.property
@settings(max_examples=500, deadline=None)
@given(weights=weights_strategy, alpha=alpha_strategy)
def test_range(weights, alpha):
    value = renyi_index(weights, alpha)
    assert -1e-12 <= value <= 1.0 + 1e-12


@pytest.mark.property
@settings(max_examples=500, deadline=None)
@given(weights=weights_strategy, alpha=st.one_of(st.floats(0.1, 0.9), st.floats(1.1, 10.0), st.just(1.0)),
       scale=st.floats(min_value=1e-3, max_value=1e3))
def test_scale_invariance(weights, alpha, scale):
    base = renyi_index(weights, alpha)
    scaled = renyi_index([scale * w for w in weights], alpha)
    assert math.isclose(scaled, base, rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.property
@settings(max_examples=300, deadline=None)
@given(weights=weights_strategy, alpha=alpha_strategy, data=st.data())
def test_permutation_invariance(weights, alpha, data):
    shuffled = data.draw(st.permutations(weights))
    assert renyi_index(shuffled, alpha) == renyi_index(weights, alpha)


@pytest.mark.property
@settings(max_examples=300, deadline=None)
@given(value=st.floats(min_value=1e-3, max_value=1e6), size=st.integers(1, 50), alpha=alpha_strategy)
def test_constant_is_zero(value, size, alpha):
    assert abs(renyi_index([value] * size, alpha)) <= 1e-12


@pytest.mark.property
@settings(max_examples=300, deadline=None)
@given(weights=st.lists(st.floats(min_value=1.0, max_value=100.0), min_size=1, max_size=40),
       eps=st.sampled_from([1e-4, 1e-5]))
def test_continuity_at_one(weights, eps):
    center = renyi_index(weights, 1.0)
    assert abs(renyi_index(weights, 1.0 + eps) - center) <= 1e-3
    assert abs(renyi_index(weights, 1.0 - eps) - center) <= 1e-3


@pytest.mark.property
def test_randomized_corpus():
    """Seeded bulk sweep of the range, scale and permutation properties"""
    rng = np.random.default_rng(20240601)
    for _ in range(10_000):
        n = int(rng.integers(1, 30))
        w = rng.exponential(10.0, size=n) * (rng.random(n) < 0.9)
        if w.sum() == 0:
            w[0] = 1.0
        alpha = float(rng.choice([rng.uniform(0.1, 0.9), rng.uniform(1.1, 10.0), 1.0]))
        value = renyi_index(w, alpha)
        assert -1e-12 <= value <= 1.0 + 1e-12
        assert math.isclose(renyi_index(w * 7.5, alpha), value, rel_tol=1e-12, abs_tol=1e-12)
        assert renyi_index(rng.permutation(w), alpha) == value
