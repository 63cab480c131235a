import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidkit import (
    BipartiteRegularGraph,
    ParameterError,
    ScaleError,
    check_cut_rigidity_exact,
    check_spectral_rigidity,
    cut_overlap_bound,
    edge_overlap,
    gram_lower_bound,
    gram_vectors,
    laplacian,
    perturb_edges,
    quadratic_form,
    random_bipartite_regular,
    rounding_expectation,
    rounding_gaps,
    spectral_overlap_bound,
    witness_cut,
)
from rigidkit.linalg import adjacency_int

from helpers import (
    bipartite_pair,
    connected_bipartite_pair,
    connected_pair,
    cycle_graph,
    matching_pair,
)


# ---------------------------------------------------------------- bounds


def test_spectral_bound_values():
    assert spectral_overlap_bound(100, 10, 0.0) == 500.0
    assert spectral_overlap_bound(100, 10, 0.1) == pytest.approx(475.0)
    assert spectral_overlap_bound(100, 10, math.sqrt(2 / 10)) == pytest.approx(
        0.0, abs=1e-9
    )


def test_cut_bound_values():
    assert cut_overlap_bound(100, 16, 1.0 / 12.0) == pytest.approx(0.0, abs=1e-9)
    assert cut_overlap_bound(400, 16, 0.02) == pytest.approx(2432.0)
    assert cut_overlap_bound(400, 16, 0.0) == 3200.0


def test_bounds_decrease_in_epsilon():
    grid = [0.0, 0.05, 0.1, 0.2]
    spec = [spectral_overlap_bound(60, 6, e) for e in grid]
    cut = [cut_overlap_bound(60, 6, e) for e in grid]
    assert spec == sorted(spec, reverse=True)
    assert cut == sorted(cut, reverse=True)


def test_bounds_reject_bad_arguments():
    for fn in (spectral_overlap_bound, cut_overlap_bound):
        with pytest.raises(ParameterError):
            fn(10, 10, 0.1)
        with pytest.raises(ParameterError):
            fn(10, 2, -0.5)
        with pytest.raises(ParameterError):
            fn(0, 2, 0.1)


# ---------------------------------------------------------------- law checks


def test_spectral_law_identical_pair():
    g, _ = connected_pair(24, 4, swaps=1, seed=0)
    rep = check_spectral_rigidity(g, g)
    assert rep.kind == "spectral"
    assert rep.epsilon_used <= 1e-9
    assert rep.overlap_observed == 24 * 4 // 2
    assert rep.satisfied


def test_spectral_law_perturbed_pairs():
    for seed, swaps in ((0, 2), (7, 10), (13, 40)):
        g, h = connected_pair(30, 6, swaps=swaps, seed=seed)
        rep = check_spectral_rigidity(g, h)
        assert rep.satisfied
        assert rep.overlap_observed >= rep.overlap_bound - 1e-9


def test_spectral_law_implies_epsilon_floor():
    # Contrapositive reading: overlap below the bound at eps0 forces the
    # measured factor above eps0.
    g, h = connected_pair(30, 6, swaps=20, seed=3)
    rep = check_spectral_rigidity(g, h)
    overlap = edge_overlap(g, h).shared
    for eps0 in np.linspace(0.0, rep.epsilon_used, 12, endpoint=False):
        if overlap < spectral_overlap_bound(30, 6, float(eps0)) - 1e-9:
            assert rep.epsilon_used > eps0


def test_spectral_law_rejects_mismatched_pairs():
    g, _ = connected_pair(24, 4, swaps=1, seed=0)
    other, _ = connected_pair(24, 6, swaps=1, seed=0)
    with pytest.raises(ParameterError):
        check_spectral_rigidity(g, other)
    with pytest.raises(ParameterError):
        check_spectral_rigidity(g, cycle_graph(24))  # degree mismatch
    disconnected = BipartiteRegularGraph.from_edges(4, 1, [(0, 2), (1, 3)])
    with pytest.raises(ParameterError):
        check_spectral_rigidity(disconnected, disconnected)


def test_cut_law_identical_and_perturbed():
    g, h = connected_bipartite_pair(16, 3, swaps=4, seed=0)
    same = check_cut_rigidity_exact(g, g)
    assert same.kind == "cut"
    assert same.epsilon_used == 0.0
    assert same.overlap_observed == 24
    assert same.satisfied
    rep = check_cut_rigidity_exact(g, h)
    assert rep.satisfied


def test_cut_law_requires_bipartite_type_and_scale():
    g, h = connected_pair(12, 3, swaps=1, seed=2)
    with pytest.raises(ParameterError):
        check_cut_rigidity_exact(g, h)
    big = random_bipartite_regular(26, 3, seed=0)
    with pytest.raises(ScaleError):
        check_cut_rigidity_exact(big, big)


# ---------------------------------------------------------------- gram vectors


def test_gram_vectors_of_identical_pair_are_basis():
    g = random_bipartite_regular(8, 2, seed=1)
    gv = gram_vectors(g, g)
    assert gv.pairs == ()
    assert np.allclose(gv.znorm_sq, 1.0)
    assert np.allclose(gv.dense(), np.eye(8))


def test_gram_vectors_of_disjoint_matchings():
    g, h = matching_pair()
    gv = gram_vectors(g, h)
    assert np.allclose(gv.znorm_sq, 3.0)
    assert len(gv.pairs) == 4
    assert np.allclose(gv.column(0) * math.sqrt(3.0), [1.0, 0.0, -1.0, 1.0])


def test_gram_entry_identity():
    # On every difference pair, M_uv <z_u, z_v> equals 2/sqrt(d); z is the
    # unnormalized column and M the adjacency difference.
    for g, h in (matching_pair(), bipartite_pair(16, 3, swaps=3, seed=4)):
        gv = gram_vectors(g, h)
        m = adjacency_int(h) - adjacency_int(g)
        z = gv.dense() * np.sqrt(gv.znorm_sq)
        target = 2.0 / math.sqrt(g.d)
        for u, v, sign in gv.pairs:
            assert m[u, v] == sign
            assert m[u, v] * float(z[:, u] @ z[:, v]) == pytest.approx(
                target, abs=1e-9
            )


def test_gram_lower_bound_of_matchings_pair():
    g, h = matching_pair()
    assert gram_lower_bound(g, h) == pytest.approx(16.0 / 3.0, abs=1e-12)


def test_gram_lower_bound_respects_floor():
    for seed in range(3):
        g, h = bipartite_pair(20, 3, swaps=4, seed=seed)
        delta = edge_overlap(g, h).delta
        floor = 4.0 * delta * math.sqrt(3) * 20 / 3.0
        assert gram_lower_bound(g, h) >= floor - 1e-9


def test_rounding_expectation_of_matchings_pair():
    g, h = matching_pair()
    expected = (16.0 / math.pi) * math.asin(2.0 / 3.0)
    assert rounding_expectation(g, h) == pytest.approx(expected, abs=1e-12)


def test_rounding_expectation_dominates_gram_value():
    # arcsin t >= t for t >= 0 and the signs align termwise.
    for seed in range(3):
        g, h = bipartite_pair(24, 4, swaps=5, seed=seed)
        assert rounding_expectation(g, h) >= (2 / math.pi) * gram_lower_bound(
            g, h
        ) - 1e-12


def test_gram_rejects_mismatched_pairs():
    g = random_bipartite_regular(8, 2, seed=0)
    h = random_bipartite_regular(10, 2, seed=0)
    with pytest.raises(ParameterError):
        gram_vectors(g, h)
    plain, _ = connected_pair(8, 2, swaps=1, seed=0)
    with pytest.raises(ParameterError):
        gram_vectors(plain, plain)


@settings(max_examples=25, deadline=None)
@given(
    d=st.integers(min_value=1, max_value=3),
    swaps=st.integers(min_value=0, max_value=8),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_gram_norms_stay_in_band_property(d, swaps, seed):
    g = random_bipartite_regular(12, d, seed=seed)
    h = perturb_edges(g, swaps, seed=seed + 1)
    gv = gram_vectors(g, h)
    assert np.all(gv.znorm_sq >= 1.0 - 1e-12)
    assert np.all(gv.znorm_sq <= 3.0 + 1e-12)


# ---------------------------------------------------------------- witness


def test_witness_on_disjoint_matchings():
    g, h = matching_pair()
    w = witness_cut(g, h, epsilon_target=0.1, trials=100, seed=0)
    assert w.gap == 8
    assert w.lhs_form == 8
    assert w.success
    assert w.trials_used == 100
    x = w.x
    assert x[0] * x[3] == 1 and x[1] * x[2] == 1 and x[0] * x[1] == -1


def test_witness_gap_is_laplacian_form_difference():
    g, h = connected_bipartite_pair(16, 3, swaps=3, seed=1)
    w = witness_cut(g, h, epsilon_target=0.01, trials=50, seed=2)
    x = w.x.astype(np.float64)
    diff = quadratic_form(laplacian(g), x) - quadratic_form(laplacian(h), x)
    assert w.gap == round(diff)
    crossings = sum(1 for u, v in g.edges if w.x[u] != w.x[v])
    assert w.lhs_form == 4 * crossings


def test_witness_identical_pair_never_succeeds():
    g = random_bipartite_regular(12, 2, seed=3)
    w = witness_cut(g, g, epsilon_target=0.05, trials=20, seed=0)
    assert w.gap == 0
    assert not w.success


def test_witness_deterministic_in_seed():
    g, h = bipartite_pair(20, 3, swaps=4, seed=6)
    a = witness_cut(g, h, epsilon_target=0.02, trials=30, seed=11)
    b = witness_cut(g, h, epsilon_target=0.02, trials=30, seed=11)
    assert a.gap == b.gap
    assert np.array_equal(a.x, b.x)


def test_witness_carries_closed_form_diagnostics():
    g, h = matching_pair()
    w = witness_cut(g, h, epsilon_target=0.1, trials=10, seed=0)
    assert w.expectation_2eps.gram_value == pytest.approx(gram_lower_bound(g, h))
    assert w.expectation_2eps.arcsin_value == pytest.approx(
        rounding_expectation(g, h)
    )


def test_witness_validates_arguments():
    g, h = matching_pair()
    with pytest.raises(ParameterError):
        witness_cut(g, h, epsilon_target=-0.1)
    with pytest.raises(ParameterError):
        witness_cut(g, h, epsilon_target=0.1, trials=0)


def test_rounding_gaps_match_witness_trials():
    g, h = bipartite_pair(16, 3, swaps=3, seed=8)
    gaps = rounding_gaps(g, h, trials=40, seed=5)
    w = witness_cut(g, h, epsilon_target=0.0, trials=40, seed=5)
    assert gaps.max() == w.gap


def test_rounding_gaps_mean_tracks_expectation():
    g, h = matching_pair()
    gaps = rounding_gaps(g, h, trials=2000, seed=0)
    se = gaps.std(ddof=1) / math.sqrt(len(gaps))
    assert abs(gaps.mean() - rounding_expectation(g, h)) <= 5 * se
