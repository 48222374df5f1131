import numpy as np
import pytest

from netrisk import mcsim
from netrisk.errors import DimensionMismatch, ProbOutOfRange
from netrisk.mcsim import CascadeConfig, simulate_expected_loss, trial_losses
from netrisk.netgraph import network_from_adjacency
from netrisk.riskcore import default_transition_matrix, network_default_probability, network_expected_loss

from conftest import node_names, random_adjacency


def analytic_nel(net, q, dp, loss):
    return network_expected_loss(network_default_probability(dp, default_transition_matrix(q, net)), loss)


def test_two_node_example():
    net = network_from_adjacency(("A1", "B1"), [[0, 1], [0, 0]])
    q = [[1, 0.5], [0, 1]]
    est = simulate_expected_loss(net, q, [1, 0], [0, 1], CascadeConfig(trials=1_000_000, seed=11))
    assert est.trials == 1_000_000
    assert abs(est.mean - 0.5) <= 3 * est.std_error
    assert analytic_nel(net, q, [1, 0], [0, 1]) == 0.5


def test_no_defaults_is_exactly_zero():
    net = network_from_adjacency(node_names(3), np.ones((3, 3)))
    est = simulate_expected_loss(net, np.full((3, 3), 0.7), [0, 0, 0], [5, 6, 7], CascadeConfig(1000, 3))
    assert est.mean == 0.0 and est.std_error == 0.0


def test_single_node_bernoulli():
    net = network_from_adjacency(("A1",), [[0]])
    est = simulate_expected_loss(net, [[1.0]], [0.5], [2.0], CascadeConfig(200_000, 5))
    assert abs(est.mean - 1.0) <= 3 * est.std_error
    # Bernoulli(0.5) * 2 has std 1
    assert est.std_error == pytest.approx(1 / np.sqrt(200_000), rel=0.01)


def test_deterministic():
    rng = np.random.default_rng(1)
    net = network_from_adjacency(node_names(4), random_adjacency(rng, 4))
    args = (net, rng.random((4, 4)), rng.random(4), rng.uniform(1, 9, 4))
    a = simulate_expected_loss(*args, CascadeConfig(100_000, 42))
    b = simulate_expected_loss(*args, CascadeConfig(100_000, 42))
    c = simulate_expected_loss(*args, CascadeConfig(100_000, 43))
    assert a == b
    assert a != c


def test_trial_draws_independent_of_chunking(monkeypatch):
    rng = np.random.default_rng(2)
    n = 3
    probs, transmit, loss = rng.random(n), rng.random((n, n)), rng.uniform(1, 5, n)
    whole = trial_losses(probs, transmit, loss, 9, 0, 1000)
    pieces = np.concatenate([trial_losses(probs, transmit, loss, 9, s, 137) for s in range(0, 1000, 137)])
    assert np.array_equal(whole, pieces[:1000])
    # trial 500 on its own
    assert trial_losses(probs, transmit, loss, 9, 500, 1)[0] == whole[500]


def test_chunk_size_does_not_change_estimate(monkeypatch):
    rng = np.random.default_rng(3)
    net = network_from_adjacency(node_names(3), random_adjacency(rng, 3, p=0.8))
    args = (net, rng.random((3, 3)), rng.random(3), rng.uniform(1, 9, 3))
    big = simulate_expected_loss(*args, CascadeConfig(5000, 1))
    monkeypatch.setattr(mcsim, "CHUNK_TRIALS", 512)
    small = simulate_expected_loss(*args, CascadeConfig(5000, 1))
    assert small.mean == pytest.approx(big.mean, rel=1e-12)
    assert small.std_error == pytest.approx(big.std_error, rel=1e-9)


def test_input_validation():
    net = network_from_adjacency(("A1", "B1"), [[0, 1], [0, 0]])
    with pytest.raises(DimensionMismatch):
        simulate_expected_loss(net, np.eye(2), [0.1], [1, 1])
    with pytest.raises(ProbOutOfRange):
        simulate_expected_loss(net, np.eye(2), [0.1, 1.2], [1, 1])
    with pytest.raises(ProbOutOfRange):
        simulate_expected_loss(net, [[1, 1.5], [0, 1]], [0.1, 0.2], [1, 1])
    with pytest.raises(ValueError):
        CascadeConfig(trials=0)


def test_convergence_rate():
    # |mean - NEL| <= 4 se in at least 99 of 100 seeded runs, per random instance
    rng = np.random.default_rng(77)
    for _ in range(5):
        n = int(rng.integers(1, 6))
        net = network_from_adjacency(node_names(n), random_adjacency(rng, n))
        q, dp, loss = rng.random((n, n)), rng.random(n), rng.uniform(0, 10, n)
        nel = analytic_nel(net, q, dp, loss)
        ok = 0
        for seed in range(100):
            est = simulate_expected_loss(net, q, dp, loss, CascadeConfig(2000, seed))
            ok += abs(est.mean - nel) <= 4 * est.std_error
        assert ok >= 99


def test_loss_monotonicity():
    rng = np.random.default_rng(5)
    n = 4
    net = network_from_adjacency(node_names(n), random_adjacency(rng, n, p=0.6))
    q, dp, loss = rng.random((n, n)), rng.random(n), rng.uniform(0, 10, n)
    bumped = loss.copy()
    bumped[2] += 5.0
    assert analytic_nel(net, q, dp, bumped) >= analytic_nel(net, q, dp, loss)
    cfg = CascadeConfig(200_000, 8)
    lo = simulate_expected_loss(net, q, dp, loss, cfg)
    hi = simulate_expected_loss(net, q, dp, bumped, cfg)
    # same seed -> same realised transmissions, so the bump can only add
    assert hi.mean >= lo.mean
