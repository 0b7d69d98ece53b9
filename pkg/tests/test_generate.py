"""Random network generation and weight transforms."""

import numpy as np
import pytest

from crashlab.generate import (
    TopologySpec,
    random_inputs,
    random_network,
    scale_weights,
    with_lipschitz,
)
from crashlab.network import Activation
from crashlab.rng import normals, philox


def test_same_seed_same_network():
    spec = TopologySpec(3, (4, 3, 4), 1, Activation("sigmoid", 1.0))
    a = random_network(spec, 42)
    b = random_network(spec, 42)
    for la, lb in zip(a.layers, b.layers):
        assert np.array_equal(la.weights, lb.weights)
    assert np.array_equal(a.output_weights, b.output_weights)
    c = random_network(spec, 43)
    assert not np.array_equal(a.layers[0].weights, c.layers[0].weights)


def test_weight_distribution_moments():
    # mean 1 +- 0.1 and std 5 +- 0.2 over 1e5 draws (many sigma of slack)
    draws = 1.0 + 5.0 * normals(philox(77), 100_000)
    assert abs(draws.mean() - 1.0) < 0.1
    assert abs(draws.std() - 5.0) < 0.2


def test_network_weight_pool_moments():
    spec = TopologySpec(50, (60, 60), 50, Activation("relu", 1.0))
    net = random_network(spec, 5)
    all_w = np.concatenate([l.weights.ravel() for l in net.layers] + [net.output_weights.ravel()])
    assert all_w.size >= 9000
    assert abs(all_w.mean() - 1.0) < 0.2
    assert abs(all_w.std() - 5.0) < 0.25


def test_shapes_chain():
    spec = TopologySpec(3, (4, 3, 4), 1, Activation("sigmoid", 1.0))
    net = random_network(spec, 0)
    assert [l.weights.shape for l in net.layers] == [(4, 3), (3, 4), (4, 3)]
    assert [l.biases.shape for l in net.layers] == [(4,), (3,), (4,)]
    assert net.output_weights.shape == (1, 4)


def test_biases_are_zero():
    net = random_network(TopologySpec(2, (3, 3), 2, Activation("relu", 1.0)), 1)
    for layer in net.layers:
        assert (layer.biases == 0.0).all()


def test_spec_validation():
    with pytest.raises(ValueError):
        TopologySpec(0, (3,), 1, Activation("relu", 1.0))
    with pytest.raises(ValueError):
        TopologySpec(2, (3, 0), 1, Activation("relu", 1.0))


def test_scale_identity_and_zero():
    net = random_network(TopologySpec(2, (3,), 1, Activation("relu", 1.0)), 2)
    same = scale_weights(net, 1.0)
    assert np.array_equal(same.layers[0].weights, net.layers[0].weights)
    zero = scale_weights(net, 0.0)
    assert (zero.layers[0].weights == 0.0).all()
    assert (zero.output_weights == 0.0).all()
    from crashlab.estimator import erf_fixed

    assert erf_fixed(zero, (2,)).erf_max == 0.0


def test_scale_preserves_biases():
    from crashlab.network import Layer, Network

    net = Network(1, (Layer([[1.0]], [0.5]),), [[1.0]], Activation("sigmoid", 1.0))
    scaled = scale_weights(net, 3.0)
    assert scaled.layers[0].biases.tolist() == [0.5]
    assert scaled.layers[0].weights.tolist() == [[3.0]]


def test_scale_composition_exact_for_powers_of_two():
    # float multiplication is exact for power-of-two factors, so the
    # composition law holds bitwise there (it cannot for arbitrary floats)
    net = random_network(TopologySpec(2, (3, 3), 1, Activation("relu", 1.0)), 3)
    a, b = 0.5, 4.0
    twice = scale_weights(scale_weights(net, a), b)
    once = scale_weights(net, a * b)
    for lt, lo in zip(twice.layers, once.layers):
        assert np.array_equal(lt.weights, lo.weights)
    assert np.array_equal(twice.output_weights, once.output_weights)


def test_with_lipschitz_keeps_weights():
    net = random_network(TopologySpec(2, (3,), 1, Activation("relu", 1.0)), 4)
    other = with_lipschitz(net, 2.5)
    assert other.activation.lipschitz == 2.5
    assert np.array_equal(other.layers[0].weights, net.layers[0].weights)


def test_random_inputs_deterministic_in_box():
    x = random_inputs(5, 40, seed=9)
    assert x.shape == (40, 5)
    assert x.min() >= 0.0 and x.max() < 1.0
    assert np.array_equal(x, random_inputs(5, 40, seed=9))
