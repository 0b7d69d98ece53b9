"""Shared fixtures and the seeded network corpora used by several suites."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from crashlab.generate import TopologySpec, random_network
from crashlab.network import Activation, Layer, Network
from crashlab.rng import philox

REPO_ROOT = Path(__file__).resolve().parents[1]
BUNDLED_MNIST = REPO_ROOT / "data" / "mnist"


def two_neuron_net(w1: float = 0.3, w2: float = 0.7) -> Network:
    """Single hidden layer of two zero-input sigmoid neurons (both output 0.5
    for every input), read out with the given weights."""
    return Network(
        input_dim=1,
        layers=(Layer(weights=[[0.0], [0.0]], biases=[0.0, 0.0]),),
        output_weights=[[w1, w2]],
        activation=Activation("sigmoid", 1.0),
    )


def bound_corpus_net(seed: int) -> tuple[Network, int]:
    """One member of the 50-net bound-validity corpus (criterion suite)."""
    gen = philox(seed, stream=9)
    depth = 1 + seed % 4
    widths = tuple(int(gen.integers(1, 5)) for _ in range(depth))
    d = 1 + int(gen.integers(0, 4))
    kind = "sigmoid" if seed % 2 == 0 else "relu"
    k = [0.5, 1.0, 2.0][seed % 3]
    net = random_network(TopologySpec(d, widths, 1, Activation(kind, k)), seed)
    return net, d


def nonneg_output_net(seed: int) -> tuple[Network, int]:
    """Single-layer net with nonnegative output weights (equality-case corpus)."""
    gen = philox(seed, stream=10)
    n1 = 1 + int(gen.integers(0, 8))
    d = 1 + int(gen.integers(0, 3))
    kind = "sigmoid" if seed % 2 else "relu"
    k = [0.5, 1.0, 2.0][seed % 3]
    base = random_network(TopologySpec(d, (n1,), 1, Activation(kind, k)), seed)
    net = Network(base.input_dim, base.layers, np.abs(base.output_weights), base.activation)
    return net, d


@pytest.fixture(scope="session")
def mnist_dir() -> Path:
    if not BUNDLED_MNIST.is_dir():
        pytest.skip("bundled MNIST data missing")
    return BUNDLED_MNIST


@pytest.fixture(scope="session")
def mnist_train(mnist_dir):
    from crashlab.cli import load_mnist

    return load_mnist("train", mnist_dir)


@pytest.fixture(scope="session")
def mnist_test(mnist_dir):
    from crashlab.cli import load_mnist

    return load_mnist("test", mnist_dir)


@pytest.fixture(scope="session")
def dropout_nets(mnist_train):
    """The four digit networks of the dropout study, trained once per session."""
    from crashlab.cli import train_dropout_net

    return {
        rate: train_dropout_net(mnist_train, rate, (48,), seed=0)
        for rate in (0.0, 0.1, 0.2, 0.3)
    }
