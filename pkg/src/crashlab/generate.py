"""Seeded generation and rescaling of random networks.

Random networks draw every synaptic weight (hidden and output alike)
i.i.d. from Normal(mean 1, std 5); biases are zero so the relu homogeneity
laws hold exactly.  Weights come off one Philox stream in a fixed layout
(layer 1 row-major, then layer 2, ..., then the output matrix), so a given
(spec, seed) always rebuilds the identical network.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import Activation, Layer, Network
from .rng import normals, philox, uniforms

WEIGHT_MEAN = 1.0
WEIGHT_STD = 5.0


@dataclass(frozen=True)
class TopologySpec:
    """Shape of a network to generate: d -> hidden widths -> output_dim."""

    input_dim: int
    layer_widths: tuple[int, ...]
    output_dim: int
    activation: Activation

    def __post_init__(self):
        object.__setattr__(self, "layer_widths", tuple(int(w) for w in self.layer_widths))
        dims = (self.input_dim, *self.layer_widths, self.output_dim)
        if any(d < 1 for d in dims):
            raise ValueError(f"all dimensions must be >= 1, got {dims}")

    def weight_count(self) -> int:
        dims = (self.input_dim, *self.layer_widths, self.output_dim)
        return sum(a * b for a, b in zip(dims[1:], dims[:-1]))


def random_network(spec: TopologySpec, seed: int) -> Network:
    """Network with N(1, 5) weights and zero biases, deterministic in seed."""
    gen = philox(seed)
    draws = WEIGHT_MEAN + WEIGHT_STD * normals(gen, spec.weight_count())
    dims = (spec.input_dim, *spec.layer_widths)
    layers = []
    pos = 0
    for fan_in, width in zip(dims[:-1], dims[1:]):
        n = width * fan_in
        layers.append(
            Layer(weights=draws[pos : pos + n].reshape(width, fan_in),
                  biases=np.zeros(width))
        )
        pos += n
    out_n = spec.output_dim * spec.layer_widths[-1]
    output = draws[pos : pos + out_n].reshape(spec.output_dim, spec.layer_widths[-1])
    return Network(
        input_dim=spec.input_dim,
        layers=tuple(layers),
        output_weights=output,
        activation=spec.activation,
    )


def scale_weights(net: Network, s: float) -> Network:
    """New network with every weight (hidden and output) multiplied by s."""
    s = float(s)
    if not np.isfinite(s):
        raise ValueError(f"scale must be finite, got {s}")
    return Network(
        input_dim=net.input_dim,
        layers=tuple(
            Layer(weights=s * layer.weights, biases=layer.biases)
            for layer in net.layers
        ),
        output_weights=s * net.output_weights,
        activation=net.activation,
    )


def with_lipschitz(net: Network, lipschitz: float) -> Network:
    """Same weights, different activation steepness."""
    return Network(
        input_dim=net.input_dim,
        layers=net.layers,
        output_weights=net.output_weights,
        activation=Activation(net.activation.kind, lipschitz),
    )


def random_inputs(input_dim: int, count: int, seed: int) -> np.ndarray:
    """Seeded corpus of uniform inputs from the box [0,1]^d, shape (count, d)."""
    gen = philox(seed, stream=1)
    return uniforms(gen, count * input_dim).reshape(count, input_dim)
