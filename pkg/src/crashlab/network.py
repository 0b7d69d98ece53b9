"""Feed-forward network model with crash-degraded evaluation.

A network is a stack of fully connected hidden layers followed by a linear,
bias-free output layer.  Hidden neurons can crash: a crashed neuron's output
is read as exactly 0 by everything downstream, regardless of its
pre-activation.  Input and output nodes are clients of the network and never
crash.

All types are immutable after construction and all operations are pure, so
they are safe to share across worker processes.  Evaluation is 64-bit IEEE
throughout with a fixed summation order (one matmul per layer), which makes
results bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

SIGMOID = "sigmoid"
RELU = "relu"


class ShapeError(ValueError):
    """Array dimensions do not chain through the network."""


class PatternError(ValueError):
    """A crash pattern references neurons the network does not have."""


def _frozen(a, dtype=np.float64) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Activation:
    """Activation kind plus its Lipschitz coefficient (the maximum slope).

    sigmoid(x) = 1 / (1 + exp(-4*lipschitz*x)), whose steepest slope is
    exactly ``lipschitz`` at x = 0 and whose values lie in (0, 1).
    relu(x) = lipschitz * max(0, x), slope exactly ``lipschitz`` on positives.
    """

    kind: str
    lipschitz: float = 1.0

    def __post_init__(self):
        if self.kind not in (SIGMOID, RELU):
            raise ValueError(f"unknown activation kind {self.kind!r}")
        if not (np.isfinite(self.lipschitz) and self.lipschitz > 0):
            raise ValueError(f"lipschitz must be a positive finite real, got {self.lipschitz}")

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Vectorized evaluation; the scalar ``activate`` wraps this."""
        x = np.asarray(x, dtype=np.float64)
        if self.kind == RELU:
            return self.lipschitz * np.maximum(0.0, x)
        # Overflow-free logistic: z = exp(-|t|) is in (0, 1].
        t = 4.0 * self.lipschitz * x
        z = np.exp(-np.abs(t))
        return np.where(t >= 0.0, 1.0 / (1.0 + z), z / (1.0 + z))

    def derivative(self, x: np.ndarray) -> np.ndarray:
        """Slope at pre-activation x (relu uses 0 at exactly 0)."""
        x = np.asarray(x, dtype=np.float64)
        if self.kind == RELU:
            return np.where(x > 0.0, self.lipschitz, 0.0)
        y = self.apply(x)
        return 4.0 * self.lipschitz * y * (1.0 - y)


def activate(a: Activation, x: float) -> float:
    """Evaluate the activation at a single point."""
    return float(a.apply(np.float64(x)))


@dataclass(frozen=True)
class Layer:
    """One hidden layer: weights (fan_out, fan_in) and biases (fan_out,)."""

    weights: np.ndarray
    biases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _frozen(self.weights))
        object.__setattr__(self, "biases", _frozen(self.biases))

    @property
    def width(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class Network:
    """Topology, weights and biases of one feed-forward network.

    ``layers[l]`` maps the previous layer's activations to layer l+1's
    pre-activations (one bias per neuron, added once).  ``output_weights``
    is the final linear map; the output has no bias and no activation.
    """

    input_dim: int
    layers: tuple[Layer, ...]
    output_weights: np.ndarray
    activation: Activation

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "output_weights", _frozen(self.output_weights))

    @property
    def depth(self) -> int:
        """Number of hidden layers."""
        return len(self.layers)

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(layer.width for layer in self.layers)

    @property
    def hidden_count(self) -> int:
        return sum(self.widths)

    @property
    def output_dim(self) -> int:
        return self.output_weights.shape[0]

    def weight_matrices(self) -> tuple[np.ndarray, ...]:
        """All weight matrices in order, output map last."""
        return tuple(layer.weights for layer in self.layers) + (self.output_weights,)


@dataclass(frozen=True)
class CrashPattern:
    """A set of crashed hidden neurons as 1-based (layer, neuron) pairs."""

    crashed: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(l), int(j)) for l, j in self.crashed))
        if len(set(pairs)) != len(pairs):
            raise PatternError(f"duplicate crash entries in {pairs}")
        for l, j in pairs:
            if l < 1 or j < 1:
                raise PatternError(f"crash indices are 1-based, got ({l}, {j})")
        object.__setattr__(self, "crashed", pairs)

    @classmethod
    def empty(cls) -> "CrashPattern":
        return cls(())

    @property
    def size(self) -> int:
        return len(self.crashed)

    def per_layer_counts(self, depth: int) -> tuple[int, ...]:
        """Crash counts (f_1, ..., f_L); layers are validated to be <= depth."""
        counts = [0] * depth
        for l, _ in self.crashed:
            if l > depth:
                raise PatternError(f"crash in layer {l} but network has {depth} layers")
            counts[l - 1] += 1
        return tuple(counts)

    def neurons_in_layer(self, layer: int) -> tuple[int, ...]:
        return tuple(j for l, j in self.crashed if l == layer)


def validate_pattern(net: Network, pattern: CrashPattern) -> None:
    """Raise PatternError unless every crashed index exists in ``net``."""
    widths = net.widths
    for l, j in pattern.crashed:
        if l > net.depth:
            raise PatternError(f"crash in layer {l} but network has {net.depth} layers")
        if j > widths[l - 1]:
            raise PatternError(f"crash at neuron {j} but layer {l} has width {widths[l - 1]}")


@dataclass(frozen=True)
class LayerTrace:
    """Per-layer pre-activations and activations from one forward pass."""

    pre_activations: tuple[np.ndarray, ...]
    activations: tuple[np.ndarray, ...]
    output: np.ndarray


def validate(net: Network) -> list[str]:
    """Return all shape/finiteness violations; an empty list means usable."""
    problems: list[str] = []
    if net.input_dim < 1:
        problems.append(f"input_dim must be >= 1, got {net.input_dim}")
    if net.depth < 1:
        problems.append("network must have at least one hidden layer")
    fan_in = net.input_dim
    for idx, layer in enumerate(net.layers, start=1):
        w, b = layer.weights, layer.biases
        if w.ndim != 2:
            problems.append(f"layer {idx}: weights must be 2-D, got shape {w.shape}")
            continue
        if w.shape[0] < 1:
            problems.append(f"layer {idx}: width must be >= 1, got {w.shape[0]}")
        if w.shape[1] != fan_in:
            problems.append(
                f"layer {idx}: weights shape {w.shape} does not accept fan-in {fan_in}"
            )
        if b.shape != (w.shape[0],):
            problems.append(
                f"layer {idx}: biases shape {b.shape} does not match width {w.shape[0]}"
            )
        if not np.all(np.isfinite(w)):
            problems.append(f"layer {idx}: non-finite weight entries")
        if not np.all(np.isfinite(b)):
            problems.append(f"layer {idx}: non-finite bias entries")
        fan_in = w.shape[0]
    w = net.output_weights
    if w.ndim != 2:
        problems.append(f"output weights must be 2-D, got shape {w.shape}")
    else:
        if w.shape[0] < 1:
            problems.append(f"output dimension must be >= 1, got {w.shape[0]}")
        if net.depth >= 1 and w.shape[1] != fan_in:
            problems.append(
                f"output weights shape {w.shape} does not accept final width {fan_in}"
            )
        if not np.all(np.isfinite(w)):
            problems.append("output weights: non-finite entries")
    return problems


def _check_input(net: Network, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.input_dim,):
        raise ShapeError(f"input shape {x.shape} does not match input_dim {net.input_dim}")
    return x


def _mask_indices(pattern: CrashPattern) -> dict[int, np.ndarray]:
    """0-based crashed-neuron indices per 1-based layer."""
    by_layer: dict[int, list[int]] = {}
    for l, j in pattern.crashed:
        by_layer.setdefault(l, []).append(j - 1)
    return {l: np.asarray(idx, dtype=np.intp) for l, idx in by_layer.items()}


def forward(net: Network, x) -> LayerTrace:
    """Nominal forward pass for a single input vector."""
    return forward_traced(net, x, CrashPattern.empty())


def forward_traced(net: Network, x, pattern: CrashPattern) -> LayerTrace:
    """Forward pass with the given neurons crashed, keeping the full trace."""
    x = _check_input(net, x)
    validate_pattern(net, pattern)
    crashed = _mask_indices(pattern)
    pres: list[np.ndarray] = []
    acts: list[np.ndarray] = []
    y = x
    for l, layer in enumerate(net.layers, start=1):
        if layer.weights.shape[1] != y.shape[0]:
            raise ShapeError(
                f"layer {l} weights {layer.weights.shape} do not accept width {y.shape[0]}"
            )
        s = layer.weights @ y + layer.biases
        a = net.activation.apply(s)
        if l in crashed:
            a = a.copy()
            a[crashed[l]] = 0.0
        pres.append(s)
        acts.append(a)
        y = a
    if net.output_weights.shape[1] != y.shape[0]:
        raise ShapeError(
            f"output weights {net.output_weights.shape} do not accept width {y.shape[0]}"
        )
    out = net.output_weights @ y
    return LayerTrace(tuple(pres), tuple(acts), out)


def forward_failed(net: Network, x, pattern: CrashPattern) -> np.ndarray:
    """Output vector with the given neurons crashed."""
    return forward_traced(net, x, pattern).output


def forward_batch(net: Network, X) -> np.ndarray:
    """Nominal outputs for a batch of inputs, shape (n, output_dim)."""
    _, _, out = forward_batch_traced(net, X)
    return out


def forward_batch_traced(
    net: Network, X
) -> tuple[list[np.ndarray], list[np.ndarray], np.ndarray]:
    """Batched nominal pass returning per-layer pre-activations and activations.

    Arrays have shape (n, width); the cached trace feeds the crash-enumeration
    fast path, which only recomputes from the first crashed layer onward.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.input_dim:
        raise ShapeError(f"batch shape {X.shape} does not match input_dim {net.input_dim}")
    pres: list[np.ndarray] = []
    acts: list[np.ndarray] = []
    a = X
    for layer in net.layers:
        s = a @ layer.weights.T + layer.biases
        a = net.activation.apply(s)
        pres.append(s)
        acts.append(a)
    return pres, acts, a @ net.output_weights.T


def forward_failed_batch(
    net: Network,
    pattern_indices: Sequence[tuple[int, np.ndarray]],
    pres: list[np.ndarray],
    acts: list[np.ndarray],
) -> np.ndarray:
    """Failed outputs for a batch, reusing a cached nominal trace.

    ``pattern_indices`` is a sorted list of (1-based layer, 0-based neuron
    index array).  Layers before the first crashed one are taken from the
    cache; later layers are recomputed because their inputs changed.
    """
    if not pattern_indices:
        return acts[-1] @ net.output_weights.T
    first = pattern_indices[0][0]
    by_layer = dict(pattern_indices)
    a = acts[first - 1].copy()
    a[:, by_layer[first]] = 0.0
    for l in range(first + 1, net.depth + 1):
        s = a @ net.layers[l - 1].weights.T + net.layers[l - 1].biases
        a = net.activation.apply(s)
        if l in by_layer:
            a[:, by_layer[l]] = 0.0
    return a @ net.output_weights.T


@dataclass(frozen=True)
class WeightStats:
    """Max and mean absolute incoming-synapse weight of one layer."""

    w_max: float
    w_mean: float


def layer_weight_stats(net: Network) -> list[WeightStats]:
    """Stats for layers 1..L+1; the last entry covers the output weights."""
    stats = []
    for w in net.weight_matrices():
        mags = np.abs(w)
        stats.append(WeightStats(w_max=float(mags.max()), w_mean=float(mags.mean())))
    return stats
