"""Plain SGD / backpropagation with optional dropout.

Kept deliberately minimal: mean-squared error on one-hot targets against the
linear output layer, mini-batch SGD, no momentum.  Dropout is the inverted
flavour -- during training each hidden neuron is dropped with probability
``dropout_rate`` per batch and survivors are scaled by 1/(1-rate), so the
evaluation-time network is exactly the nominal one that the estimator and
measurement modules analyze.

Training is deterministic given the config seed: shuffles and dropout masks
all come from one Philox stream consumed in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .generate import TopologySpec
from .network import Activation, Layer, Network, ShapeError
from .rng import philox, uniforms


class TrainingError(RuntimeError):
    """Training diverged (non-finite loss)."""


MSE = "mse"
CROSS_ENTROPY = "cross_entropy"


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer knobs.  ``objective`` selects what SGD minimizes: plain MSE
    against the one-hot targets (the default, matching ``loss``), or softmax
    cross-entropy over the same linear outputs.  The softmax exists only
    inside the objective; the trained network itself stays linear-output."""

    learning_rate: float = 0.05
    epochs: int = 10
    batch_size: int = 32
    dropout_rate: float = 0.0
    seed: int = 0
    target_loss: float | None = None
    objective: str = MSE

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not (0.0 <= self.dropout_rate < 1.0):
            raise ValueError("dropout_rate must be in [0, 1)")
        if self.objective not in (MSE, CROSS_ENTROPY):
            raise ValueError(f"unknown objective {self.objective!r}")


@dataclass(frozen=True)
class LabeledDataset:
    """Inputs in [0,1]^d with integer class labels."""

    inputs: np.ndarray  # (n, d) float64
    labels: np.ndarray  # (n,) int
    num_classes: int = 10

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if inputs.ndim != 2:
            raise ValueError(f"inputs must be 2-D, got shape {inputs.shape}")
        if labels.shape != (inputs.shape[0],):
            raise ValueError(
                f"{inputs.shape[0]} inputs but {labels.shape[0] if labels.ndim else 0} labels"
            )
        if labels.size and (labels.min() < 0 or labels.max() >= self.num_classes):
            raise ValueError(
                f"labels must lie in 0..{self.num_classes - 1}, "
                f"got range {labels.min()}..{labels.max()}"
            )
        inputs.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.inputs.shape[0]

    @property
    def dim(self) -> int:
        return self.inputs.shape[1]

    def targets(self) -> np.ndarray:
        """One-hot targets, shape (n, num_classes)."""
        t = np.zeros((len(self), self.num_classes))
        t[np.arange(len(self)), self.labels] = 1.0
        return t

    def take(self, indices) -> "LabeledDataset":
        indices = np.asarray(indices)
        return LabeledDataset(self.inputs[indices], self.labels[indices], self.num_classes)


@dataclass(frozen=True)
class Gradients:
    layer_weights: tuple[np.ndarray, ...]
    layer_biases: tuple[np.ndarray, ...]
    output_weights: np.ndarray


def _check_classes(net: Network, data: LabeledDataset) -> None:
    if data.dim != net.input_dim:
        raise ShapeError(f"data dim {data.dim} does not match input_dim {net.input_dim}")
    if net.output_dim != data.num_classes:
        raise ShapeError(
            f"output_dim {net.output_dim} does not match {data.num_classes} classes"
        )


def loss(net: Network, data: LabeledDataset) -> float:
    """Mean over examples of 0.5 * ||output - one_hot(label)||^2."""
    if len(data) == 0:
        raise ValueError("batch must be nonempty")
    _check_classes(net, data)
    out = _forward_arrays(net, data.inputs)[-1][1]
    delta = out - data.targets()
    return float(0.5 * np.sum(delta * delta, axis=1).mean())


def _objective_value_and_grad(objective: str, out: np.ndarray, targets: np.ndarray):
    """Objective value and its gradient w.r.t. the linear outputs."""
    n = out.shape[0]
    if objective == MSE:
        delta = out - targets
        return float(0.5 * np.sum(delta * delta, axis=1).mean()), delta / n
    shifted = out - out.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    p = exp / exp.sum(axis=1, keepdims=True)
    value = float(np.mean(np.log(exp.sum(axis=1)) - (shifted * targets).sum(axis=1)))
    return value, (p - targets) / n


def objective_loss(net: Network, data: LabeledDataset, objective: str) -> float:
    """The quantity SGD minimizes; equals ``loss`` for the MSE objective."""
    if objective == MSE:
        return loss(net, data)
    _check_classes(net, data)
    out = _forward_arrays(net, data.inputs)[-1][1]
    return _objective_value_and_grad(objective, out, data.targets())[0]


def _forward_arrays(net, X, masks=None, keep_scale=1.0):
    """Per-layer (pre_activation, activation) pairs plus the ("out", output).

    ``masks`` are per-layer 0/1 keep vectors; masked activations become 0 and
    survivors are multiplied by keep_scale.
    """
    trace = []
    a = X
    for l, layer in enumerate(net.layers):
        s = a @ layer.weights.T + layer.biases
        a = net.activation.apply(s)
        if masks is not None:
            a = a * (masks[l] * keep_scale)
        trace.append((s, a))
    out = a @ net.output_weights.T
    trace.append((None, out))
    return trace


def backward(
    net: Network,
    data: LabeledDataset,
    dropout_mask: list[np.ndarray] | None = None,
    keep_scale: float = 1.0,
) -> Gradients:
    """Exact gradient of ``loss`` by reverse accumulation.

    ``dropout_mask`` holds one boolean/0-1 vector per hidden layer; masked
    neurons contribute zero activation and receive zero gradient.
    """
    if len(data) == 0:
        raise ValueError("batch must be nonempty")
    _check_classes(net, data)
    if dropout_mask is not None:
        if len(dropout_mask) != net.depth:
            raise ShapeError(
                f"{len(dropout_mask)} masks for {net.depth} hidden layers"
            )
        masks = [np.asarray(m, dtype=np.float64) for m in dropout_mask]
        for m, width in zip(masks, net.widths):
            if m.shape != (width,):
                raise ShapeError(f"mask shape {m.shape} does not match width {width}")
    else:
        masks = None

    X = data.inputs
    trace = _forward_arrays(net, X, masks, keep_scale)
    _, d_out = _objective_value_and_grad(MSE, trace[-1][1], data.targets())
    return _accumulate(net, X, trace, d_out, masks, keep_scale)


def _accumulate(net, X, trace, d_out, masks, keep_scale) -> Gradients:
    g_out = d_out.T @ trace[net.depth - 1][1]
    d_act = d_out @ net.output_weights
    g_w: list[np.ndarray] = [None] * net.depth  # type: ignore[list-item]
    g_b: list[np.ndarray] = [None] * net.depth  # type: ignore[list-item]
    for l in range(net.depth - 1, -1, -1):
        s = trace[l][0]
        if masks is not None:
            d_act = d_act * (masks[l] * keep_scale)
        d_pre = d_act * net.activation.derivative(s)
        below = X if l == 0 else trace[l - 1][1]
        g_w[l] = d_pre.T @ below
        g_b[l] = d_pre.sum(axis=0)
        if l > 0:
            d_act = d_pre @ net.layers[l].weights
    return Gradients(tuple(g_w), tuple(g_b), g_out)


def initial_network(spec: TopologySpec, seed: int) -> Network:
    """Training start point: weights uniform in +-1/sqrt(fan_in), zero biases."""
    gen = philox(seed, stream=2)
    dims = (spec.input_dim, *spec.layer_widths)
    layers = []
    for fan_in, width in zip(dims[:-1], dims[1:]):
        u = uniforms(gen, width * fan_in).reshape(width, fan_in)
        bound = 1.0 / np.sqrt(fan_in)
        layers.append(Layer(weights=(2.0 * u - 1.0) * bound, biases=np.zeros(width)))
    fan_in = spec.layer_widths[-1]
    u = uniforms(gen, spec.output_dim * fan_in).reshape(spec.output_dim, fan_in)
    output = (2.0 * u - 1.0) / np.sqrt(fan_in)
    return Network(spec.input_dim, tuple(layers), output, spec.activation)


@dataclass(frozen=True)
class EpochStats:
    loss: float
    accuracy: float


@dataclass(frozen=True)
class TrainResult:
    trained: Network
    history: tuple[EpochStats, ...]
    epochs_used: int

    @property
    def final_loss(self) -> float:
        return self.history[-1].loss


def train(net: Network, data: LabeledDataset, cfg: TrainConfig) -> TrainResult:
    """Mini-batch SGD with a fresh dropout mask per batch.

    Stops at cfg.epochs or as soon as the full-dataset objective drops to
    cfg.target_loss; history records the objective per epoch.  Raises
    TrainingError naming the epoch if the loss goes non-finite.
    """
    if len(data) == 0:
        raise ValueError("training data must be nonempty")
    _check_classes(net, data)
    gen = philox(cfg.seed, stream=3)
    weights = [layer.weights.copy() for layer in net.layers]
    biases = [layer.biases.copy() for layer in net.layers]
    out_w = net.output_weights.copy()
    act = net.activation
    n = len(data)
    keep_prob = 1.0 - cfg.dropout_rate
    history: list[EpochStats] = []
    epochs_used = cfg.epochs

    for epoch in range(1, cfg.epochs + 1):
        order = gen.permutation(n)
        for start in range(0, n, cfg.batch_size):
            batch_idx = order[start : start + cfg.batch_size]
            batch = data.take(batch_idx)
            if cfg.dropout_rate > 0.0:
                masks = [
                    (gen.random(w.shape[0]) >= cfg.dropout_rate).astype(np.float64)
                    for w in weights
                ]
                scale = 1.0 / keep_prob
            else:
                masks, scale = None, 1.0
            snapshot = _assemble(net.input_dim, weights, biases, out_w, act)
            trace = _forward_arrays(snapshot, batch.inputs, masks, scale)
            _, d_out = _objective_value_and_grad(
                cfg.objective, trace[-1][1], batch.targets()
            )
            grads = _accumulate(snapshot, batch.inputs, trace, d_out, masks, scale)
            for l in range(len(weights)):
                weights[l] -= cfg.learning_rate * grads.layer_weights[l]
                biases[l] -= cfg.learning_rate * grads.layer_biases[l]
            out_w -= cfg.learning_rate * grads.output_weights
        snapshot = _assemble(net.input_dim, weights, biases, out_w, act)
        epoch_loss = objective_loss(snapshot, data, cfg.objective)
        if not np.isfinite(epoch_loss):
            raise TrainingError(f"loss became non-finite at epoch {epoch}")
        history.append(EpochStats(loss=epoch_loss, accuracy=accuracy(snapshot, data)))
        if cfg.target_loss is not None and epoch_loss <= cfg.target_loss:
            epochs_used = epoch
            break

    trained = _assemble(net.input_dim, weights, biases, out_w, act)
    return TrainResult(trained=trained, history=tuple(history), epochs_used=epochs_used)


def _assemble(input_dim, weights, biases, out_w, act: Activation) -> Network:
    return Network(
        input_dim=input_dim,
        layers=tuple(Layer(w, b) for w, b in zip(weights, biases)),
        output_weights=out_w,
        activation=act,
    )


def accuracy(net: Network, data: LabeledDataset) -> float:
    """Fraction of examples whose argmax output matches the label.

    np.argmax breaks ties toward the lowest index, which is the tie rule.
    """
    if len(data) == 0:
        raise ValueError("accuracy of an empty dataset is undefined")
    _check_classes(net, data)
    out = _forward_arrays(net, data.inputs)[-1][1]
    return float(np.mean(np.argmax(out, axis=1) == data.labels))


@dataclass(frozen=True)
class SweepRow:
    lipschitz: float
    mean_epochs: float
    std_epochs: float
    censored_runs: int


def learning_cost_sweep(
    spec: TopologySpec,
    data: LabeledDataset,
    k_grid: list[float],
    runs_per_k: int,
    cfg: TrainConfig,
    seeds: list[int] | None = None,
) -> list[SweepRow]:
    """Epochs-to-target statistics across activation steepness values.

    Each run trains a fresh seeded network until cfg.target_loss or the
    epoch cap; capped runs count as censored at the cap.
    """
    if runs_per_k < 2:
        raise ValueError("runs_per_k must be >= 2")
    if seeds is None:
        seeds = [cfg.seed + r for r in range(runs_per_k)]
    if len(seeds) != runs_per_k:
        raise ValueError(f"{len(seeds)} seeds for {runs_per_k} runs")
    rows = []
    for k in k_grid:
        k_spec = TopologySpec(
            spec.input_dim,
            spec.layer_widths,
            spec.output_dim,
            Activation(spec.activation.kind, k),
        )
        epochs = []
        censored = 0
        for run_seed in seeds:
            result = train(initial_network(k_spec, run_seed), data, cfg)
            epochs.append(result.epochs_used)
            if cfg.target_loss is not None and result.final_loss > cfg.target_loss:
                censored += 1
        rows.append(
            SweepRow(
                lipschitz=float(k),
                mean_epochs=float(np.mean(epochs)),
                std_epochs=float(np.std(epochs)),
                censored_runs=censored,
            )
        )
    return rows
