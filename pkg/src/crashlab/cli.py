"""Batch experiment harness and command-line interface.

Each subcommand reproduces one experiment family: robustness sweeps over the
activation steepness, weight rescaling, crash depth, dropout-trained
networks, training-cost statistics, and one-shot reports for a saved network
document.  Results are CSV rows against the fixed 16-column schema (the
learning-cost sweep has its own smaller schema).

Every experiment is deterministic: fixed seeds and worker count give
byte-identical CSV output, and the omega aggregates are additionally
independent of the worker count.  Exhaustive enumeration larger than the
evaluation budget is refused up front with the exact required count unless
sampling is requested.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from . import dataio
from .estimator import ErfTotalReport, erf_total
from .generate import TopologySpec, random_inputs, random_network, scale_weights, with_lipschitz
from .measurement import (
    DEFAULT_EVALUATION_BUDGET,
    BudgetExceededError,
    OmegaReport,
    omega_exhaustive,
    omega_patterns,
    omega_sampled,
    required_evaluations,
)
from .network import Activation, CrashPattern, Network
from .training import LabeledDataset, TrainConfig, initial_network, learning_cost_sweep, train

EXPERIMENTS = (
    "sweep_k",
    "sweep_scale",
    "depth_inversion",
    "dropout_study",
    "learning_cost",
    "erf_report",
    "omega_report",
)

DEFAULT_K_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
DEFAULT_SCALE_GRID = (0.1, 1.0, 10.0)
DEFAULT_DROPOUT_GRID = (0.0, 0.1, 0.2, 0.3)
DEFAULT_WIDTHS = (4, 4, 4, 4)

MNIST_FILES = {
    "train": ("train-images-idx3-ubyte", "train-labels-idx1-ubyte"),
    "test": ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
}


@dataclass
class ExperimentSpec:
    """One experiment run: which family, its parameter grids, and limits."""

    name: str
    parameters: dict = field(default_factory=dict)
    budget: int = DEFAULT_EVALUATION_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.name!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def run(spec: ExperimentSpec) -> list[dict]:
    """Execute one experiment and return its CSV rows as dicts."""
    return _RUNNERS[spec.name](spec)


# ---------------------------------------------------------------------------
# Row assembly


def _widths_str(net: Network) -> str:
    return "x".join(str(w) for w in net.widths)


def _row(
    experiment: str,
    seed: int | None,
    net: Network,
    f: int,
    omega: OmegaReport | None,
    erf: ErfTotalReport | None,
) -> dict:
    mode = None
    if omega is not None:
        mode = omega.mode
        if omega.mode == "sampled":
            mode = f"sampled(seed={omega.seed},n={omega.n_samples})"
    return {
        "experiment": experiment,
        "seed": seed,
        "activation": net.activation.kind,
        "K": net.activation.lipschitz,
        "L": net.depth,
        "widths": _widths_str(net),
        "f": f,
        "omega_av": None if omega is None else omega.omega_av,
        "omega_mav": None if omega is None else omega.omega_mav,
        "omega_max": None if omega is None else omega.omega_max,
        "omega_std": None if omega is None else omega.std_dev,
        "erf_av": None if erf is None else erf.erf_av_expected,
        "erf_max": None if erf is None else erf.erf_max_worst,
        "patterns": None if omega is None else omega.patterns_evaluated,
        "inputs": None if omega is None else omega.inputs_evaluated,
        "mode": mode,
    }


def _measure(
    net: Network,
    inputs: np.ndarray,
    f: int,
    spec: ExperimentSpec,
    seed: int,
    sample_n: int | None = None,
) -> OmegaReport:
    """Exhaustive when it fits the budget, sampled when allowed, else refuse."""
    required = required_evaluations(net, f, inputs.shape[0])
    norm = spec.parameters.get("norm", "max")
    if sample_n is None:
        sample_n = spec.parameters.get("sample")
    if required <= spec.budget:
        return omega_exhaustive(
            net, inputs, f, norm=norm, workers=spec.workers, budget=spec.budget
        )
    if sample_n is None:
        raise BudgetExceededError(required, spec.budget)
    cost = sample_n * inputs.shape[0]
    if cost > spec.budget:
        raise BudgetExceededError(cost, spec.budget)
    return omega_sampled(
        net, inputs, f, sample_n, seed, norm=norm, workers=spec.workers
    )


# ---------------------------------------------------------------------------
# Experiment implementations


def _random_net_params(spec: ExperimentSpec):
    p = spec.parameters
    widths = tuple(p.get("widths", DEFAULT_WIDTHS))
    input_dim = int(p.get("input_dim", 4))
    output_dim = int(p.get("output_dim", 1))
    kind = p.get("activation", "relu")
    seeds = list(p.get("seeds", range(3)))
    n_inputs = int(p.get("inputs", 1000))
    f_list = list(p.get("f", (1, 2, 3, 4)))
    return widths, input_dim, output_dim, kind, seeds, n_inputs, f_list


def _run_sweep_k(spec: ExperimentSpec) -> list[dict]:
    widths, d, out_dim, kind, seeds, n_inputs, f_list = _random_net_params(spec)
    k_grid = list(spec.parameters.get("k_grid", DEFAULT_K_GRID))
    rows = []
    for seed in seeds:
        inputs = random_inputs(d, n_inputs, seed)
        for k in k_grid:
            topo = TopologySpec(d, widths, out_dim, Activation(kind, k))
            net = random_network(topo, seed)
            for f in f_list:
                omega = _measure(net, inputs, f, spec, seed)
                erf = erf_total(net, f)
                rows.append(_row("sweep_k", seed, net, f, omega, erf))
    return rows


def _run_sweep_scale(spec: ExperimentSpec) -> list[dict]:
    widths, d, out_dim, kind, seeds, n_inputs, f_list = _random_net_params(spec)
    k = float(spec.parameters.get("k", 1.0))
    scale_grid = list(spec.parameters.get("scale_grid", DEFAULT_SCALE_GRID))
    rows = []
    for seed in seeds:
        inputs = random_inputs(d, n_inputs, seed)
        base = random_network(TopologySpec(d, widths, out_dim, Activation(kind, k)), seed)
        for s in scale_grid:
            net = scale_weights(base, s)
            for f in f_list:
                omega = _measure(net, inputs, f, spec, seed)
                erf = erf_total(net, f)
                rows.append(_row(f"sweep_scale[s={s:g}]", seed, net, f, omega, erf))
    return rows


def _run_depth_inversion(spec: ExperimentSpec) -> list[dict]:
    widths, d, out_dim, kind, seeds, n_inputs, _ = _random_net_params(spec)
    if "widths" not in spec.parameters:
        widths = (4, 4, 4)
    if "activation" not in spec.parameters:
        kind = "sigmoid"
    k_grid = list(spec.parameters.get("k_grid", DEFAULT_K_GRID))
    rows = []
    for seed in seeds:
        inputs = random_inputs(d, n_inputs, seed)
        base = random_network(TopologySpec(d, widths, out_dim, Activation(kind, 1.0)), seed)
        for k in k_grid:
            net = with_lipschitz(base, k)
            for layer in range(1, net.depth + 1):
                patterns = [
                    CrashPattern(((layer, j),)) for j in range(1, net.widths[layer - 1] + 1)
                ]
                omega = omega_patterns(
                    net, inputs, patterns,
                    norm=spec.parameters.get("norm", "max"), workers=spec.workers,
                )
                rows.append(_row(f"depth_inversion[layer={layer}]", seed, net, 1, omega, None))
    return rows


def resolve_mnist_dir(explicit: str | None = None) -> Path:
    """MNIST location: explicit flag, MNIST_DIR, ./data/mnist, bundled copy."""
    candidates = []
    if explicit:
        candidates.append(Path(explicit))
    env = os.environ.get("MNIST_DIR")
    if env:
        candidates.append(Path(env))
    candidates.append(Path.cwd() / "data" / "mnist")
    # source checkout: <repo>/src/crashlab/cli.py -> <repo>/data/mnist
    candidates.append(Path(__file__).resolve().parents[2] / "data" / "mnist")
    for cand in candidates:
        if cand.is_dir():
            return cand
    raise FileNotFoundError(
        "no MNIST directory found; set MNIST_DIR or pass --mnist-dir "
        f"(tried {', '.join(str(c) for c in candidates)})"
    )


def load_mnist(which: str, mnist_dir: Path) -> LabeledDataset:
    """Load the train or test IDX pair, accepting .gz variants."""
    images_name, labels_name = MNIST_FILES[which]
    paths = []
    for name in (images_name, labels_name):
        plain = mnist_dir / name
        gz = mnist_dir / (name + ".gz")
        if plain.exists():
            paths.append(plain)
        elif gz.exists():
            paths.append(gz)
        else:
            raise FileNotFoundError(f"missing {name}[.gz] in {mnist_dir}")
    return dataio.load_idx(paths[0], paths[1])


def train_dropout_net(
    train_data: LabeledDataset,
    dropout_rate: float,
    widths: tuple[int, ...] = (48,),
    *,
    lipschitz: float = 1.0,
    kind: str = "relu",
    epochs: int = 20,
    learning_rate: float = 0.2,
    batch_size: int = 32,
    seed: int = 0,
    objective: str = "cross_entropy",
) -> Network:
    """One classification network: seeded init, seeded SGD schedule.

    Digit networks train against the cross-entropy objective by default; at
    desk-scale dataset sizes the plain MSE objective cannot reach useful
    accuracy on the deeper topologies (see README).
    """
    topo = TopologySpec(train_data.dim, widths, train_data.num_classes,
                        Activation(kind, lipschitz))
    cfg = TrainConfig(
        learning_rate=learning_rate,
        epochs=epochs,
        batch_size=batch_size,
        dropout_rate=dropout_rate,
        seed=seed,
        objective=objective,
    )
    return train(initial_network(topo, seed), train_data, cfg).trained


def _run_dropout_study(spec: ExperimentSpec) -> list[dict]:
    p = spec.parameters
    mnist_dir = resolve_mnist_dir(p.get("mnist_dir"))
    train_data = load_mnist("train", mnist_dir)
    test_data = load_mnist("test", mnist_dir)
    limit = p.get("train_limit")
    if limit:
        train_data = train_data.take(np.arange(min(int(limit), len(train_data))))
    n_inputs = int(p.get("inputs", 1000))
    inputs = test_data.inputs[: min(n_inputs, len(test_data))]
    dropout_grid = list(p.get("dropout_grid", DEFAULT_DROPOUT_GRID))
    f_list = list(p.get("f", (1, 2, 3)))
    widths = tuple(p.get("widths", (48,)))
    seed = int(p.get("seed", 0))
    sample_n = p.get("sample")
    if sample_n is None:
        sample_n = 10**4
    save_dir = p.get("save_nets")
    rows = []
    for rate in dropout_grid:
        net = train_dropout_net(
            train_data, rate, widths,
            epochs=int(p.get("epochs", 20)),
            learning_rate=float(p.get("learning_rate", 0.2)),
            batch_size=int(p.get("batch_size", 32)),
            seed=seed,
        )
        if save_dir:
            out = Path(save_dir) / f"dropout_{rate:g}.json"
            dataio.write_network_file(net, out)
        for f in f_list:
            omega = _measure(net, inputs, f, spec, seed, sample_n=sample_n)
            erf = erf_total(net, f)
            rows.append(_row(f"dropout_study[p={rate:g}]", seed, net, f, omega, erf))
    return rows


def xor_dataset() -> LabeledDataset:
    """The 4-point XOR task as a two-class dataset."""
    return LabeledDataset(
        inputs=np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]),
        labels=np.array([0, 1, 1, 0]),
        num_classes=2,
    )


def _run_learning_cost(spec: ExperimentSpec) -> list[dict]:
    p = spec.parameters
    data = xor_dataset()
    widths = tuple(p.get("widths", (4,)))
    kind = p.get("activation", "sigmoid")
    k_grid = list(p.get("k_grid", (0.5, 1.0, 2.0)))
    runs = int(p.get("runs", 2))
    cfg = TrainConfig(
        learning_rate=float(p.get("learning_rate", 0.5)),
        epochs=int(p.get("epochs", 10000)),
        batch_size=int(p.get("batch_size", 4)),
        seed=int(p.get("seed", 0)),
        target_loss=float(p.get("target_loss", 0.05)),
    )
    topo = TopologySpec(data.dim, widths, data.num_classes, Activation(kind, 1.0))
    rows = []
    for r in learning_cost_sweep(topo, data, k_grid, runs, cfg):
        rows.append(
            {
                "experiment": "learning_cost",
                "K": r.lipschitz,
                "runs": runs,
                "mean_epochs": r.mean_epochs,
                "std_epochs": r.std_epochs,
                "censored": r.censored_runs,
            }
        )
    return rows


def _load_net(spec: ExperimentSpec) -> Network:
    path = spec.parameters.get("network")
    if not path:
        raise ValueError("this experiment needs a saved network document")
    return dataio.read_network_file(path)


def _run_erf_report(spec: ExperimentSpec) -> list[dict]:
    net = _load_net(spec)
    f_list = list(spec.parameters.get("f", (1,)))
    return [_row("erf_report", None, net, f, None, erf_total(net, f)) for f in f_list]


def _run_omega_report(spec: ExperimentSpec) -> list[dict]:
    net = _load_net(spec)
    p = spec.parameters
    f_list = list(p.get("f", (1,)))
    n_inputs = int(p.get("inputs", 1000))
    seed = int(p.get("seed", 0))
    # Refuse before materializing any input corpus.
    sample_n = p.get("sample")
    for f in f_list:
        required = required_evaluations(net, f, n_inputs)
        if required > spec.budget and sample_n is None:
            raise BudgetExceededError(required, spec.budget)
    if p.get("images") and p.get("labels"):
        data = dataio.load_idx(p["images"], p["labels"])
        inputs = data.inputs[: min(n_inputs, len(data))]
    else:
        inputs = random_inputs(net.input_dim, n_inputs, seed)
    rows = []
    for f in f_list:
        omega = _measure(net, inputs, f, spec, seed)
        rows.append(_row("omega_report", seed, net, f, omega, None))
    return rows


_RUNNERS = {
    "sweep_k": _run_sweep_k,
    "sweep_scale": _run_sweep_scale,
    "depth_inversion": _run_depth_inversion,
    "dropout_study": _run_dropout_study,
    "learning_cost": _run_learning_cost,
    "erf_report": _run_erf_report,
    "omega_report": _run_omega_report,
}

LEARNING_COST_FIELDS = ("experiment", "K", "runs", "mean_epochs", "std_epochs", "censored")


# ---------------------------------------------------------------------------
# click surface


def _float_list(_ctx, _param, value):
    if value is None:
        return None
    return [float(v) for v in value.split(",") if v != ""]


def _int_list(_ctx, _param, value):
    if value is None:
        return None
    return [int(v) for v in value.split(",") if v != ""]


def _widths_opt(_ctx, _param, value):
    if value is None:
        return None
    return tuple(int(v) for v in value.split("x") if v != "")


def _common_options(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True,
                      help="Base seed for networks, inputs and sampling.")(fn)
    fn = click.option("--workers", type=int, default=1, show_default=True,
                      help="Worker processes; results are worker-count independent.")(fn)
    fn = click.option("--budget", type=int, default=DEFAULT_EVALUATION_BUDGET,
                      show_default=True, help="Max pattern-input evaluations per run.")(fn)
    fn = click.option("--sample", type=int, default=None,
                      help="Sample this many crash patterns when past the budget.")(fn)
    fn = click.option("--norm", type=click.Choice(["max", "mean"]), default="max",
                      show_default=True, help="Aggregate over output components.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv"]), default="csv",
                      show_default=True, help="Output format.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None,
                      help="Output path (default: stdout).")(fn)
    return fn


def _emit(rows: list[dict], out: str | None, fields=None) -> None:
    target = out if out is not None else sys.stdout
    if fields is None:
        dataio.write_results(rows, target)
    else:
        dataio.write_csv(target, fields, [[row[k] for k in fields] for row in rows])


def _execute(spec: ExperimentSpec, out: str | None, fields=None) -> None:
    try:
        rows = run(spec)
    except BudgetExceededError as e:
        click.echo(
            f"refused: {e.required:,} pattern-input evaluations required, "
            f"budget is {e.budget:,}; pass --sample N or raise --budget",
            err=True,
        )
        sys.exit(2)
    except (FileNotFoundError, dataio.IdxParseError, dataio.DocumentError) as e:
        raise click.ClickException(str(e)) from e
    _emit(rows, out, fields)


@click.group()
@click.version_option()
def main():
    """Crash-robustness analysis of feed-forward neural networks."""


@main.command("sweep-k")
@_common_options
@click.option("--seeds", type=int, default=3, show_default=True, help="Number of random networks.")
@click.option("--k-grid", callback=_float_list, default=None,
              help="Comma-separated Lipschitz coefficients.")
@click.option("--f", "f_list", callback=_int_list, default="1,2,3,4", show_default=True,
              help="Comma-separated crash counts.")
@click.option("--activation", type=click.Choice(["relu", "sigmoid"]), default="relu",
              show_default=True)
@click.option("--widths", callback=_widths_opt, default=None, help="Hidden widths, e.g. 4x4x4x4.")
@click.option("--inputs", type=int, default=1000, show_default=True,
              help="Random inputs per network.")
def sweep_k_cmd(seed, workers, budget, sample, norm, fmt, out, seeds, k_grid, f_list,
                activation, widths, inputs):
    """Measured error and bound across activation steepness values."""
    params = {
        "seeds": [seed + i for i in range(seeds)],
        "f": f_list,
        "activation": activation,
        "inputs": inputs,
        "norm": norm,
        "sample": sample,
    }
    if k_grid:
        params["k_grid"] = k_grid
    if widths:
        params["widths"] = widths
    _execute(ExperimentSpec("sweep_k", params, budget=budget, workers=workers), out)


@main.command("sweep-scale")
@_common_options
@click.option("--seeds", type=int, default=3, show_default=True)
@click.option("--scale-grid", callback=_float_list, default=None,
              help="Comma-separated weight scale factors.")
@click.option("--k", type=float, default=1.0, show_default=True)
@click.option("--f", "f_list", callback=_int_list, default="1,2,3,4", show_default=True)
@click.option("--activation", type=click.Choice(["relu", "sigmoid"]), default="relu",
              show_default=True)
@click.option("--widths", callback=_widths_opt, default=None)
@click.option("--inputs", type=int, default=1000, show_default=True)
def sweep_scale_cmd(seed, workers, budget, sample, norm, fmt, out, seeds, scale_grid, k,
                    f_list, activation, widths, inputs):
    """Measured error and bound when all weights are rescaled."""
    params = {
        "seeds": [seed + i for i in range(seeds)],
        "f": f_list,
        "k": k,
        "activation": activation,
        "inputs": inputs,
        "norm": norm,
        "sample": sample,
    }
    if scale_grid:
        params["scale_grid"] = scale_grid
    if widths:
        params["widths"] = widths
    _execute(ExperimentSpec("sweep_scale", params, budget=budget, workers=workers), out)


@main.command("depth-inversion")
@_common_options
@click.option("--seeds", type=int, default=3, show_default=True)
@click.option("--k-grid", callback=_float_list, default=None)
@click.option("--activation", type=click.Choice(["relu", "sigmoid"]), default="sigmoid",
              show_default=True)
@click.option("--widths", callback=_widths_opt, default=None)
@click.option("--inputs", type=int, default=1000, show_default=True)
def depth_inversion_cmd(seed, workers, budget, sample, norm, fmt, out, seeds, k_grid,
                        activation, widths, inputs):
    """Mean single-crash error per layer, showing the depth-effect flip at K=1."""
    params = {
        "seeds": [seed + i for i in range(seeds)],
        "activation": activation,
        "inputs": inputs,
        "norm": norm,
        "sample": sample,
    }
    if k_grid:
        params["k_grid"] = k_grid
    if widths:
        params["widths"] = widths
    _execute(ExperimentSpec("depth_inversion", params, budget=budget, workers=workers), out)


@main.command("dropout-study")
@_common_options
@click.option("--mnist-dir", type=click.Path(file_okay=False), default=None,
              help="Directory with the IDX files (or set MNIST_DIR).")
@click.option("--dropout-grid", callback=_float_list, default=None,
              help="Comma-separated dropout rates.")
@click.option("--f", "f_list", callback=_int_list, default="1,2,3", show_default=True)
@click.option("--widths", callback=_widths_opt, default=None, help="Hidden widths (default 48).")
@click.option("--epochs", type=int, default=20, show_default=True)
@click.option("--learning-rate", type=float, default=0.2, show_default=True)
@click.option("--train-limit", type=int, default=None,
              help="Use at most this many training examples.")
@click.option("--inputs", type=int, default=1000, show_default=True,
              help="Test inputs for the measurement.")
@click.option("--save-nets", type=click.Path(file_okay=False), default=None,
              help="Also write the trained networks to this directory.")
def dropout_study_cmd(seed, workers, budget, sample, norm, fmt, out, mnist_dir,
                      dropout_grid, f_list, widths, epochs, learning_rate, train_limit,
                      inputs, save_nets):
    """Train networks at several dropout rates and measure their robustness."""
    params = {
        "mnist_dir": mnist_dir,
        "f": f_list,
        "seed": seed,
        "epochs": epochs,
        "learning_rate": learning_rate,
        "train_limit": train_limit,
        "inputs": inputs,
        "norm": norm,
        "sample": sample,
        "save_nets": save_nets,
    }
    if dropout_grid is not None:
        params["dropout_grid"] = dropout_grid
    if widths:
        params["widths"] = widths
    _execute(ExperimentSpec("dropout_study", params, budget=budget, workers=workers), out)


@main.command("learning-cost")
@_common_options
@click.option("--k-grid", callback=_float_list, default="0.5,1,2", show_default=True)
@click.option("--runs", type=int, default=2, show_default=True)
@click.option("--epochs", type=int, default=10000, show_default=True, help="Epoch cap.")
@click.option("--target-loss", type=float, default=0.05, show_default=True)
@click.option("--learning-rate", type=float, default=0.5, show_default=True)
def learning_cost_cmd(seed, workers, budget, sample, norm, fmt, out, k_grid, runs,
                      epochs, target_loss, learning_rate):
    """Epochs-to-target statistics on the XOR toy task across steepness values."""
    params = {
        "k_grid": k_grid,
        "runs": runs,
        "seed": seed,
        "epochs": epochs,
        "target_loss": target_loss,
        "learning_rate": learning_rate,
    }
    _execute(ExperimentSpec("learning_cost", params, budget=budget, workers=workers),
             out, fields=LEARNING_COST_FIELDS)


@main.command("erf-report")
@click.argument("network", type=click.Path(exists=True, dir_okay=False))
@_common_options
@click.option("--f", "f_list", callback=_int_list, default="1", show_default=True,
              help="Comma-separated crash counts.")
def erf_report_cmd(network, seed, workers, budget, sample, norm, fmt, out, f_list):
    """Parameter-only error bounds for a saved network document."""
    params = {"network": network, "f": f_list}
    _execute(ExperimentSpec("erf_report", params, budget=budget, workers=workers), out)


@main.command("omega-report")
@click.argument("network", type=click.Path(exists=True, dir_okay=False))
@_common_options
@click.option("--f", "f_list", callback=_int_list, default="1", show_default=True)
@click.option("--inputs", type=int, default=1000, show_default=True,
              help="Input count (random box inputs unless --images/--labels).")
@click.option("--images", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--labels", type=click.Path(exists=True, dir_okay=False), default=None)
def omega_report_cmd(network, seed, workers, budget, sample, norm, fmt, out, f_list,
                     inputs, images, labels):
    """Measured crash error for a saved network document."""
    params = {
        "network": network,
        "f": f_list,
        "inputs": inputs,
        "seed": seed,
        "norm": norm,
        "sample": sample,
        "images": images,
        "labels": labels,
    }
    _execute(ExperimentSpec("omega_report", params, budget=budget, workers=workers), out)


@main.command("gen-net")
@click.option("--widths", callback=_widths_opt, default="4x4x4x4", show_default=True)
@click.option("--input-dim", type=int, default=4, show_default=True)
@click.option("--output-dim", type=int, default=1, show_default=True)
@click.option("--activation", type=click.Choice(["relu", "sigmoid"]), default="relu",
              show_default=True)
@click.option("--k", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def gen_net_cmd(widths, input_dim, output_dim, activation, k, seed, out):
    """Generate a seeded random network and save its document."""
    topo = TopologySpec(input_dim, widths, output_dim, Activation(activation, k))
    dataio.write_network_file(random_network(topo, seed), out)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
