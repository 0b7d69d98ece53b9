"""Measured crash error: exhaustive and sampled pattern enumeration.

Where the estimator module bounds the crash error from network constants,
this module measures it: for a crash pattern P and input X the pointwise
error is

    omega(X, P) = aggregate_k | nominal_output_k(X) - failed_output_k(X) |

(max over output components by default, mean optionally).  Aggregating over
patterns of a fixed size f and over an input corpus gives

    omega_av   mean over pattern x input
    omega_mav  mean over inputs of the per-input max over patterns
    omega_max  global max

Exhaustive enumeration walks all C(N, f) subsets of the N hidden neurons in
lexicographic order; a guard refuses up front when patterns x inputs exceeds
the evaluation budget, reporting the exact required count as a big integer.
The seeded sampler is the escape hatch past the budget.

The reduction is engineered to be independent of the worker count: patterns
are processed in fixed-size index chunks, per-input sums use compensated
(Kahan) accumulation inside each chunk, and chunk results are merged in chunk
order.  The same chunked code path runs for 1 worker and for a process pool,
so reports are bit-identical across worker counts.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .estimator import UnsupportedNetworkError, binomial
from .network import (
    CrashPattern,
    Network,
    PatternError,
    forward,
    forward_batch_traced,
    forward_failed,
    forward_failed_batch,
    validate_pattern,
)
from .rng import philox

DEFAULT_EVALUATION_BUDGET = 10**8
_CHUNK_PATTERNS = 1024

NORM_MAX = "max"
NORM_MEAN = "mean"


class BudgetExceededError(RuntimeError):
    """Enumeration would exceed the evaluation budget; carries the exact count."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"exhaustive enumeration needs {required} pattern-input evaluations, "
            f"over the budget of {budget}; sample instead or raise the budget"
        )


@dataclass(frozen=True)
class OmegaReport:
    """Aggregated measured error for one crash-count f."""

    f_total: int
    omega_av: float
    omega_mav: float
    omega_max: float
    std_dev: float
    std_err: float
    patterns_evaluated: int
    inputs_evaluated: int
    mode: str  # "exhaustive" | "sampled"
    seed: int | None = None
    n_samples: int | None = None


def omega_point(net: Network, x, pattern: CrashPattern, norm: str = NORM_MAX) -> float:
    """Pointwise error for one input and one crash pattern."""
    nominal = forward(net, x).output
    failed = forward_failed(net, x, pattern)
    diff = np.abs(nominal - failed)
    return float(diff.max()) if norm == NORM_MAX else float(diff.mean())


def _check_inputs(net: Network, inputs) -> np.ndarray:
    X = np.asarray(inputs, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.input_dim:
        raise PatternError(
            f"inputs must have shape (n, {net.input_dim}), got {X.shape}"
        )
    if X.shape[0] == 0:
        raise PatternError("need at least one input")
    return X


# ---------------------------------------------------------------------------
# Chunked deterministic reduction


class _EvalContext:
    """Per-process evaluation state: network, inputs, cached nominal trace."""

    def __init__(self, net: Network, X: np.ndarray, norm: str):
        self.net = net
        self.X = X
        self.norm = norm
        self.pres, self.acts, self.nominal_out = forward_batch_traced(net, X)
        self.cum_widths = np.cumsum(net.widths)

    def split_pattern(self, global_idx: np.ndarray) -> list[tuple[int, np.ndarray]]:
        """Sorted global hidden indices -> [(1-based layer, 0-based indices)]."""
        if global_idx.size == 0:
            return []
        layers = np.searchsorted(self.cum_widths, global_idx, side="right")
        result = []
        for layer in np.unique(layers):
            sel = global_idx[layers == layer]
            offset = 0 if layer == 0 else int(self.cum_widths[layer - 1])
            result.append((int(layer) + 1, sel - offset))
        return result

    def eval_chunk(self, patterns: np.ndarray):
        """Aggregate one chunk of patterns, shape (m, f).

        Returns per-input compensated sums of omega and omega^2, the
        per-input max, and the pattern count.  Patterns are processed in row
        order with Kahan accumulation, so the result is a pure function of
        the chunk contents.
        """
        n = self.X.shape[0]
        s = np.zeros(n)
        c = np.zeros(n)
        s2 = np.zeros(n)
        c2 = np.zeros(n)
        mx = np.zeros(n)
        for row in patterns:
            failed = forward_failed_batch(
                self.net, self.split_pattern(row), self.pres, self.acts
            )
            diff = np.abs(self.nominal_out - failed)
            om = diff.max(axis=1) if self.norm == NORM_MAX else diff.mean(axis=1)
            _kahan_add(s, c, om)
            _kahan_add(s2, c2, om * om)
            np.maximum(mx, om, out=mx)
        return s + c, s2 + c2, mx, len(patterns)


def _kahan_add(s: np.ndarray, c: np.ndarray, x: np.ndarray) -> None:
    y = x - c
    t = s + y
    np.subtract(np.subtract(t, s), y, out=c)
    s[:] = t


_WORKER_CTX: _EvalContext | None = None


def _worker_init(net: Network, X: np.ndarray, norm: str) -> None:
    global _WORKER_CTX
    _WORKER_CTX = _EvalContext(net, X, norm)


def _worker_eval(patterns: np.ndarray):
    assert _WORKER_CTX is not None
    return _WORKER_CTX.eval_chunk(patterns)


def _chunked(pattern_rows: Iterable[Sequence[int]], f: int) -> Iterator[np.ndarray]:
    """Group pattern rows into fixed-size arrays; boundaries depend only on
    the enumeration order, never on the worker count."""
    block: list[Sequence[int]] = []
    for row in pattern_rows:
        block.append(row)
        if len(block) == _CHUNK_PATTERNS:
            yield np.asarray(block, dtype=np.int64).reshape(len(block), f)
            block = []
    if block:
        yield np.asarray(block, dtype=np.int64).reshape(len(block), f)


def _reduce_patterns(
    net: Network,
    X: np.ndarray,
    pattern_rows: Iterable[Sequence[int]],
    f: int,
    norm: str,
    workers: int,
):
    """Run the chunked reduction and merge chunk results in chunk order."""
    n = X.shape[0]
    total_s = np.zeros(n)
    total_c = np.zeros(n)
    total_s2 = np.zeros(n)
    total_c2 = np.zeros(n)
    total_mx = np.zeros(n)
    count = 0
    chunks = _chunked(pattern_rows, f)
    if workers <= 1:
        results = map(_EvalContext(net, X, norm).eval_chunk, chunks)
        for s, s2, mx, m in results:
            _kahan_add(total_s, total_c, s)
            _kahan_add(total_s2, total_c2, s2)
            np.maximum(total_mx, mx, out=total_mx)
            count += m
    else:
        with multiprocessing.Pool(
            processes=workers, initializer=_worker_init, initargs=(net, X, norm)
        ) as pool:
            for s, s2, mx, m in pool.imap(_worker_eval, chunks):
                _kahan_add(total_s, total_c, s)
                _kahan_add(total_s2, total_c2, s2)
                np.maximum(total_mx, mx, out=total_mx)
                count += m
    return total_s + total_c, total_s2 + total_c2, total_mx, count


def _finalize(
    f_total: int,
    sums: np.ndarray,
    sq_sums: np.ndarray,
    maxes: np.ndarray,
    n_patterns: int,
    mode: str,
    seed: int | None = None,
    n_samples: int | None = None,
) -> OmegaReport:
    n_inputs = sums.shape[0]
    total = n_patterns * n_inputs
    grand_sum = _kahan_total(sums)
    grand_sq = _kahan_total(sq_sums)
    omega_av = grand_sum / total
    variance = max(0.0, grand_sq / total - omega_av * omega_av)
    std_dev = float(np.sqrt(variance))
    std_err = std_dev / float(np.sqrt(total)) if mode == "sampled" else 0.0
    return OmegaReport(
        f_total=f_total,
        omega_av=float(omega_av),
        omega_mav=float(_kahan_total(maxes) / n_inputs),
        omega_max=float(maxes.max()),
        std_dev=std_dev,
        std_err=float(std_err),
        patterns_evaluated=n_patterns,
        inputs_evaluated=n_inputs,
        mode=mode,
        seed=seed,
        n_samples=n_samples,
    )


def _kahan_total(values: np.ndarray) -> float:
    s = 0.0
    c = 0.0
    for x in values:
        y = x - c
        t = s + y
        c = (t - s) - y
        s = t
    return s + c


# ---------------------------------------------------------------------------
# Public entry points


def required_evaluations(net: Network, f_total: int, n_inputs: int) -> int:
    """Exact pattern-input evaluation count of an exhaustive run (big integer)."""
    return binomial(net.hidden_count, f_total) * n_inputs


def omega_exhaustive(
    net: Network,
    inputs,
    f_total: int,
    *,
    norm: str = NORM_MAX,
    workers: int = 1,
    budget: int | None = DEFAULT_EVALUATION_BUDGET,
) -> OmegaReport:
    """Aggregate the error over ALL crash subsets of size f_total.

    Subsets span every hidden neuron jointly (not per-layer budgets) and are
    enumerated in lexicographic order.  Refuses before evaluating anything if
    patterns x inputs exceeds ``budget``.
    """
    X = _check_inputs(net, inputs)
    f_total = int(f_total)
    n_hidden = net.hidden_count
    if f_total < 0 or f_total > n_hidden:
        raise PatternError(f"f_total={f_total} outside 0..{n_hidden}")
    if budget is not None:
        required = required_evaluations(net, f_total, X.shape[0])
        if required > budget:
            raise BudgetExceededError(required, budget)
    rows = itertools.combinations(range(n_hidden), f_total)
    sums, sq_sums, maxes, count = _reduce_patterns(net, X, rows, f_total, norm, workers)
    return _finalize(f_total, sums, sq_sums, maxes, count, mode="exhaustive")


def sample_patterns(
    n_hidden: int, f_total: int, n_samples: int, seed: int
) -> np.ndarray:
    """Draw crash subsets uniformly; each draw is a partial Fisher-Yates.

    Independent draws, so the same subset can recur across rows.  Rows are
    sorted; the array has shape (n_samples, f_total).
    """
    gen = philox(seed)
    out = np.empty((n_samples, f_total), dtype=np.int64)
    pool = np.arange(n_hidden, dtype=np.int64)
    for r in range(n_samples):
        arr = pool.copy()
        for i in range(f_total):
            j = int(gen.integers(i, n_hidden))
            arr[i], arr[j] = arr[j], arr[i]
        out[r] = np.sort(arr[:f_total])
    return out


def omega_sampled(
    net: Network,
    inputs,
    f_total: int,
    n_samples: int,
    seed: int,
    *,
    norm: str = NORM_MAX,
    workers: int = 1,
) -> OmegaReport:
    """Monte-Carlo stand-in for omega_exhaustive past the budget.

    Falls back to the exhaustive report when n_samples covers the whole
    subset space.  Bit-reproducible for a given seed and independent of the
    worker count (patterns are drawn serially up front, then reduced through
    the same chunked engine).
    """
    X = _check_inputs(net, inputs)
    f_total = int(f_total)
    n_hidden = net.hidden_count
    if f_total < 0 or f_total > n_hidden:
        raise PatternError(f"f_total={f_total} outside 0..{n_hidden}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if n_samples >= binomial(n_hidden, f_total):
        return omega_exhaustive(
            net, X, f_total, norm=norm, workers=workers, budget=None
        )
    rows = sample_patterns(n_hidden, f_total, n_samples, seed)
    sums, sq_sums, maxes, count = _reduce_patterns(net, X, rows, f_total, norm, workers)
    return _finalize(
        f_total, sums, sq_sums, maxes, count,
        mode="sampled", seed=seed, n_samples=n_samples,
    )


def omega_patterns(
    net: Network,
    inputs,
    patterns: Sequence[CrashPattern],
    *,
    norm: str = NORM_MAX,
    workers: int = 1,
) -> OmegaReport:
    """Aggregate over an explicit pattern list (all of one size).

    Used for restricted enumerations such as per-layer single-crash averages.
    """
    X = _check_inputs(net, inputs)
    if not patterns:
        raise PatternError("need at least one pattern")
    sizes = {p.size for p in patterns}
    if len(sizes) != 1:
        raise PatternError(f"patterns must share one size, got sizes {sorted(sizes)}")
    f_total = sizes.pop()
    offsets = np.concatenate([[0], np.cumsum(net.widths)[:-1]])
    rows = []
    for p in patterns:
        validate_pattern(net, p)
        rows.append(sorted(offsets[l - 1] + (j - 1) for l, j in p.crashed))
    sums, sq_sums, maxes, count = _reduce_patterns(net, X, rows, f_total, norm, workers)
    return _finalize(f_total, sums, sq_sums, maxes, count, mode="exhaustive")


def single_layer_expected_exact(net: Network, f_total: int, inputs) -> float:
    """Exact expected mean error of a single-layer, nonnegative-weight network.

    With nonnegative output weights and nonnegative activations the crash
    deviation loses its absolute value, so the expectation over uniformly
    random size-f crashed subsets collapses to

        (f_total / N_1) * sum_i w_i * mean_X y_i(X)

    which omega_exhaustive(...).omega_av must reproduce to within float
    rounding.
    """
    if net.depth != 1:
        raise UnsupportedNetworkError(
            f"closed form needs a single hidden layer, got {net.depth}"
        )
    if net.output_dim != 1:
        raise UnsupportedNetworkError(
            f"closed form is defined for a scalar output, got {net.output_dim}"
        )
    w = net.output_weights[0]
    if np.any(w < 0):
        raise UnsupportedNetworkError("closed form needs all output weights >= 0")
    f_total = int(f_total)
    n1 = net.widths[0]
    if f_total < 0 or f_total > n1:
        raise PatternError(f"f_total={f_total} outside 0..{n1}")
    X = _check_inputs(net, inputs)
    _, acts, _ = forward_batch_traced(net, X)
    mean_y = acts[0].mean(axis=0)
    return float((f_total / n1) * (w @ mean_y))
