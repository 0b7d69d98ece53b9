"""Input-independent crash-error estimators computed from network parameters.

The central quantity is an upper bound on the output error caused by crashing
f_l neurons in each hidden layer l:

    erf = sum_l  C_l * f_l * K^(L-l) * w(L+1) * prod_{l'=l+1..L} (N_l' - f_l') * w(l')

where C_l caps any layer-l activation over the input box [0,1]^d, K is the
activation's Lipschitz coefficient, and w(l) is a per-layer weight statistic:
the max absolute incoming weight for the worst-case flavour (erf_max) and the
mean absolute incoming weight for the expected-case flavour (erf_av).

Everything here costs a few arithmetic operations per layer, in contrast to
the measurement module which enumerates crash patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .network import Network, PatternError, layer_weight_stats

SIGMOID = "sigmoid"


class UnsupportedNetworkError(ValueError):
    """The requested closed form is not defined for this network."""


def binomial(n: int, k: int) -> int:
    """Exact C(n, k) over arbitrary-precision integers.

    Multiplicative formula; every intermediate division is exact.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial requires 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


@dataclass(frozen=True)
class LayerBounds:
    """Per-layer caps C_1..C_L on any non-crashed neuron's output magnitude."""

    caps: tuple[float, ...]


def layer_output_bounds(net: Network) -> LayerBounds:
    """Caps valid for all inputs in [0,1]^d and all crash patterns.

    Sigmoid outputs live in (0, 1), so every cap is 1.  For relu the caps
    come from interval arithmetic propagated from the input box; hidden
    intervals are widened to include 0 so that upstream crashes (which force
    activations to 0) stay inside the propagated box.
    """
    if net.activation.kind == SIGMOID:
        return LayerBounds(tuple(1.0 for _ in net.layers))
    lo = np.zeros(net.input_dim)
    hi = np.ones(net.input_dim)
    caps = []
    for layer in net.layers:
        w_pos = np.maximum(layer.weights, 0.0)
        w_neg = np.minimum(layer.weights, 0.0)
        s_hi = w_pos @ hi + w_neg @ lo + layer.biases
        a_hi = net.activation.apply(s_hi)
        lo = np.zeros_like(a_hi)
        hi = a_hi
        caps.append(float(hi.max()))
    return LayerBounds(tuple(caps))


@dataclass(frozen=True)
class ErfReport:
    """Both estimator flavours for one fixed per-layer crash allocation."""

    f_per_layer: tuple[int, ...]
    erf_max: float
    erf_av: float
    layer_terms_max: tuple[float, ...]
    layer_terms_av: tuple[float, ...]


def _check_allocation(net: Network, f_per_layer: Sequence[int]) -> tuple[int, ...]:
    f = tuple(int(v) for v in f_per_layer)
    if len(f) != net.depth:
        raise PatternError(f"allocation {f} does not match {net.depth} hidden layers")
    for fl, nl in zip(f, net.widths):
        if fl < 0 or fl > nl:
            raise PatternError(f"allocation {f} exceeds layer widths {net.widths}")
    return f


def erf_fixed(net: Network, f_per_layer: Sequence[int]) -> ErfReport:
    """Evaluate the bound for a fixed allocation (f_1, ..., f_L)."""
    f = _check_allocation(net, f_per_layer)
    stats = layer_weight_stats(net)
    caps = layer_output_bounds(net).caps
    widths = net.widths
    k = net.activation.lipschitz
    depth = net.depth
    terms_max = []
    terms_av = []
    for l in range(1, depth + 1):
        amplify = k ** (depth - l)
        tail_max = stats[depth].w_max
        tail_av = stats[depth].w_mean
        for lp in range(l + 1, depth + 1):
            surviving = widths[lp - 1] - f[lp - 1]
            tail_max *= surviving * stats[lp - 1].w_max
            tail_av *= surviving * stats[lp - 1].w_mean
        terms_max.append(caps[l - 1] * f[l - 1] * amplify * tail_max)
        terms_av.append(caps[l - 1] * f[l - 1] * amplify * tail_av)
    return ErfReport(
        f_per_layer=f,
        erf_max=float(sum(terms_max)),
        erf_av=float(sum(terms_av)),
        layer_terms_max=tuple(terms_max),
        layer_terms_av=tuple(terms_av),
    )


def allocations(widths: Sequence[int], f_total: int) -> Iterator[tuple[int, ...]]:
    """All (f_1..f_L) with 0 <= f_l <= N_l summing to f_total, lexicographic."""
    widths = tuple(widths)

    def rec(prefix: tuple[int, ...], remaining: int, layer: int):
        if layer == len(widths):
            if remaining == 0:
                yield prefix
            return
        tail_room = sum(widths[layer + 1 :])
        lo = max(0, remaining - tail_room)
        hi = min(widths[layer], remaining)
        for fl in range(lo, hi + 1):
            yield from rec(prefix + (fl,), remaining - fl, layer + 1)

    yield from rec((), f_total, 0)


@dataclass(frozen=True)
class ErfTotalReport:
    """Bound for a total crash budget spread over the whole network.

    ``erf_max_worst`` maximizes erf_max over all per-layer allocations of the
    budget; ``erf_av_expected`` weights each allocation's erf_av by the
    multivariate hypergeometric probability that a uniformly random crashed
    subset of that size lands on the allocation.
    """

    f_total: int
    erf_max_worst: float
    erf_av_expected: float
    worst_allocation: tuple[int, ...]


def erf_total(net: Network, f_total: int) -> ErfTotalReport:
    f_total = int(f_total)
    n_hidden = net.hidden_count
    if f_total < 0 or f_total > n_hidden:
        raise PatternError(f"f_total={f_total} outside 0..{n_hidden}")
    widths = net.widths
    denom = binomial(n_hidden, f_total)
    worst = -1.0
    worst_alloc: tuple[int, ...] = ()
    expected = 0.0
    for alloc in allocations(widths, f_total):
        report = erf_fixed(net, alloc)
        weight_num = 1
        for nl, fl in zip(widths, alloc):
            weight_num *= binomial(nl, fl)
        expected += (weight_num / denom) * report.erf_av
        if report.erf_max > worst:
            worst = report.erf_max
            worst_alloc = alloc
    return ErfTotalReport(
        f_total=f_total,
        erf_max_worst=worst,
        erf_av_expected=expected,
        worst_allocation=worst_alloc,
    )


@dataclass(frozen=True)
class RobustnessQuery:
    """Target accuracy ``epsilon`` and the accuracy actually achieved."""

    epsilon: float
    epsilon_prime: float

    def __post_init__(self):
        if not (0.0 <= self.epsilon_prime <= self.epsilon):
            raise ValueError(
                f"need 0 <= epsilon_prime <= epsilon, got {self.epsilon_prime}, {self.epsilon}"
            )


def tolerable_crashes_single_layer(net: Network, query: RobustnessQuery) -> int:
    """Largest crash count a single-layer network absorbs within the margin.

    The margin epsilon - epsilon_prime buys floor(margin / (C * w_av))
    crashes, where C caps the hidden activations and w_av is the mean
    absolute output weight.  When a crash costs nothing the answer is the
    whole layer (or 0 if there is no margin at all).

    The ratio is snapped to the nearest integer when within a relative
    1e-12 before flooring, so float rounding (0.3/0.1 -> 2.999...) cannot
    change the real-valued answer.
    """
    if net.depth != 1:
        raise UnsupportedNetworkError(
            f"closed form needs a single hidden layer, got {net.depth}; use erf_total"
        )
    margin = query.epsilon - query.epsilon_prime
    cap = layer_output_bounds(net).caps[0]
    w_av = layer_weight_stats(net)[1].w_mean
    cost = cap * w_av
    n1 = net.widths[0]
    if cost == 0.0:
        return 0 if margin == 0.0 else n1
    ratio = margin / cost
    if not np.isfinite(ratio) or ratio >= n1:
        return n1
    nearest = round(ratio)
    if nearest > 0 and abs(ratio - nearest) <= 1e-12 * nearest:
        return min(n1, int(nearest))
    return int(ratio // 1.0)
