"""Two-sided channel-capacity solver.

Alternating maximization from the uniform input distribution. At every
step the achieved mutual information of the current distribution is a
certified lower estimate of capacity, and the largest single-input
divergence from the induced output distribution is a certified upper
estimate, so the returned bracket contains the true capacity no matter
where the iteration stops. All internal work is in nats; results are
converted to bits at the boundary.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

LN2 = math.log(2.0)
DEFAULT_TOLERANCE = 5e-3
DEFAULT_MAX_ITERATIONS = 20000

# probabilities below this are treated as zero inside logarithms
_FLOOR = 1e-300


@dataclass(frozen=True)
class BaaResult:
    """Capacity bracket in bits per channel use, plus the final input law."""

    capacity_lower: float
    capacity_upper: float
    input_distribution: np.ndarray
    iterations: int
    tolerance_achieved: float
    converged: bool


def _divergences(channel, dist):
    """KL(P(.|x) || q) in nats for every x, with q induced by dist."""
    q = channel._matrix_t @ dist
    log_q = np.log(np.maximum(q, _FLOOR))
    return channel._row_plogp - channel._matrix @ log_q


def solve_capacity(channel, tolerance=DEFAULT_TOLERANCE,
                   max_iterations=DEFAULT_MAX_ITERATIONS, on_iteration=None):
    """Bracket the capacity of a SparseChannel to the given width in bits.

    Deterministic: identical inputs give a bit-identical result. Slow
    convergence never raises; the partial bracket comes back flagged with
    converged=False and callers decide how to propagate that.
    on_iteration(iteration, lower_bits, upper_bits) is invoked once per
    step when supplied, mainly so tests can watch monotonicity.
    """
    if tolerance <= 0.0:
        raise ParameterError("tolerance must be positive")
    if max_iterations < 1:
        raise ParameterError("max_iterations must be at least 1")
    n = channel.input_count
    tol_nats = tolerance * LN2
    log_r = np.zeros(n)
    lower = upper = math.nan
    r = None
    for it in range(1, max_iterations + 1):
        w = np.exp(log_r - log_r.max())
        r = w / w.sum()
        div = _divergences(channel, r)
        lower = float(r @ div)
        upper = float(div.max())
        if upper < lower:  # max >= mean up to rounding noise; keep the order
            upper = lower
        if on_iteration is not None:
            on_iteration(it, lower / LN2, upper / LN2)
        if upper - lower <= tol_nats:
            return BaaResult(lower / LN2, upper / LN2, r, it,
                             (upper - lower) / LN2, True)
        log_r += div
        log_r -= log_r.max()
    return BaaResult(lower / LN2, upper / LN2, r, max_iterations,
                     (upper - lower) / LN2, False)


def mutual_information(channel, input_distribution):
    """I(X;Y) in bits for a given input law, with 0 log 0 = 0."""
    dist = np.asarray(input_distribution, dtype=np.float64)
    if dist.shape != (channel.input_count,):
        raise ParameterError(
            f"distribution has shape {dist.shape}, channel has"
            f" {channel.input_count} inputs")
    if np.any(dist < 0.0):
        raise ParameterError("distribution entries must be non-negative")
    if abs(float(dist.sum()) - 1.0) > 1e-9:
        raise ParameterError("distribution must sum to 1 within 1e-9")
    return float(dist @ _divergences(channel, dist)) / LN2
