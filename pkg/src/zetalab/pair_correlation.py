"""Pair statistics of the zero ordinates: F(alpha,T), pair counts, GUE.

F(alpha,T) = (2 pi / (T log T)) * sum_{0<g,g'<=T} T^{i alpha (g-g')} w(g-g')
with w(u) = 4/(4+u^2).  The double sum is folded onto ordered pairs with
positive difference (the summand is conjugate-symmetric, so F is real and
even in alpha) and truncated at |g-g'| > cutoff where the weight makes the
remainder negligible; the brute-force oracle in the tests validates the
truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .accumulate import exact_sum, parallel_map
from .errors import DomainError, RangeError
from .zero_catalog import ZeroTable

WEIGHT_ID = "w(u)=4/(4+u²)"


def pair_weight(u):
    """Montgomery's weight w(u) = 4 / (4 + u^2)."""
    u = np.asarray(u, dtype=float)
    return 4.0 / (4.0 + u * u)


def pair_cutoff(t: float) -> float:
    """Truncation distance for the pair double sums."""
    return max(200.0, t / 10.0)


@dataclass(frozen=True)
class FGrid:
    """Samples of F(alpha, T) on an increasing alpha grid at fixed T."""

    T: float
    alphas: np.ndarray
    values: np.ndarray
    weight_id: str = WEIGHT_ID

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "values", v)
        if a.shape != v.shape:
            raise DomainError("alphas and values must have matching shapes")
        if a.size and np.any(np.diff(a) <= 0):
            raise DomainError("alphas must be strictly increasing")
        if v.size and float(np.min(v)) < -1e-9:
            raise DomainError(
                f"F grid value {float(np.min(v))} below -1e-9; "
                "the weighted pair sum must stay nonnegative")

    @property
    def alpha_max(self) -> float:
        return float(self.alphas[-1]) if self.alphas.size else 0.0


def _pair_data(zeros: ZeroTable, t: float) -> tuple[int, np.ndarray, np.ndarray]:
    """(zero count, positive pair differences within cutoff, their weights).

    Cached on the (immutable) table, keyed by T.
    """
    key = ("pairs", float(t))
    hit = zeros._pair_cache.get(key)
    if hit is not None:
        return hit
    g = zeros.ordinates[zeros.ordinates <= t]
    n = g.size
    cutoff = pair_cutoff(t)
    lo = np.searchsorted(g, g - cutoff, side="left")
    blocks = []
    for i in range(n):
        if lo[i] < i:
            blocks.append(g[i] - g[lo[i]:i])
    diffs = np.concatenate(blocks) if blocks else np.empty(0)
    weights = pair_weight(diffs)
    zeros._pair_cache[key] = (n, diffs, weights)
    return n, diffs, weights


def f_alpha(zeros: ZeroTable, t: float, alpha: float) -> float:
    """Montgomery's F(alpha, T) from the zero table."""
    if t < 50.0:
        raise DomainError("f_alpha requires T >= 50")
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    zeros.require_coverage(t)
    n, diffs, weights = _pair_data(zeros, t)
    log_t = math.log(t)
    # diagonal (g = g') contributes n * w(0); each off-diagonal pair twice
    off = 2.0 * float(np.dot(weights, np.cos(alpha * log_t * diffs)))
    return (2.0 * math.pi / (t * log_t)) * (n + off)


def f_grid(zeros: ZeroTable, t: float, alpha_max: float, step: float,
           threads: int = 1) -> FGrid:
    """Sample F on {0, step, ..., alpha_max}."""
    if step <= 0:
        raise DomainError("step must be positive")
    if alpha_max > 8.0:
        raise DomainError("alpha_max above 8 is out of scope")
    if alpha_max < 0:
        raise DomainError("alpha_max must be nonnegative")
    zeros.require_coverage(t)
    count = int(round(alpha_max / step)) + 1
    alphas = step * np.arange(count)
    if alphas.size and alphas[-1] > alpha_max + 1e-12:
        alphas = alphas[alphas <= alpha_max + 1e-12]
    n, diffs, weights = _pair_data(zeros, t)
    log_t = math.log(t)
    pref = 2.0 * math.pi / (t * log_t)

    def one(alpha: float) -> float:
        off = 2.0 * float(np.dot(weights, np.cos(alpha * log_t * diffs)))
        return pref * (n + off)

    values = np.array(parallel_map(one, list(alphas), threads))
    return FGrid(t, alphas, values)


def f_window_integral(grid: FGrid, b: float, ell: float) -> float:
    """Trapezoid integral of F over [b, b+ell] on the sampled grid.

    The window endpoints are linearly interpolated when they fall between
    grid nodes.
    """
    if ell <= 0:
        raise RangeError("window length must be positive")
    if b < 0:
        raise RangeError("window start must be nonnegative")
    hi = b + ell
    if hi > grid.alpha_max + 1e-12:
        raise RangeError(
            f"window [{b}, {hi}] exceeds the grid (alpha_max={grid.alpha_max})")
    xs = grid.alphas
    ys = grid.values
    inner = (xs > b) & (xs < hi)
    points = np.concatenate(([b], xs[inner], [hi]))
    vals = np.concatenate((
        [float(np.interp(b, xs, ys))],
        ys[inner],
        [float(np.interp(hi, xs, ys))],
    ))
    return float(np.trapezoid(vals, points))


def pair_count(zeros: ZeroTable, t: float, beta: float) -> int:
    """N(beta, T): ordered pairs with 0 < g - g' <= 2 pi beta / log T."""
    if beta <= 0:
        return 0
    zeros.require_coverage(t)
    g = zeros.ordinates[zeros.ordinates <= t]
    spacing = 2.0 * math.pi * beta / math.log(t)
    lo = np.searchsorted(g, g - spacing, side="left")
    return int(np.sum(np.arange(g.size) - lo))


def gue_integral(beta: float) -> float:
    """int_0^beta { 1 - (sin pi u / pi u)^2 } du to 1e-9 absolute.

    Integrated per unit panel so the oscillatory integrand never starves
    the adaptive rule; the u=0 singularity is removable (integrand -> 0).
    """
    if beta < 0:
        raise DomainError("beta must be nonnegative")
    if beta == 0:
        return 0.0
    integrand = lambda u: 1.0 - float(np.sinc(u)) ** 2
    edges = np.arange(0.0, math.floor(beta) + 1.0)
    panels = [(a, a + 1.0) for a in edges[:-1]] if edges.size > 1 else []
    if edges.size == 0 or edges[-1] < beta:
        panels.append((float(edges[-1]) if edges.size else 0.0, beta))
    parts = [quad(integrand, a, b, epsabs=1e-12, limit=200)[0] for a, b in panels]
    return exact_sum(parts)


def montgomery_asymptotic(alpha: float, t: float) -> float:
    """Small-alpha model T^{-2|alpha|} log T + |alpha| (o(1) factor dropped).

    Only uniform on |alpha| <= 1; out-of-range requests are rejected.
    """
    if abs(alpha) > 1.0:
        raise DomainError("the asymptotic holds only for |alpha| <= 1")
    if t < 50.0:
        raise DomainError("requires T >= 50")
    a = abs(alpha)
    return t ** (-2.0 * a) * math.log(t) + a
