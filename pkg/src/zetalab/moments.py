"""Second moments of the derivatives of zeta'/zeta, four different ways.

I_k(a,T) is the integral of |(zeta'/zeta)^(k)(1/2 + a/log T + it)|^2 over
t in [1, T].  It is computed

* by direct composite-Simpson quadrature against the Euler-Maclaurin
  engine (``i_k_quadrature``) -- the ground truth;
* from the zero-pair sum with the Poisson-kernel derivative
  (``i_k_from_zeros``);
* from the sampled pair-correlation function (``i_k_from_f``).

D_k(a,T) sums (zeta'/zeta)^(2k) right of each zero (``d_k``), and
``farmer_ratio`` compares I_k(a,T) against 2 pi D_k(2a,T).

The quadrature never touches the zero-sum representation of the
log-derivative, so the quadrature/zero-pair comparison is a genuine
two-sided test rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from .accumulate import exact_sum
from .errors import (DivisionError, DomainError, PrecisionError, RangeError)
from .kernels import KernelSpec, kernel_eval
from .pair_correlation import FGrid, _pair_data
from .zero_catalog import ZeroTable
from .zeta_engine import TWO_PI, ZetaEngine

KINDS = ("I_quadrature", "I_zero_pairs", "I_from_F", "D_discrete")

#: quadrature refinement factor around each zero
REFINE = 16
#: half-width of the refined window around each zero, in units of a/log T
REFINE_WINDOW = 10.0
#: samples per evaluation block; multiple of 4 keeps Simpson parities aligned
_SEGMENT = 1 << 16


@dataclass(frozen=True)
class MomentEstimate:
    """One moment value with its method tag and error estimate."""

    kind: str
    k: int
    a: float
    T: float
    value: float
    err_estimate: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown estimate kind {self.kind!r}")
        if self.kind.startswith("I_") and not self.value >= 0.0:
            raise DomainError(f"{self.kind} produced negative value {self.value}")
        if not (self.err_estimate >= 0.0 and math.isfinite(self.err_estimate)):
            raise DomainError("err_estimate must be finite and nonnegative")


def _check_envelope(k: int, a: float, t: float) -> None:
    """Supported envelope is k <= 4, a in [0.1, 5], T in [200, 6000].

    T below 200 is tolerated for degenerate unit checks; T above 6000 and
    the k/a limits are hard errors (double precision runs out of comfort).
    """
    if not (0 <= k <= 4):
        raise DomainError(f"k={k} outside [0, 4]")
    if not (0.1 <= a <= 5.0):
        raise DomainError(f"a={a} outside [0.1, 5]")
    if not (2.0 <= t <= 6000.0):
        raise DomainError(f"T={t} outside [2, 6000]")


# --------------------------------------------------------------------------
# Direct quadrature
# --------------------------------------------------------------------------

def _refined_panel_mask(n_panels: int, h: float, zeros: np.ndarray,
                        halfwidth: float) -> np.ndarray:
    """Mark base panels of [1, 1+n*h] intersecting any |t-gamma| < halfwidth."""
    mask = np.zeros(n_panels, dtype=bool)
    for g in zeros:
        lo = int(math.floor((g - halfwidth - 1.0) / h))
        hi = int(math.ceil((g + halfwidth - 1.0) / h))
        if hi <= 0 or lo >= n_panels:
            continue
        mask[max(lo, 0):min(hi, n_panels)] = True
    return mask


def _runs_from_mask(mask: np.ndarray) -> list[tuple[int, int, bool]]:
    """Maximal (start_panel, end_panel, refined) runs."""
    runs = []
    start = 0
    for i in range(1, mask.size + 1):
        if i == mask.size or mask[i] != mask[start]:
            runs.append((start, i, bool(mask[start])))
            start = i
    return runs


def _simpson_weights(n_samples: int) -> np.ndarray:
    """Composite Simpson weights (without the step/3 factor) for odd n."""
    w = np.full(n_samples, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w


def i_k_quadrature_batch(ks: list[int], a: float, t: float, engine: ZetaEngine,
                         zeros: ZeroTable) -> list[MomentEstimate]:
    """All requested orders from one sweep of the integration grid.

    The grid has base Simpson step h0 = min(0.01, a/(4 log T)) and is
    refined 16x on |t - gamma| < 10a/log T (the zero table only places the
    mesh; no zero-sum values enter).  The sweep is evaluated once at double
    resolution; the base-resolution rule and its halved companion are
    assembled from the same samples and their difference is the error
    estimate.  Splitting the sweep at even sample indices reproduces the
    composite rule exactly, so blocks can be streamed.
    """
    ks = list(ks)
    for k in ks:
        _check_envelope(k, a, t)
    zeros.require_coverage(t)
    log_t = math.log(t)
    sigma = 0.5 + a / log_t
    h0 = min(0.01, a / (4.0 * log_t))
    n_panels = int(math.ceil((t - 1.0) / h0))
    h = (t - 1.0) / n_panels
    gam = zeros.ordinates[zeros.ordinates <= t]
    mask = _refined_panel_mask(n_panels, h, gam, REFINE_WINDOW * a / log_t)

    kmax = max(ks)
    fine_parts = {k: [] for k in ks}
    coarse_parts = {k: [] for k in ks}
    for start, end, refined in _runs_from_mask(mask):
        factor = REFINE if refined else 1
        delta = h / (4.0 * factor)          # doubled-resolution sampling step
        total = (end - start) * 4 * factor  # sample intervals in this run
        t0 = 1.0 + start * h
        for s0 in range(0, total, _SEGMENT):
            s1 = min(s0 + _SEGMENT, total)
            count = s1 - s0 + 1
            vals, _ = engine.log_deriv_uniform(sigma, t0 + s0 * delta, delta,
                                               count, kmax)
            sq = np.abs(vals) ** 2
            w_fine = _simpson_weights(count)
            w_coarse = _simpson_weights((count - 1) // 2 + 1)
            for k in ks:
                col = sq[:, k]
                fine_parts[k].append(float(np.dot(w_fine, col)) * delta / 3.0)
                coarse_parts[k].append(
                    float(np.dot(w_coarse, col[::2])) * (2.0 * delta) / 3.0)

    out = []
    for k in ks:
        fine = exact_sum(fine_parts[k])
        coarse = exact_sum(coarse_parts[k])
        if abs(fine - coarse) > 0.05 * abs(fine):
            raise PrecisionError(
                f"step-halving disagreement {abs(fine - coarse):.3e} exceeds "
                f"5% of I_{k}({a},{t})")
        # halving cannot see systematics tied to the refinement-window
        # layout (both rules share it), so floor the estimate at 1e-9 rel
        err = max(abs(fine - coarse), 1e-9 * abs(coarse))
        out.append(MomentEstimate("I_quadrature", k, a, t, coarse, err))
    return out


def i_k_quadrature(k: int, a: float, t: float, engine: ZetaEngine,
                   zeros: ZeroTable) -> MomentEstimate:
    """Composite-Simpson second moment of (zeta'/zeta)^(k) on [1, T]."""
    return i_k_quadrature_batch([k], a, t, engine, zeros)[0]


# --------------------------------------------------------------------------
# Zero-pair sum
# --------------------------------------------------------------------------

def i_k_from_zeros(k: int, a: float, t: float, zeros: ZeroTable) -> MomentEstimate:
    """Second moment from the Poisson-kernel pair sum over zero ordinates.

    value = (-1)^k / (2^2k pi^2k) * (log T)^(2k+1)
            * sum_{g,g'} (h_{a/pi})^(2k)((g-g') log T / 2 pi) w(g-g').

    The error channel carries the analytic remainder scale
    T (log T)^(2k+1) / a^(2k-1) + (log T)^(2k+4) / a^(2k+2) with unit
    constant, reported alongside rather than added to the value.
    """
    _check_envelope(k, a, t)
    zeros.require_coverage(t)
    n, diffs, weights = _pair_data(zeros, t)
    log_t = math.log(t)
    spec = KernelSpec("h", a / math.pi, 2 * k)
    total = n * kernel_eval(spec, 0.0)  # diagonal; w(0) = 1
    if diffs.size:
        total += 2.0 * float(np.dot(weights, kernel_eval(spec, diffs * (log_t / TWO_PI))))
    pref = (-1.0) ** k / (2.0 ** (2 * k) * math.pi ** (2 * k)) * log_t ** (2 * k + 1)
    value = pref * total
    err = (t * log_t ** (2 * k + 1) / a ** (2 * k - 1)
           + log_t ** (2 * k + 4) / a ** (2 * k + 2))
    return MomentEstimate("I_zero_pairs", k, a, t, value, err)


# --------------------------------------------------------------------------
# Pair-correlation integral
# --------------------------------------------------------------------------

def weight_alpha_max(k: int, a: float, rel: float = 1e-8) -> float:
    """Alpha where alpha^2k e^(-2a alpha) falls to `rel` of its maximum."""
    peak = k / a if k > 0 else 0.0
    peak_val = (peak ** (2 * k) if k else 1.0) * math.exp(-2 * a * peak)
    alpha = max(peak + 1.0, 4.0)
    while (alpha ** (2 * k)) * math.exp(-2 * a * alpha) > rel * peak_val:
        alpha *= 1.25
    return alpha


def i_k_from_f(k: int, a: float, t: float, grid: FGrid) -> MomentEstimate:
    """Second moment as T (log T)^(2k+2) int_0^amax alpha^2k e^(-2a alpha) F.

    Evenness of F folds the two-sided integral onto [0, infinity); the
    sampled grid is integrated by the trapezoid rule.  The error estimate
    combines the trapezoid step-doubling difference with the truncated-tail
    bound (F frozen at its last sampled value beyond the grid).
    """
    _check_envelope(k, a, t)
    if grid.T != t:
        raise DomainError(f"grid was sampled at T={grid.T}, not {t}")
    if grid.alpha_max < 4.0:
        raise RangeError(
            f"F grid reaches only alpha={grid.alpha_max}; need at least 4")
    alphas = grid.alphas
    vals = grid.values
    log_t = math.log(t)
    weight = alphas ** (2 * k) * np.exp(-2.0 * a * alphas)
    integrand = weight * vals
    integral = float(np.trapezoid(integrand, alphas))
    half = float(np.trapezoid(integrand[::2], alphas[::2]))
    x = 2.0 * a * grid.alpha_max
    tail = (math.gamma(2 * k + 1) / (2.0 * a) ** (2 * k + 1)
            * float(gammaincc(2 * k + 1, x)) * float(vals[-1]))
    pref = t * log_t ** (2 * k + 2)
    value = pref * integral
    err = pref * (abs(integral - half) + tail)
    return MomentEstimate("I_from_F", k, a, t, value, err)


# --------------------------------------------------------------------------
# Discrete moment and the moment/discrete-moment relation
# --------------------------------------------------------------------------

def d_k(k: int, a: float, t: float, zeros: ZeroTable,
        engine: ZetaEngine) -> MomentEstimate:
    """D_k(a,T): sum over gamma <= T of (zeta'/zeta)^(2k) at 1/2+a/logT+i gamma.

    The summand is complex; the real part is the estimate and the imaginary
    part (plus the propagated evaluation error) lands in the error channel
    as a sanity signal.
    """
    _check_envelope(k, a, t)
    zeros.require_coverage(t)
    g = zeros.ordinates[zeros.ordinates <= t]
    if g.size == 0:
        return MomentEstimate("D_discrete", k, a, t, 0.0, 0.0)
    log_t = math.log(t)
    sigma = 0.5 + a / log_t
    vals, eval_err = engine.log_deriv_line(sigma, g, 2 * k)
    total = complex(np.sum(vals[:, 2 * k]))
    err = abs(total.imag) + eval_err * g.size
    return MomentEstimate("D_discrete", k, a, t, total.real, err)


def _ratio_of(i_est: MomentEstimate, d_est: MomentEstimate) -> float:
    denom = TWO_PI * d_est.value
    if abs(denom) <= TWO_PI * d_est.err_estimate:
        raise DivisionError(
            f"2 pi D_k = {denom:.3e} indistinguishable from zero "
            f"(err {TWO_PI * d_est.err_estimate:.3e})")
    return i_est.value / denom


def farmer_ratio(k: int, a: float, t: float, zeros: ZeroTable,
                 engine: ZetaEngine) -> float:
    """I_k(a,T) / (2 pi D_k(2a,T)); near 1 when the discrete relation holds."""
    i_est = i_k_quadrature(k, a, t, engine, zeros)
    d_est = d_k(k, 2.0 * a, t, zeros, engine)
    return _ratio_of(i_est, d_est)
