"""Admissibility of scaling parameters and convergence diagnostics.

The random-integral construction of an additive dilatively stable process
converges under sufficient conditions that split by the sign of delta:

  condition_a      delta > 0 and alpha > delta/2; no moment condition.
  condition_b      delta < 0 and alpha > -delta/2, together with a finite
                   absolute moment of some order gamma > -delta/(alpha +
                   delta/2) for the compensated driver segments.  The moment
                   requirement is certified analytically from the driver's
                   maximal finite moment order; only the sufficient condition
                   is enforced, because a sharp boundary criterion is not
                   available in this regime.
  selfsimilar      delta = 0 and alpha > 0 with a finite log moment; the
                   process is then alpha-selfsimilar.
  degenerate_equal delta > 0 and alpha = delta/2; the process is a pure
                   deterministic time change of the driver and is simulated
                   directly rather than through the integral.

Everything else is inadmissible.  The cascade partial sums implement the
series criterion behind the moment condition: with E|X|**(1/beta) finite,
S_k = sum_{j<=k} a**(-j*beta) * sum_{l <= a**j * b} |X_l| converges, and the
level gaps S_k - S_{k-1} shrink geometrically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drivers import has_finite_log_moment, max_moment_order
from .errors import NotEnoughSamples, WrongRegime

__all__ = [
    "CONDITION_A",
    "CONDITION_B",
    "SELFSIMILAR",
    "DEGENERATE_EQUAL",
    "INADMISSIBLE",
    "AdmissibilityVerdict",
    "admissibility",
    "required_moment_order",
    "cascade_partial_sums",
]

CONDITION_A = "condition_a"
CONDITION_B = "condition_b"
SELFSIMILAR = "selfsimilar"
DEGENERATE_EQUAL = "degenerate_equal"
INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the admissibility check.

    gamma is the certified moment order used in the delta < 0 regime
    (midpoint of the open interval of workable orders); required_gamma is the
    lower endpoint of that interval.  reason is set only when inadmissible.
    """

    status: str
    gamma: float | None = None
    required_gamma: float | None = None
    reason: str | None = None

    @property
    def admissible(self):
        return self.status != INADMISSIBLE


def required_moment_order(params):
    """Lower bound on workable moment orders, -delta/(alpha + delta/2).

    Only defined in the delta < 0, alpha > -delta/2 regime.
    """
    alpha, delta = params.alpha, params.delta
    if not (delta < 0 and alpha > -delta / 2):
        raise WrongRegime(
            "the moment-order bound applies only when delta < 0 and alpha > -delta/2"
        )
    return -delta / (alpha + delta / 2)


def admissibility(params, spec):
    """Classify (alpha, delta) against the driver's moment metadata."""
    alpha, delta = params.alpha, params.delta
    if delta > 0:
        if alpha > delta / 2:
            return AdmissibilityVerdict(CONDITION_A)
        if alpha == delta / 2:
            return AdmissibilityVerdict(DEGENERATE_EQUAL)
        return AdmissibilityVerdict(
            INADMISSIBLE,
            reason=f"delta > 0 needs alpha >= delta/2; got alpha = {alpha:g}, "
            f"delta/2 = {delta / 2:g}",
        )
    if delta == 0:
        if alpha <= 0:
            return AdmissibilityVerdict(
                INADMISSIBLE, reason=f"delta = 0 needs alpha > 0; got alpha = {alpha:g}"
            )
        if not has_finite_log_moment(spec):
            return AdmissibilityVerdict(
                INADMISSIBLE, reason="delta = 0 needs a driver with a finite log moment"
            )
        return AdmissibilityVerdict(SELFSIMILAR)
    # delta < 0
    if alpha <= -delta / 2:
        return AdmissibilityVerdict(
            INADMISSIBLE,
            reason=f"delta < 0 needs alpha > -delta/2; got alpha = {alpha:g}, "
            f"-delta/2 = {-delta / 2:g}",
        )
    required = -delta / (alpha + delta / 2)
    available = max_moment_order(spec)
    if available <= required:
        return AdmissibilityVerdict(
            INADMISSIBLE,
            required_gamma=required,
            reason=f"delta < 0 requires a finite moment of some order > {required:g}, "
            f"but the driver's maximal moment order is {available:g}",
        )
    upper = min(available, required + 2.0)
    return AdmissibilityVerdict(
        CONDITION_B, gamma=0.5 * (required + upper), required_gamma=required
    )


def cascade_partial_sums(samples, a, b, beta, levels):
    """Partial sums S_0..S_levels of the geometric block cascade.

    S_k = sum_{j<=k} a**(-j*beta) * sum_{l <= a**j * b} |samples_l|.  Needs at
    least a**levels * b samples; raises NotEnoughSamples otherwise.  The gaps
    S_k - S_{k-1} are nonnegative and, for a sample law with a finite moment
    of order 1/beta, shrink geometrically in k.
    """
    a = int(a)
    b = int(b)
    levels = int(levels)
    beta = float(beta)
    if a < 2 or b < 1 or levels < 0:
        raise ValueError("need a >= 2, b >= 1, levels >= 0")
    if beta <= 0:
        raise ValueError("beta must be > 0")
    needed = a**levels * b
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size < needed:
        raise NotEnoughSamples(
            f"cascade to level {levels} needs {needed} samples, got {samples.size}"
        )
    abs_cum = np.cumsum(np.abs(samples[:needed]))
    gaps = np.array(
        [float(a) ** (-k * beta) * abs_cum[a**k * b - 1] for k in range(levels + 1)]
    )
    return np.cumsum(gaps)
