"""Empirical characteristic functions and scaling-law verification.

An ensemble holds N independent path realisations on a common grid.  The
finite dimensional empirical CF at (times, thetas) averages
exp(i * sum_j theta_j * X(t_j)) over paths; its standard error is
sqrt((1 - |cf|^2) / N).  Log-CFs are estimated along the ray r * theta,
r in (0, 1], with the phase unwrapped continuously from r = 0 where the
log-CF is 0 -- the principal-branch angle alone would be wrong whenever the
accumulated phase passes pi.  A ray is aborted (LowMagnitude) when |cf| falls
below max(0.1, 5/sqrt(N)), the region where log-CF estimates stop being
meaningful at the available sample size.

check_scaling turns a scaling law into z-scores: for each test point it
compares the estimated log-CF at the law's scaled arguments against the
law's multiplier times the estimated log-CF at the base arguments, each
component normalised by the pooled standard error.  A point passes when both
components have |z| <= 3.

Closed-form oracles exist for the Gaussian and symmetric stable drivers:
with q = delta/(e^delta - 1) and H = alpha - delta/2,

    gaussian:  Psi_t(theta) = i*drift*theta * q * t^(H+delta)/(H+delta)
                              - variance*theta^2/2 * q * t^(2 alpha)/(2 alpha)
    stable:    Psi_t(theta) = -scale*|theta|^p * q * t^(pH+delta)/(pH+delta)

valid for pH + delta > 0 (equivalently 2*alpha > 0 for the Gaussian part).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .drivers import GaussianDriver, SymmetricStableDriver
from .errors import (
    DegenerateDelta,
    LowMagnitude,
    NonPositiveTime,
    OracleOutOfDomain,
)
from .integrator import SamplePath, TimeGrid
from .processes import (
    DilationParams,
    lamperti_inverse,
    lamperti_transform,
    plan_dilative,
    reparam_idt,
    reparam_time_stable,
)
from .timechange import tau_density

__all__ = [
    "EnsembleConfig",
    "PathEnsemble",
    "EcfEstimate",
    "TestPoint",
    "DilativeLaw",
    "TranslativeLaw",
    "TimeStableLaw",
    "IdtLaw",
    "ScalingRow",
    "ScalingReport",
    "derive_rng",
    "simulate_ensemble",
    "transform_ensemble",
    "apply_transforms",
    "estimate_ecf",
    "estimate_log_cf",
    "oracle_log_cf",
    "oracle_joint_log_cf",
    "marginal_points",
    "increment_pair",
    "check_scaling",
]

TRANSFORM_NAMES = ("lamperti", "lamperti_inverse", "time_stable", "idt")


@dataclass(frozen=True)
class EnsembleConfig:
    """What to simulate: driver, scaling parameters, output grid, transforms.

    out_times is the output grid of the underlying additive process (strictly
    positive); transforms is a chain of names from TRANSFORM_NAMES applied to
    every path, e.g. ("lamperti",) for the OU-type transform or
    ("lamperti", "time_stable") for its time-stable relabelling.
    """

    driver: object
    params: DilationParams
    out_times: TimeGrid
    refine: float = 8.0
    tail_tol: float = 1e-4
    transforms: tuple = ()

    def __post_init__(self):
        if not isinstance(self.out_times, TimeGrid):
            object.__setattr__(self, "out_times", TimeGrid(self.out_times))
        object.__setattr__(self, "transforms", tuple(self.transforms))
        for name in self.transforms:
            if name not in TRANSFORM_NAMES:
                raise ValueError(f"unknown transform {name!r}")


@dataclass(eq=False)
class PathEnsemble:
    """N path realisations on a common grid, one row per path."""

    grid: TimeGrid
    values: np.ndarray
    master_seed: int | None = None
    config: EnsembleConfig | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.shape[1] != len(self.grid):
            raise ValueError("values must be (n_paths, len(grid))")
        self.values = vals

    @property
    def n_paths(self):
        return self.values.shape[0]


def derive_rng(master_seed, n):
    """The independent generator for path n; a pure function of (seed, n)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(n,)))


def apply_transforms(path, params, transforms):
    """Apply a transform chain to one path."""
    for name in transforms:
        if name == "lamperti":
            path = lamperti_transform(path, params)
        elif name == "lamperti_inverse":
            path = lamperti_inverse(path, params)
        elif name == "time_stable":
            path = reparam_time_stable(path)
        elif name == "idt":
            path = reparam_idt(path, params.delta)
        else:
            raise ValueError(f"unknown transform {name!r}")
    return path


def simulate_ensemble(config, n_paths, master_seed, threads=1):
    """Simulate an ensemble; path n depends only on (master_seed, n).

    The rows are written by path index, so the result is byte-identical for
    any thread count; threads only trade wall time.
    """
    pts = config.out_times.points
    if pts[0] <= 0:
        raise NonPositiveTime("output times must be strictly positive")
    plan = plan_dilative(
        config.driver,
        config.params,
        np.log(pts),
        refine=config.refine,
        tail_tol=config.tail_tol,
    )
    probe = apply_transforms(
        SamplePath(config.out_times, np.zeros(pts.size), role="X"),
        config.params,
        config.transforms,
    )
    values = np.empty((int(n_paths), len(probe.grid)))

    def one(n):
        rng = derive_rng(master_seed, n)
        x = SamplePath(config.out_times, plan.run(rng), role="X")
        values[n] = apply_transforms(x, config.params, config.transforms).values

    if threads <= 1:
        for n in range(int(n_paths)):
            one(n)
    else:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            list(pool.map(one, range(int(n_paths))))
    return PathEnsemble(probe.grid, values, master_seed=master_seed, config=config)


def transform_ensemble(ens, params, transforms, role="X"):
    """Apply a transform chain to every path of an existing ensemble.

    role names the process the ensemble's rows currently are ("X" after a
    plain simulation, "V" after a lamperti chain, ...).
    """
    probe = apply_transforms(
        SamplePath(ens.grid, np.zeros(len(ens.grid)), role=role), params, transforms
    )
    values = np.empty((ens.n_paths, len(probe.grid)))
    for n in range(ens.n_paths):
        path = SamplePath(ens.grid, ens.values[n], role=role)
        values[n] = apply_transforms(path, params, transforms).values
    return PathEnsemble(probe.grid, values, master_seed=ens.master_seed, config=None)


@dataclass(frozen=True)
class EcfEstimate:
    """Empirical CF at one finite dimensional point, with standard errors."""

    times: tuple
    thetas: tuple
    cf_mean: complex
    cf_se: float
    logcf: complex
    logcf_se: float


def _projection(ens, times, thetas):
    idx = [ens.grid.index_of(t) for t in times]
    th = np.asarray(thetas, dtype=float)
    if th.shape != (len(idx),):
        raise ValueError("times and thetas must have equal length")
    return ens.values[:, idx] @ th


def estimate_ecf(ens, times, thetas):
    """Empirical CF of (X(t_1), ..., X(t_k)) at (theta_1, ..., theta_k).

    The logcf field carries the principal branch; use estimate_log_cf for a
    continuously unwrapped version.
    """
    w = _projection(ens, times, thetas)
    n = w.size
    cf = complex(np.exp(1j * w).mean())
    mag = abs(cf)
    se = math.sqrt(max(0.0, 1.0 - mag * mag) / n)
    if mag == 0.0:
        logcf = complex(-math.inf, 0.0)
        logcf_se = math.inf
    else:
        logcf = complex(math.log(mag), math.atan2(cf.imag, cf.real))
        logcf_se = se / mag
    return EcfEstimate(tuple(times), tuple(thetas), cf, se, logcf, logcf_se)


def estimate_log_cf(ens, times, theta_direction, r_steps=16):
    """Estimate the log-CF along the ray r * theta_direction, r in (0, 1].

    Returns one EcfEstimate per ray position, phases unwrapped continuously
    from 0 at r = 0.  Aborts with LowMagnitude at the first ray position
    whose CF magnitude falls below max(0.1, 5/sqrt(N)).
    """
    if r_steps < 1:
        raise ValueError("r_steps must be >= 1")
    w = _projection(ens, times, theta_direction)
    n = w.size
    floor = max(0.1, 5.0 / math.sqrt(n))
    rs = np.arange(1, r_steps + 1) / r_steps
    cfs = np.exp(1j * np.outer(rs, w)).mean(axis=1)
    mags = np.abs(cfs)
    low = np.nonzero(mags < floor)[0]
    if low.size:
        i = int(low[0])
        raise LowMagnitude(float(rs[i]), float(mags[i]), floor)
    phases = np.unwrap(np.concatenate([[0.0], np.angle(cfs)]))[1:]
    ses = np.sqrt(np.maximum(0.0, 1.0 - mags**2) / n)
    out = []
    direction = np.asarray(theta_direction, dtype=float)
    for r, cf, mag, phase, se in zip(rs, cfs, mags, phases, ses):
        out.append(
            EcfEstimate(
                tuple(times),
                tuple(r * direction),
                complex(cf),
                float(se),
                complex(math.log(mag), phase),
                float(se / mag),
            )
        )
    return out


def _estimate_psi(ens, times, thetas, r_steps):
    """Unwrapped log-CF estimate at the full ray endpoint."""
    return estimate_log_cf(ens, times, thetas, r_steps=r_steps)[-1]


def oracle_log_cf(spec, params, t, theta):
    """Closed-form log-CF of the additive process at one (t, theta).

    Supported for the Gaussian and symmetric stable drivers; requires t > 0
    and a positive scaling rate p*H + delta (OracleOutOfDomain otherwise).
    """
    t = float(t)
    theta = float(theta)
    if t <= 0:
        raise NonPositiveTime("the oracle needs t > 0")
    q = tau_density(params.delta, 0.0)
    h, d = params.hurst, params.delta
    if isinstance(spec, GaussianDriver):
        rate2 = 2.0 * params.alpha  # = 2H + delta
        if rate2 <= 0:
            raise OracleOutOfDomain(f"needs 2*alpha > 0, got {rate2:g}")
        out = -0.5 * spec.variance * theta**2 * q * t**rate2 / rate2
        if spec.drift != 0.0:
            rate1 = h + d
            if rate1 <= 0:
                raise OracleOutOfDomain(f"drift term needs alpha + delta/2 > 0, got {rate1:g}")
            return complex(out, spec.drift * theta * q * t**rate1 / rate1)
        return complex(out, 0.0)
    if isinstance(spec, SymmetricStableDriver):
        p = spec.index
        rate = p * h + d
        if rate <= 0:
            raise OracleOutOfDomain(f"needs index*H + delta > 0, got {rate:g}")
        return complex(-spec.scale * abs(theta) ** p * q * t**rate / rate, 0.0)
    raise OracleOutOfDomain(f"no closed-form log-CF for driver {type(spec).__name__}")


def oracle_joint_log_cf(spec, params, times, thetas):
    """Closed-form joint log-CF via independent increments.

    For sorted times t_1 <= ... <= t_k the joint exponent is
    sum_j [Psi_{t_j}(S_j) - Psi_{t_{j-1}}(S_j)] with tail sums
    S_j = theta_j + ... + theta_k and Psi_{t_0} = 0.
    """
    times = [float(t) for t in times]
    thetas = [float(th) for th in thetas]
    if len(times) != len(thetas):
        raise ValueError("times and thetas must have equal length")
    order = np.argsort(times, kind="stable")
    ts = [times[i] for i in order]
    ths = [thetas[i] for i in order]
    tails = np.cumsum(ths[::-1])[::-1]
    total = 0.0 + 0.0j
    prev = None
    for t, s in zip(ts, tails):
        term = oracle_log_cf(spec, params, t, float(s))
        if prev is not None:
            term -= oracle_log_cf(spec, params, prev, float(s))
        total += term
        prev = t
    return total


@dataclass(frozen=True)
class TestPoint:
    """One finite dimensional test point for a scaling check."""

    # not a test case, despite the name pytest sees on import
    __test__ = False

    times: tuple
    thetas: tuple

    def __post_init__(self):
        if len(self.times) != len(self.thetas) or not self.times:
            raise ValueError("need equally many times and thetas, at least one each")


def marginal_points(times, thetas):
    """The cross product of single-time test points."""
    return [TestPoint((float(t),), (float(th),)) for t in times for th in thetas]


def increment_pair(t1, t2, theta, ratio=-0.5):
    """A two-dimensional test point loading (X(t1), X(t2)) through the
    increment combination theta * X(t1) + ratio*theta * X(t2)."""
    return TestPoint((float(t1), float(t2)), (float(theta), float(ratio * theta)))


@dataclass(frozen=True)
class DilativeLaw:
    """Dilative scaling: Psi at times T*t equals T**delta * Psi at thetas T**H."""

    alpha: float
    delta: float
    T: float

    kind = "dilative"

    def scaled_point(self, point):
        return TestPoint(tuple(self.T * t for t in point.times), point.thetas)

    def base_point(self, point):
        h = self.alpha - self.delta / 2.0
        factor = self.T**h
        return TestPoint(point.times, tuple(factor * th for th in point.thetas))

    @property
    def multiplier(self):
        return self.T**self.delta

    def to_dict(self):
        return {"kind": self.kind, "alpha": self.alpha, "delta": self.delta, "T": self.T}


@dataclass(frozen=True)
class TranslativeLaw:
    """Translative scaling: Psi at times t + T equals e^(delta T) * Psi."""

    delta: float
    T: float

    kind = "translative"

    def scaled_point(self, point):
        return TestPoint(tuple(t + self.T for t in point.times), point.thetas)

    def base_point(self, point):
        return point

    @property
    def multiplier(self):
        return math.exp(self.delta * self.T)

    def to_dict(self):
        return {"kind": self.kind, "delta": self.delta, "T": self.T}


@dataclass(frozen=True)
class TimeStableLaw:
    """Time stability: Psi at times n**(1/delta) * t equals n * Psi."""

    delta: float
    n: float

    kind = "time_stable"

    def __post_init__(self):
        if self.delta == 0:
            raise DegenerateDelta("time stability needs delta != 0")

    def scaled_point(self, point):
        factor = self.n ** (1.0 / self.delta)
        return TestPoint(tuple(factor * t for t in point.times), point.thetas)

    def base_point(self, point):
        return point

    @property
    def multiplier(self):
        return float(self.n)

    def to_dict(self):
        return {"kind": self.kind, "delta": self.delta, "n": self.n}


@dataclass(frozen=True)
class IdtLaw:
    """Divisibility in time: Psi at times n * t equals n * Psi."""

    n: float

    kind = "idt"

    def scaled_point(self, point):
        return TestPoint(tuple(self.n * t for t in point.times), point.thetas)

    def base_point(self, point):
        return point

    @property
    def multiplier(self):
        return float(self.n)

    def to_dict(self):
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class ScalingRow:
    """Comparison at one test point: lhs vs multiplier * rhs, with z-scores."""

    times: tuple
    thetas: tuple
    lhs: complex
    rhs: complex
    z_real: float
    z_imag: float
    oracle: complex | None = None

    @property
    def passed(self):
        return abs(self.z_real) <= 3.0 and abs(self.z_imag) <= 3.0

    def to_dict(self):
        out = {
            "times": list(self.times),
            "thetas": list(self.thetas),
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "z": [self.z_real, self.z_imag],
        }
        if self.oracle is not None:
            out["oracle"] = [self.oracle.real, self.oracle.imag]
        return out


@dataclass(frozen=True)
class ScalingReport:
    """All rows of one scaling check plus the fraction of passing points."""

    law: object
    rows: tuple
    pass_fraction: float

    def to_dict(self):
        return {
            "law": self.law.to_dict(),
            "rows": [row.to_dict() for row in self.rows],
            "pass_fraction": self.pass_fraction,
        }


def _z_score(diff, se):
    if diff == 0.0:
        return 0.0
    if se == 0.0:
        return math.copysign(math.inf, diff)
    return diff / se


def check_scaling(ens, law, points, r_steps=16, oracle=None):
    """Run one scaling law over a list of test points.

    ens is a PathEnsemble, or a (scaled_side, base_side) pair of ensembles
    when the two sides should be estimated from independent samples.  For a
    single ensemble both sides share paths, which makes the z-scores
    conservative.  oracle, when given, is called as oracle(times, thetas) on
    each scaled point and its value is attached to the row.
    """
    if isinstance(ens, tuple):
        scaled_ens, base_ens = ens
    else:
        scaled_ens = base_ens = ens
    rows = []
    for point in points:
        sp = law.scaled_point(point)
        bp = law.base_point(point)
        lhs = _estimate_psi(scaled_ens, sp.times, sp.thetas, r_steps)
        base = _estimate_psi(base_ens, bp.times, bp.thetas, r_steps)
        mult = law.multiplier
        rhs_val = mult * base.logcf
        se = math.hypot(lhs.logcf_se, mult * base.logcf_se)
        z_re = _z_score(lhs.logcf.real - rhs_val.real, se)
        z_im = _z_score(lhs.logcf.imag - rhs_val.imag, se)
        oracle_val = oracle(sp.times, sp.thetas) if oracle is not None else None
        rows.append(
            ScalingRow(
                point.times, point.thetas, lhs.logcf, rhs_val, z_re, z_im, oracle_val
            )
        )
    passed = sum(1 for row in rows if row.passed)
    return ScalingReport(law, tuple(rows), passed / len(rows) if rows else 1.0)
