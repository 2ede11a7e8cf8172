"""Extended discrete Yamabe flow ``u' = Kbar - K(u)``.

The vector field uses generalized angles, so trajectories continue
through points where some face violates its triangle inequality.  The
energy from :mod:`discrete_yamabe.energy` decreases along the flow and
serves as the step acceptance test in adaptive mode.

Adaptive mode only enforces energy monotonicity.  With ``dt`` far beyond
the RK4 stability range the discrete map can settle on a spurious fixed
point with nonzero residual; such runs end as ``max_steps_reached``.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .curvature import curvature_from_angles, face_geometry
from .energy import _face_potentials, check_target
from .errors import DimensionMismatch, InsufficientTrace, NonFinite

__all__ = [
    "CONVERGED",
    "MAX_STEPS",
    "FlowParams",
    "TraceRow",
    "FlowResult",
    "integrate_flow",
    "estimate_decay_rate",
]

CONVERGED = "converged"
MAX_STEPS = "max_steps_reached"

ENERGY_SLACK = 1e-12


@dataclass(frozen=True)
class FlowParams:
    dt: float = 0.1
    adaptive: bool = False
    tol: float = 1e-10
    max_steps: int = 100_000
    trace_every: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_steps < 1 or self.trace_every < 1:
            raise ValueError("max_steps and trace_every must be positive")


class TraceRow(NamedTuple):
    step: int
    time: float
    energy: float
    residual_inf: float
    min_face_margin: float


@dataclass(frozen=True, eq=False)
class FlowResult:
    status: str
    u_final: np.ndarray
    residual_final: float
    trace: list = field(repr=False)
    decay_rate: Optional[tuple] = None
    steps: int = 0
    rejected_steps: int = 0

    @property
    def converged(self):
        return self.status == CONVERGED


class _Field:
    """Evaluates the flow field and the normalized energy for one problem."""

    def __init__(self, metric, kbar):
        self.metric = metric
        self.kbar = kbar
        self.linear = 2.0 * np.pi - kbar
        n = metric.triangulation.vertex_count
        self.energy0 = self._raw(np.zeros(n))[0]

    def _raw(self, u):
        geom = face_geometry(self.metric, u)
        energy = _face_potentials(geom.log_sides, geom.angles).sum() + np.dot(self.linear, u)
        return energy, geom

    def velocity(self, u):
        geom = face_geometry(self.metric, u)
        return self.kbar - curvature_from_angles(self.metric.triangulation, geom.angles)

    def state(self, u):
        """(energy, velocity, min relative face margin) at ``u``."""
        energy, geom = self._raw(u)
        vel = self.kbar - curvature_from_angles(self.metric.triangulation, geom.angles)
        return energy - self.energy0, vel, geom.min_relative_margin


def _rk4(field_, u, dt, k1):
    k2 = field_.velocity(u + 0.5 * dt * k1)
    k3 = field_.velocity(u + 0.5 * dt * k2)
    k4 = field_.velocity(u + dt * k3)
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_flow(metric, u0, target, params=None):
    """Integrate the extended flow with classical RK4 from ``u0``.

    Parameters
    ----------
    metric : PLMetric
    u0 : array_like, shape (N,)
        Any real vector; it need not lie in the conformal domain.
    target : TargetCurvature
    params : FlowParams, optional

    Returns
    -------
    FlowResult
        ``status`` is ``"converged"`` once ``max|K - Kbar| < tol``, else
        ``"max_steps_reached"``.  Non-convergence is a result, not an error.

    Raises
    ------
    NonFinite
        The state blew up, which means ``dt`` is far too large.
    """
    params = params or FlowParams()
    T = metric.triangulation
    kbar = check_target(T, target)
    u = np.array(u0, dtype=float).reshape(-1)
    if u.shape != (T.vertex_count,):
        raise DimensionMismatch(T.vertex_count, u.size)
    if not np.all(np.isfinite(u)):
        raise NonFinite("initial factor has non-finite entries")

    field_ = _Field(metric, kbar)
    energy, vel, margin = field_.state(u)
    residual = float(np.abs(vel).max())
    trace = [TraceRow(0, 0.0, float(energy), residual, margin)]

    dt0 = dt = float(params.dt)
    t = 0.0
    step = 0
    rejected = 0
    streak = 0
    status = CONVERGED if residual < params.tol else MAX_STEPS

    while status != CONVERGED and step < params.max_steps:
        candidate = _rk4(field_, u, dt, vel)
        if not np.all(np.isfinite(candidate)):
            raise NonFinite(f"state became non-finite at step {step + 1} (dt={dt:g})")
        c_energy, c_vel, c_margin = field_.state(candidate)

        # A step is rejected only in adaptive mode, and never below a
        # floor where the energy change is pure rounding.
        if params.adaptive and c_energy > energy + ENERGY_SLACK and dt > dt0 * 2.0**-40:
            dt *= 0.5
            rejected += 1
            streak = 0
            continue

        step += 1
        t += dt
        u, energy, vel, margin = candidate, c_energy, c_vel, c_margin
        residual = float(np.abs(vel).max())
        if residual < params.tol:
            status = CONVERGED
        if status == CONVERGED or step % params.trace_every == 0 or step == params.max_steps:
            trace.append(TraceRow(step, t, float(energy), residual, margin))

        if params.adaptive:
            streak += 1
            if streak >= 10:
                dt = min(dt * 1.25, dt0)
                streak = 0

    decay = None
    if status == CONVERGED:
        try:
            decay = estimate_decay_rate(trace)
        except InsufficientTrace:
            decay = None

    return FlowResult(
        status=status,
        u_final=u,
        residual_final=residual,
        trace=trace,
        decay_rate=decay,
        steps=step,
        rejected_steps=rejected,
    )


def estimate_decay_rate(trace):
    """Fit ``log(residual) ~ a - rate * t`` over the trailing half of a trace.

    Returns ``(rate, r_squared)``; ``rate`` is positive for a decaying
    residual.  A flat residual gives ``(0.0, 0.0)``.

    Raises
    ------
    InsufficientTrace
        Fewer than 10 rows, or a non-positive residual.
    """
    rows = list(trace)
    if len(rows) < 10:
        raise InsufficientTrace(f"need at least 10 trace rows, got {len(rows)}")
    times = np.array([r[1] for r in rows], dtype=float)
    residuals = np.array([r[3] for r in rows], dtype=float)
    if np.any(residuals <= 0) or not np.all(np.isfinite(residuals)):
        raise InsufficientTrace("residuals must be positive and finite")

    tail = slice(len(rows) // 2, None)
    t, y = times[tail], np.log(residuals[tail])
    t_c = t - t.mean()
    y_c = y - y.mean()
    sxx = float(np.dot(t_c, t_c))
    if sxx == 0.0:
        raise InsufficientTrace("trace tail spans zero time")
    slope = float(np.dot(t_c, y_c)) / sxx
    syy = float(np.dot(y_c, y_c))
    if syy == 0.0:
        return 0.0, 0.0
    ss_res = float(np.sum((y_c - slope * t_c) ** 2))
    r_squared = min(max(1.0 - ss_res / syy, 0.0), 1.0)
    return -slope, r_squared
