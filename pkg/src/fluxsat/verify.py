"""Certification of subsolution candidates and numerical comparison tests.

A profile is certified by checking the pointwise reductions of the entropy
inequalities it must satisfy:

* speed-limited family: the bulk residual u_t - div-term evaluated from the
  closed forms of the time derivative and the divergence of the flux, plus
  the two front-speed window slacks (the sufficient conditions);
* relativistic family: the bulk requirement gamma >= G(r, |x|), the
  Rankine-Hugoniot identity of the moving jump, and the jump inequality

      int_0^{u+} (S T)'(s) s (s^(m-1) - r') ds
          <= u+ T(u+) S(u+) ((u+)^(m-1) - r')

  for two-level clamp truncations T = T(a,b), S = T(a',b') (each
  max(min(b, .), a) - a); with r' = (u+)^(m-1) the right side vanishes and
  the left side is nonpositive.

Only the reduced pointwise and jump forms are evaluated; the measure-form
entropy inequality itself is not numerically tractable and equivalent to
these reductions on the implemented profiles.  Bulk sampling avoids an
O(h)-wide band at the support boundary where derivatives blow up; that band
is covered by the window slacks and the jump check.

``comparison_test`` exercises the ordering between an evolved solution and
a subsolution dominated at t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import quad

from .errors import ConfigurationError
from .model import ModelKind
from .solver import RadialGrid, RadialSolver, SubsolutionSnapshot, Trace
from .subsolutions import (
    MSubParams,
    RadialSubsolution,
    RelSubParams,
    _G_grid,
    front_radius_rel,
    front_speed_rel,
    rel_plus_level,
    validate_M_params,
)

__all__ = [
    "BulkResidualM",
    "CertificationReport",
    "ComparisonReport",
    "bulk_residual_M",
    "bulk_residual_rel",
    "jump_check_rel",
    "certify_m_family",
    "certify_rel_family",
    "comparison_test",
]

# Relative scale of the bulk tolerance; the two residual terms can be large
# individually, so the tolerance tracks their magnitude.
_BULK_TOL = 1e-8


# =============================================================================
# Bulk residuals
# =============================================================================


@dataclass(frozen=True)
class BulkResidualM:
    residual: float
    u_t: float
    div_term: float
    slack_pair: Tuple[float, float]

    @property
    def tolerance(self) -> float:
        return _BULK_TOL * (1.0 + abs(self.u_t) + abs(self.div_term))


def _m_residual_grid(t, q, p: MSubParams):
    """Vectorized residual of the speed-limited profile.

    ``t`` and ``q`` broadcast; q = |x - xi| / (s + w t) is the support
    coordinate in [0, 1).  Returns (residual, u_t, div_term).
    """
    M, N = p.M, p.N
    B = p.s + p.w * t
    AM1 = p.b * (p.ell / p.s - 1.0 / B)  # A^(M-1)
    A = AM1 ** (1.0 / (M - 1.0))
    f = (1.0 - q**2) ** (1.0 / (M - 1.0))
    fp = -2.0 * q / (M - 1.0) * (1.0 - q**2) ** ((2.0 - M) / (M - 1.0))
    AM = A**M
    dA_over_A2 = p.b * p.w / ((M - 1.0) * AM * B**2)
    u_t = -dA_over_A2 * f - (p.w / (A * B)) * q * fp
    P4 = 4.0 * q**2 / (AM1**2 * B**2)
    D = np.sqrt(1.0 + P4)
    div = -2.0 * q * fp / (AM * B**2 * D) - (2.0 * N * f / (AM * B**2 * D**3)) * (
        1.0 + ((N - 1.0) / N) * P4
    )
    return u_t - div, u_t, div


def bulk_residual_M(t: float, y: float, p: MSubParams) -> BulkResidualM:
    """Pointwise bulk residual u_t - div-term at radius y, with window slacks.

    Negative residual (up to tolerance) at every interior point is the
    certified inequality; the slack pair carries the sufficient conditions
    b w >= 2N(M-1) and w <= w_upper.
    """
    if not 0.0 <= t < p.lifetime:
        raise ValueError(f"t={t} outside the validity window [0, {p.lifetime})")
    B = p.s + p.w * t
    if not 0.0 <= y < B:
        raise ValueError(f"y={y} outside the open support radius {B}")
    res, u_t, div = _m_residual_grid(np.asarray(t), np.asarray(y / B), p)
    v = validate_M_params(p)
    return BulkResidualM(
        residual=float(res),
        u_t=float(u_t),
        div_term=float(div),
        slack_pair=(p.b * p.w - 2.0 * p.N * (p.M - 1.0), v.slack_upper),
    )


def bulk_residual_rel(t: float, x_norm: float, p: RelSubParams) -> float:
    """gamma - G(r(tau), x_norm); nonnegative where the bulk inequality holds."""
    if t >= p.scaled_horizon:
        raise ValueError(f"t={t} outside the scaled horizon {p.scaled_horizon}")
    r = front_radius_rel(t, p)  # validates t >= 0
    if not 0.0 <= x_norm < r:
        raise ValueError(f"x_norm={x_norm} outside the open support radius {r}")
    G = float(_G_grid(np.asarray(r), np.asarray(x_norm), p.N, p.m))
    return p.gamma - G


# =============================================================================
# Jump inequality
# =============================================================================


def _clamp(sigma, a: float, b: float):
    return np.minimum(np.maximum(sigma, a), b) - a


def jump_check_rel(
    t: float,
    p: RelSubParams,
    trunc_T: Tuple[float, float],
    trunc_S: Tuple[float, float],
) -> Tuple[float, float]:
    """Evaluate both sides of the jump inequality at the moving front.

    Returns (lhs, rhs) with lhs by adaptive quadrature over the smooth
    pieces and rhs in closed form; with the front moving at exactly
    (u+)^(m-1), rhs vanishes up to roundoff and lhs is nonpositive.
    """
    a, b = trunc_T
    a2, b2 = trunc_S
    if not (0.0 < a < b and 0.0 < a2 < b2):
        raise ValueError(f"malformed truncation bounds {trunc_T}, {trunc_S}")
    u_plus = rel_plus_level(t, p)
    tau = p.U ** (p.m - 1.0) * t
    A = ((p.m - 1.0) * (1.0 + p.gamma * tau)) ** (1.0 / (p.m - 1.0))
    rprime = p.U ** (p.m - 1.0) * A ** (1.0 - p.m)  # front speed, scaled time
    m = p.m

    def integrand(sigma: float) -> float:
        T = min(max(sigma, a), b) - a
        S = min(max(sigma, a2), b2) - a2
        dT = 1.0 if a < sigma < b else 0.0
        dS = 1.0 if a2 < sigma < b2 else 0.0
        return (dS * T + S * dT) * sigma * (sigma ** (m - 1.0) - rprime)

    cuts = sorted({0.0, u_plus} | {x for x in (a, b, a2, b2) if 0.0 < x < u_plus})
    lhs = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        piece, _ = quad(integrand, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=200)
        lhs += piece
    T_up = float(_clamp(u_plus, a, b))
    S_up = float(_clamp(u_plus, a2, b2))
    rhs = u_plus * T_up * S_up * (u_plus ** (m - 1.0) - rprime)
    return lhs, rhs


# =============================================================================
# Certification drivers
# =============================================================================


@dataclass
class CertificationReport:
    family: str
    params: dict
    n_samples: int
    max_residual: float
    min_slack: float
    passed: bool
    worst_point: Tuple[float, float]
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "n_samples": self.n_samples,
            "max_residual": self.max_residual,
            "min_slack": self.min_slack,
            "pass": self.passed,
            "worst_point": list(self.worst_point),
            "details": self.details,
        }


def _interior_fractions(n: int) -> np.ndarray:
    """Sample fractions in (0, 1) staying one O(1/n) band off the boundary."""
    return (np.arange(n) + 0.5) / n * (1.0 - 1.0 / n)


def certify_m_family(
    p: MSubParams, n_t: int = 200, n_y: int = 200
) -> CertificationReport:
    """Bulk certification of the speed-limited family on an interior grid."""
    ts = (np.arange(n_t) + 0.5) / n_t * p.lifetime
    qs = _interior_fractions(n_y)
    res, u_t, div = _m_residual_grid(ts[:, None], qs[None, :], p)
    tol = _BULK_TOL * (1.0 + np.abs(u_t) + np.abs(div))
    margin = res - tol
    i, j = np.unravel_index(np.argmax(margin), margin.shape)
    v = validate_M_params(p)
    slack_lower = p.b * p.w - 2.0 * p.N * (p.M - 1.0)
    passed = bool(np.all(margin <= 0.0)) and slack_lower >= 0.0 and v.slack_upper >= 0.0
    B = p.s + p.w * ts[i]
    return CertificationReport(
        family="speed_limited",
        params=p.to_dict(),
        n_samples=res.size,
        max_residual=float(res[i, j]),
        min_slack=float(min(slack_lower, v.slack_upper)),
        passed=passed,
        worst_point=(float(ts[i]), float(qs[j] * B)),
        details={
            "slack_lower": slack_lower,
            "slack_upper": v.slack_upper,
            "grid": [n_t, n_y],
        },
    )


def _default_truncation_pairs(
    u_plus: float, n: int, rng: np.random.Generator
) -> list:
    """Random clamp pairs; the last few put the upper level near u+."""
    pairs = []
    for k in range(n):
        if k >= n - 4:
            b = u_plus * (0.95 + 0.1 * rng.random())
            a = b * (0.05 + 0.6 * rng.random())
        else:
            a = u_plus * (0.02 + 0.5 * rng.random())
            b = a + u_plus * (0.05 + 0.6 * rng.random())
        a2 = u_plus * (0.02 + 0.5 * rng.random())
        b2 = a2 + u_plus * (0.05 + 0.6 * rng.random())
        pairs.append(((a, b), (a2, b2)))
    return pairs


def certify_rel_family(
    p: RelSubParams,
    n_t: int = 120,
    n_y: int = 120,
    n_jump_pairs: int = 20,
    rh_step: float = 1e-6,
    rh_tol: float = 1e-5,
    jump_tol: float = 1e-10,
    seed: int = 42,
) -> CertificationReport:
    """Bulk, Rankine-Hugoniot and jump certification of the relativistic family."""
    window = p.scaled_horizon
    ts = (np.arange(n_t) + 0.5) / n_t * window
    qs = _interior_fractions(n_y)

    # Bulk: gamma - G along the trajectory.
    taus = p.U ** (p.m - 1.0) * ts
    rs = p.r0 + np.log1p(p.gamma * taus) / (p.gamma * (p.m - 1.0))
    G = _G_grid(rs[:, None], qs[None, :] * rs[:, None], p.N, p.m)
    gap = p.gamma - G
    i, j = np.unravel_index(np.argmin(gap), gap.shape)
    min_gap = float(gap[i, j])
    bulk_ok = min_gap >= 0.0

    # Rankine-Hugoniot along the trajectory (central differences).
    rh_ts = np.linspace(2.0 * rh_step, window * (1.0 - 1e-6) - 2.0 * rh_step, 64)
    rh_err = 0.0
    for t in rh_ts:
        num = (front_radius_rel(t + rh_step, p) - front_radius_rel(t - rh_step, p)) / (
            2.0 * rh_step
        )
        rh_err = max(rh_err, abs(num - front_speed_rel(t, p)))
    rh_ok = rh_err <= rh_tol

    # Jump inequality at a few times, random truncation pairs each.
    rng = np.random.default_rng(seed)
    jump_worst = -math.inf
    rhs_worst = 0.0
    for t in (0.25 * window, 0.5 * window, 0.75 * window):
        u_plus = rel_plus_level(t, p)
        for trunc_T, trunc_S in _default_truncation_pairs(u_plus, n_jump_pairs, rng):
            lhs, rhs = jump_check_rel(t, p, trunc_T, trunc_S)
            jump_worst = max(jump_worst, lhs - rhs)
            rhs_worst = max(rhs_worst, abs(rhs))
    jump_ok = jump_worst <= jump_tol

    passed = bulk_ok and rh_ok and jump_ok
    return CertificationReport(
        family="relativistic",
        params=p.to_dict(),
        n_samples=gap.size,
        max_residual=float(-min_gap),
        min_slack=min_gap,
        passed=passed,
        worst_point=(float(ts[i]), float(qs[j] * rs[i])),
        details={
            "bulk_ok": bulk_ok,
            "rh_max_error": rh_err,
            "rh_ok": rh_ok,
            "jump_max_lhs_minus_rhs": jump_worst,
            "jump_max_abs_rhs": rhs_worst,
            "jump_ok": jump_ok,
            "grid": [n_t, n_y],
            "n_jump_pairs": n_jump_pairs,
        },
    )


# =============================================================================
# Numerical comparison against the solver
# =============================================================================


@dataclass
class ComparisonReport:
    min_gap: float
    min_gap_time: float
    min_gap_radius: float
    initial_max: float
    margin: float
    cells: int
    trace: Optional[Trace] = None

    def to_dict(self) -> dict:
        return {
            "min_gap": self.min_gap,
            "min_gap_time": self.min_gap_time,
            "min_gap_radius": self.min_gap_radius,
            "initial_max": self.initial_max,
            "margin": self.margin,
            "cells": self.cells,
        }


def comparison_test(
    model: ModelKind,
    sub,
    margin: float,
    grid: RadialGrid,
    t_end: Optional[float] = None,
    n_obs: int = 64,
    cfl: float = 0.4,
) -> ComparisonReport:
    """Evolve u0 = (1+margin) sub(0) and track min(u - sub) over space-time.

    A dominated subsolution must stay below the evolving solution; the
    report records the most negative sampled gap and its location, which
    for the monotone first-order scheme shrinks under grid refinement.
    """
    if margin < 0.0:
        raise ConfigurationError(f"margin must be nonnegative, got {margin}")
    view = sub if hasattr(sub, "profile") else RadialSubsolution(sub)
    window = getattr(view, "window", math.inf)
    if t_end is None:
        t_end = 0.8 * window if math.isfinite(window) else 1.0
    if t_end >= window:
        raise ConfigurationError(
            f"t_end={t_end} is not inside the subsolution window {window}"
        )
    solver = RadialSolver(model, cfl=cfl)
    datum = SubsolutionSnapshot(view, t=0.0, scale=1.0 + margin)
    state = solver.init_state(grid, datum)
    initial_max = state.vmax()

    obs_times = np.linspace(0.0, t_end, n_obs + 1)
    min_gap = math.inf
    min_t = 0.0
    min_r = 0.0
    rows_t, rows_mass, rows_supp = [], [], []
    thr = 1e-8 * max(initial_max, 1e-300)
    current = state
    for t_k in obs_times:
        if t_k > current.t:
            current, _ = solver.run(current, t_k)
        gap = current.values - view.profile(t_k, grid.centers)
        k = int(np.argmin(gap))
        if gap[k] < min_gap:
            min_gap = float(gap[k])
            min_t = float(t_k)
            min_r = float(grid.centers[k])
        rows_t.append(t_k)
        rows_mass.append(current.mass())
        above = np.nonzero(current.values > thr)[0]
        rows_supp.append(float(grid.edges[above[-1] + 1]) if above.size else 0.0)
    trace = Trace(
        t=np.asarray(rows_t),
        mass=np.asarray(rows_mass),
        support_radius=np.asarray(rows_supp),
        u_at_x0=None,
        snapshots=[],
    )
    return ComparisonReport(
        min_gap=min_gap,
        min_gap_time=min_t,
        min_gap_radius=min_r,
        initial_max=initial_max,
        margin=margin,
        cells=grid.cells,
        trace=trace,
    )
