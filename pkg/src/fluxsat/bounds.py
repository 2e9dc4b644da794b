"""Analytic waiting-time bounds, growth estimation and the scaling study.

For a datum whose growth coefficient at the waiting point is L, the waiting
time t* sits between

    T_ell = C L^(1-p)       (C is an external constant, supplied by the
                             caller; it is not produced by this toolkit)
    T_u   = W L^(1-p)       W = 4^m (relativistic)
                            W = 2^(M-1) / (K (ell-1)) (speed-limited, with
                            K = 2N(M-1) and the half-gap ell policy)

where p is the model exponent (m or M).  The scaling study measures t*(L)
for several L and fits the log-log slope, whose theoretical value is 1-p.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigurationError
from .model import ModelKind
from .subsolutions import sample_ball, select_ell

__all__ = [
    "lower_bound_T_ell",
    "upper_bound_T_u",
    "waiting_time_constant",
    "estimate_growth_coefficient",
    "WaitingTimeStudyConfig",
    "ScalingStudyResult",
    "scaling_study",
]


def _scaled_bound(L: float, expo: float, W: float) -> float:
    """W * L^(1-expo) through log space (extreme exponents overflow)."""
    try:
        return math.exp(math.log(W) + (1.0 - expo) * math.log(L))
    except OverflowError:
        return math.inf


def waiting_time_constant(N: int, model: ModelKind) -> float:
    """The constant W in the upper bound T_u = W L^(1-exponent)."""
    if model.is_relativistic:
        return 4.0**model.exponent
    K = 2.0 * N * (model.exponent - 1.0)
    ell, _ = select_ell(N, model.exponent)
    return 2.0 ** (model.exponent - 1.0) / (K * (ell - 1.0))


def lower_bound_T_ell(L: float, C: float, model: ModelKind) -> float:
    """Lower bound C L^(1-exponent); C must be supplied by the caller."""
    if C is None:
        raise ConfigurationError("the lower-bound constant C is required")
    if not (L > 0.0 and C > 0.0):
        raise ValueError("L and C must be positive")
    return _scaled_bound(L, model.exponent, C)


def upper_bound_T_u(L: float, N: int, model: ModelKind) -> Tuple[float, float]:
    """Upper bound T_u = W L^(1-exponent); returns (T_u, W)."""
    if not L > 0.0:
        raise ValueError(f"L must be positive, got {L}")
    W = waiting_time_constant(N, model)
    return _scaled_bound(L, model.exponent, W), W


def estimate_growth_coefficient(
    datum_sampler,
    x0,
    v0,
    exponent: float,
    r_ref: float = 1.0,
    rho_factors: Sequence[float] = (1e-1, 1e-2, 1e-3),
    n_samples: int = 10_000,
    seed: int = 42,
) -> float:
    """Estimate the growth coefficient of a datum at x0 along v0.

    Approximates the limit of the ball infimum of u0(x) |x-x0|^(-exponent)
    over B(x0 + rho v0, rho) for a shrinking sequence of rho, taking the
    sampled minimum at the smallest rho.  Returns +inf when the ratio grows
    without bound along the sequence (datum flatter than the critical
    power) and 0 when the datum vanishes on a sampled ball.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    v0 = np.atleast_1d(np.asarray(v0, dtype=float))
    norm = np.linalg.norm(v0)
    if norm == 0.0:
        raise ValueError("v0 must be a nonzero direction")
    v0 = v0 / norm
    mins = []
    for k, factor in enumerate(rho_factors):
        rho = factor * r_ref
        pts = sample_ball(x0 + rho * v0, rho, n_samples, seed=seed + k)
        dist = np.linalg.norm(pts - x0, axis=1)
        keep = dist > 0.0
        vals = np.asarray(datum_sampler(pts[keep]), dtype=float)
        ratio = vals * dist[keep] ** (-exponent)
        mins.append(float(np.min(ratio)))
    if any(v == 0.0 for v in mins):
        return 0.0
    increasing = all(b > a for a, b in zip(mins, mins[1:]))
    if increasing and mins[-1] >= 5.0 * mins[0]:
        return math.inf
    return mins[-1]


# =============================================================================
# Scaling study
# =============================================================================


@dataclass(frozen=True)
class WaitingTimeStudyConfig:
    """Desk geometry for waiting-time measurements.

    The configuration describes the L = 1 member; other members are the
    exactly rescaled problems (amplitude scaling for the relativistic
    model, joint amplitude/space scaling for the speed-limited one), so
    the fitted slope isolates the L-dependence of t*.
    """

    cells: int = 1024
    r_obs: float = 1.0
    r_max: float = 2.5
    cap_ratio: float = 0.6
    threshold_rel: float = 1e-2
    t_max_factor: float = 2.0
    cfl: float = 0.4
    max_steps: int = 2_000_000_000

    def member(self, model: ModelKind, L: float):
        """Grid, datum, threshold and t_max for the growth-L member."""
        from . import solver as _solver

        p = model.growth_exponent
        scale = 1.0 if model.is_relativistic else L ** (1.0 - model.exponent)
        r_obs = self.r_obs * scale
        grid = _solver.RadialGrid(model.dimension, self.r_max * scale, self.cells)
        cap = self.cap_ratio * L * r_obs**p
        datum = _solver.FrontPowerLaw(L=L, power=p, front_radius=r_obs, cap=cap)
        threshold = self.threshold_rel * cap
        T_u, _ = upper_bound_T_u(L, model.dimension, model)
        t_max = self.t_max_factor * T_u
        return grid, datum, r_obs, threshold, t_max


@dataclass
class ScalingStudyResult:
    L_values: List[float]
    reports: List  # WaitingTimeReport per L
    traces: List
    slope: float
    intercept: float
    residual: float
    within_upper: List[bool]

    def rows(self) -> List[Tuple[float, float, Optional[float], bool]]:
        return [
            (L, rep.t_star_measured, rep.T_upper, rep.conclusive)
            for L, rep in zip(self.L_values, self.reports)
        ]

    def summary(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "n_conclusive": int(sum(r.conclusive for r in self.reports)),
            "all_within_upper": bool(all(self.within_upper)),
        }


def run_study_members(
    model: ModelKind,
    L_values: Sequence[float],
    config: WaitingTimeStudyConfig = WaitingTimeStudyConfig(),
    jobs: int = 1,
):
    """Waiting-time measurement for each L; returns (reports, traces)."""
    from . import solver as _solver

    if any(L <= 0.0 for L in L_values):
        raise ConfigurationError("growth coefficients must be positive")

    def run_one(L: float):
        grid, datum, r_obs, threshold, t_max = config.member(model, L)
        solver = _solver.RadialSolver(model, cfl=config.cfl)
        return solver.measure_waiting_time(
            datum,
            x0_offset=r_obs,
            threshold=threshold,
            t_max=t_max,
            grid=grid,
            L=L,
            max_steps=config.max_steps,
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, L_values))
    else:
        outcomes = [run_one(L) for L in L_values]
    return [rep for rep, _ in outcomes], [tr for _, tr in outcomes]


def scaling_study(
    model: ModelKind,
    L_values: Sequence[float],
    config: WaitingTimeStudyConfig = WaitingTimeStudyConfig(),
    jobs: int = 1,
) -> ScalingStudyResult:
    """Measure t*(L) for each L and fit the log-log slope.

    Runs hitting t_max are flagged inconclusive and excluded from the fit.
    Each report is checked against its analytic upper bound with a 10%
    discretization allowance.
    """
    L_values = [float(L) for L in L_values]
    if len(L_values) < 3:
        raise ConfigurationError("the scaling study needs at least 3 values of L")
    reports, traces = run_study_members(model, L_values, config, jobs=jobs)

    within = [
        (not rep.conclusive) or rep.t_star_measured <= 1.1 * rep.T_upper
        for rep in reports
    ]
    xs = [math.log(L) for L, rep in zip(L_values, reports) if rep.conclusive]
    ys = [math.log(rep.t_star_measured) for rep in reports if rep.conclusive]
    if len(xs) >= 2:
        coeffs = np.polyfit(xs, ys, 1)
        slope, intercept = float(coeffs[0]), float(coeffs[1])
        fitted = np.polyval(coeffs, xs)
        residual = float(np.sqrt(np.mean((np.asarray(ys) - fitted) ** 2)))
    else:
        slope = intercept = residual = math.nan
    return ScalingStudyResult(
        L_values=L_values,
        reports=reports,
        traces=traces,
        slope=slope,
        intercept=intercept,
        residual=residual,
        within_upper=within,
    )
