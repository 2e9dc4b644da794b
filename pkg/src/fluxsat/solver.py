"""Conservative monotone finite-volume evolution of radial profiles.

The Cauchy problems of interest are radially symmetric about the datum's
center, so the solver works on the radial reduction

    u_t = r^(1-N) (r^(N-1) F)_r,   F = a(u, u_r),

on a uniform grid over [0, r_max] with zero flux at both ends (reflecting
symmetry at r = 0).  N = 1 uses the half-line convention with unit area
constant, so reported masses are half-line masses.  The scheme is first
order with Rusanov-type dissipation: accuracy is traded for discrete
conservation, order preservation and nonnegativity, which the certification
and waiting-time experiments rely on.

Waiting times are measured by first threshold crossing at an observation
cell placed just outside the datum's support; at grid scale this differs
from the support-based definition by O(h) and is reconciled by the
refinement-consistency checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import bounds as _bounds
from ._kernels import (
    MODEL_REL,
    MODEL_SLPM,
    _admissible_dt,
    _advance,
    _apply,
    _faces,
)
from .errors import CFLViolationError, ConfigurationError, SolverFailureError
from .model import ModelKind

__all__ = [
    "RadialGrid",
    "RadialState",
    "RadialSolver",
    "WaitingTimeReport",
    "ObserverSpec",
    "Trace",
    "Bump",
    "FrontPowerLaw",
    "RampPowerLaw",
    "SubsolutionSnapshot",
    "ZeroDatum",
    "sphere_area_constant",
    "support_radius",
]


def sphere_area_constant(dimension: int) -> float:
    """Area constant of the unit (N-1)-sphere; 1 in the half-line convention."""
    if dimension == 1:
        return 1.0
    return 2.0 * math.pi ** (dimension / 2.0) / math.gamma(dimension / 2.0)


class RadialGrid:
    """Uniform radial cells on [0, r_max] with exact geometric volumes."""

    def __init__(self, dimension: int, r_max: float, cells: int):
        if dimension < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {dimension}")
        if not r_max > 0.0:
            raise ConfigurationError(f"r_max must be positive, got {r_max}")
        if cells < 8:
            raise ConfigurationError(f"need at least 8 cells, got {cells}")
        self.dimension = int(dimension)
        self.r_max = float(r_max)
        self.cells = int(cells)
        self.h = self.r_max / self.cells
        self.edges = np.linspace(0.0, self.r_max, self.cells + 1)
        self.centers = 0.5 * (self.edges[:-1] + self.edges[1:])
        omega = sphere_area_constant(self.dimension)
        self.face_areas = omega * self.edges ** (self.dimension - 1)
        self.volumes = (
            omega
            * (self.edges[1:] ** self.dimension - self.edges[:-1] ** self.dimension)
            / self.dimension
        )

    def __repr__(self):
        return (
            f"RadialGrid(dimension={self.dimension}, r_max={self.r_max}, "
            f"cells={self.cells})"
        )


@dataclass
class RadialState:
    """Cell-averaged values at a time instant."""

    grid: RadialGrid
    t: float
    values: np.ndarray

    def mass(self) -> float:
        return float(self.values @ self.grid.volumes)

    def vmax(self) -> float:
        return float(np.max(self.values)) if self.values.size else 0.0


def support_radius(state: RadialState, threshold: float) -> float:
    """Outermost cell-edge radius with cell value above the threshold."""
    if not threshold > 0.0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    above = np.nonzero(state.values > threshold)[0]
    if above.size == 0:
        return 0.0
    return float(state.grid.edges[above[-1] + 1])


# =============================================================================
# Initial data
# =============================================================================


@dataclass(frozen=True)
class Bump:
    """Indicator datum: height on [0, radius), zero outside."""

    height: float
    radius: float

    @property
    def support_radius(self) -> float:
        return self.radius

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r < self.radius, self.height, 0.0)


@dataclass(frozen=True)
class FrontPowerLaw:
    """Decreasing profile min(cap, L (front_radius - r)_+^power).

    The growth coefficient of this datum at the point x0 at radius
    ``front_radius``, approached from inside, is exactly L.
    """

    L: float
    power: float
    front_radius: float
    cap: float

    @property
    def support_radius(self) -> float:
        return self.front_radius

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        dist = np.clip(self.front_radius - r, 0.0, None)
        return np.minimum(self.cap, self.L * dist**self.power)


@dataclass(frozen=True)
class RampPowerLaw:
    """Increasing profile min(cap, L r^power) truncated at outer_radius."""

    L: float
    power: float
    outer_radius: float
    cap: float

    @property
    def support_radius(self) -> float:
        return self.outer_radius

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        vals = np.minimum(self.cap, self.L * r**self.power)
        return np.where(r < self.outer_radius, vals, 0.0)


class SubsolutionSnapshot:
    """Datum taken from a subsolution profile at a given time (default 0)."""

    def __init__(self, view, t: float = 0.0, scale: float = 1.0):
        self._view = view
        self._t = t
        self._scale = scale
        self.support_radius = view.support_radius(t)

    def __call__(self, r):
        return self._scale * self._view.profile(self._t, np.asarray(r, dtype=float))


class ZeroDatum:
    support_radius = 0.0

    def __call__(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))


# =============================================================================
# Reports and observers
# =============================================================================


@dataclass(frozen=True)
class WaitingTimeReport:
    """Measured waiting time with the analytic bounds for comparison."""

    t_star_measured: float
    threshold: float
    x0_cell: int
    T_lower: Optional[float]
    T_upper: Optional[float]
    L_used: Optional[float]
    conclusive: bool
    t_max: float
    cells: int

    def to_dict(self) -> dict:
        return {
            "t_star_measured": self.t_star_measured,
            "threshold": self.threshold,
            "x0_cell": self.x0_cell,
            "T_lower": self.T_lower,
            "T_upper": self.T_upper,
            "L_used": self.L_used,
            "conclusive": self.conclusive,
            "t_max": self.t_max,
            "cells": self.cells,
        }


@dataclass(frozen=True)
class ObserverSpec:
    """Sampling cadence for traces during a run."""

    interval: float
    x0_radius: Optional[float] = None
    support_threshold: Optional[float] = None  # absolute; default 1e-8 * initial max
    snapshot_times: Tuple[float, ...] = ()


@dataclass
class Trace:
    t: np.ndarray
    mass: np.ndarray
    support_radius: np.ndarray
    u_at_x0: Optional[np.ndarray]
    snapshots: List[Tuple[float, np.ndarray]] = field(default_factory=list)


# =============================================================================
# Solver
# =============================================================================

_DEFAULT_SUPPORT_REL = 1e-8


class RadialSolver:
    """Explicit monotone solver for one model; instances own no shared state.

    Single-threaded per instance; independent instances may run concurrently
    (the parameter-sweep contract).
    """

    def __init__(self, model: ModelKind, cfl: float = 0.4):
        if not 0.0 < cfl <= 0.9:
            raise ConfigurationError(f"cfl must lie in (0, 0.9], got {cfl}")
        self.model = model
        self.cfl = float(cfl)
        self._model_id = MODEL_REL if model.is_relativistic else MODEL_SLPM

    # -- state construction ---------------------------------------------

    def init_state(self, grid: RadialGrid, datum) -> RadialState:
        if grid.dimension != self.model.dimension:
            raise ConfigurationError(
                f"grid dimension {grid.dimension} does not match model "
                f"dimension {self.model.dimension}"
            )
        supp = getattr(datum, "support_radius", None)
        if supp is not None and supp > grid.r_max * (1.0 + 1e-12):
            raise ConfigurationError(
                f"datum support radius {supp} exceeds the grid extent {grid.r_max}"
            )
        values = np.asarray(datum(grid.centers), dtype=float)
        if values.shape != grid.centers.shape:
            raise ConfigurationError("datum must return one value per cell")
        if not np.all(np.isfinite(values)):
            raise ConfigurationError("datum produced non-finite values")
        if np.any(values < 0.0):
            raise ConfigurationError("datum must be nonnegative")
        return RadialState(grid=grid, t=0.0, values=values)

    # -- stepping ---------------------------------------------------------

    def admissible_dt(self, state: RadialState) -> float:
        n = state.values.size
        F = np.empty(n + 1)
        kap = np.empty(n + 1)
        _faces(state.values, state.grid.h, self._model_id, self.model.exponent, F, kap)
        return _admissible_dt(kap, state.grid.face_areas, state.grid.volumes, self.cfl)

    def step(self, state: RadialState, dt: float) -> RadialState:
        """One explicit step; rejects steps beyond the admissible bound."""
        if not dt > 0.0:
            raise ValueError(f"dt must be positive, got {dt}")
        n = state.values.size
        F = np.empty(n + 1)
        kap = np.empty(n + 1)
        _faces(state.values, state.grid.h, self._model_id, self.model.exponent, F, kap)
        adm = _admissible_dt(kap, state.grid.face_areas, state.grid.volumes, self.cfl)
        if dt > adm * (1.0 + 1e-9):
            raise CFLViolationError(dt, adm)
        out = np.empty_like(state.values)
        _apply(state.values, out, F, state.grid.face_areas, state.grid.volumes, dt)
        return RadialState(grid=state.grid, t=state.t + dt, values=out)

    # -- runs --------------------------------------------------------------

    def run(
        self,
        state: RadialState,
        t_end: float,
        observe: Optional[ObserverSpec] = None,
        max_steps: int = 2_000_000_000,
    ) -> Tuple[RadialState, Optional[Trace]]:
        """Advance to t_end at the admissible step, sampling observers."""
        if t_end < state.t:
            raise ValueError(f"t_end={t_end} precedes state time {state.t}")
        grid = state.grid
        u = state.values.copy()
        thr = None
        obs_cell = -1
        if observe is not None:
            thr = observe.support_threshold
            if thr is None:
                vmax = float(np.max(u)) if u.size else 0.0
                thr = _DEFAULT_SUPPORT_REL * vmax if vmax > 0.0 else 1e-300
            if observe.x0_radius is not None:
                obs_cell = self._cell_at(grid, observe.x0_radius)

        targets = [t_end]
        if observe is not None:
            if observe.interval > 0.0:
                k = 1
                while state.t + k * observe.interval < t_end - 1e-15 * max(1.0, t_end):
                    targets.append(state.t + k * observe.interval)
                    k += 1
            targets.extend(
                ts for ts in observe.snapshot_times if state.t <= ts <= t_end
            )
        targets = sorted(set(targets))
        snap_pending = (
            sorted(ts for ts in observe.snapshot_times if state.t <= ts <= t_end)
            if observe is not None
            else []
        )
        snap_tol = 1e-12 * max(1.0, abs(t_end))

        rows_t, rows_mass, rows_supp, rows_obs = [], [], [], []
        snapshots: List[Tuple[float, np.ndarray]] = []

        def sample(t_now: float):
            if not np.all(np.isfinite(u)):
                raise SolverFailureError(f"non-finite state at t={t_now}")
            rows_t.append(t_now)
            rows_mass.append(float(u @ grid.volumes))
            above = np.nonzero(u > thr)[0] if thr is not None else np.empty(0, int)
            rows_supp.append(float(grid.edges[above[-1] + 1]) if above.size else 0.0)
            if obs_cell >= 0:
                rows_obs.append(float(u[obs_cell]))
            while snap_pending and snap_pending[0] <= t_now + snap_tol:
                snapshots.append((snap_pending.pop(0), u.copy()))

        t = state.t
        steps_left = max_steps
        if observe is not None:
            sample(t)
        for target in targets:
            if target <= t:
                continue
            t, used, _ = _advance(
                u,
                grid.face_areas,
                grid.volumes,
                grid.h,
                self._model_id,
                self.model.exponent,
                self.cfl,
                t,
                target,
                steps_left,
                -1,
                0.0,
            )
            steps_left -= used
            if observe is not None:
                sample(t)
            if steps_left <= 0 and t < t_end:
                raise SolverFailureError(
                    f"step budget {max_steps} exhausted at t={t} before t_end={t_end}"
                )
        if not np.all(np.isfinite(u)):
            raise SolverFailureError(f"non-finite state at t={t}")

        final = RadialState(grid=grid, t=t, values=u)
        trace = None
        if observe is not None:
            trace = Trace(
                t=np.asarray(rows_t),
                mass=np.asarray(rows_mass),
                support_radius=np.asarray(rows_supp),
                u_at_x0=np.asarray(rows_obs) if obs_cell >= 0 else None,
                snapshots=snapshots,
            )
        return final, trace

    def run_steps(self, state: RadialState, n_steps: int) -> RadialState:
        """Advance exactly n_steps admissible steps (conservation probes)."""
        u = state.values.copy()
        grid = state.grid
        t, used, _ = _advance(
            u,
            grid.face_areas,
            grid.volumes,
            grid.h,
            self._model_id,
            self.model.exponent,
            self.cfl,
            state.t,
            math.inf,
            n_steps,
            -1,
            0.0,
        )
        if used != n_steps:
            raise SolverFailureError(f"advance stalled after {used} steps")
        if not np.all(np.isfinite(u)):
            raise SolverFailureError(f"non-finite state at t={t}")
        return RadialState(grid=grid, t=t, values=u)

    # -- waiting time -------------------------------------------------------

    @staticmethod
    def _cell_at(grid: RadialGrid, radius: float) -> int:
        """First cell whose left edge is at or beyond ``radius``."""
        idx = int(np.searchsorted(grid.edges, radius - 1e-12 * grid.r_max, "left"))
        if idx >= grid.cells:
            raise ConfigurationError(
                f"observation radius {radius} has no cell inside the grid"
            )
        return idx

    def measure_waiting_time(
        self,
        datum,
        x0_offset: float,
        threshold: float,
        t_max: float,
        grid: RadialGrid,
        L: Optional[float] = None,
        C: Optional[float] = None,
        observe_interval: Optional[float] = None,
        max_steps: int = 2_000_000_000,
    ) -> Tuple[WaitingTimeReport, Trace]:
        """First time the observation cell exceeds the threshold.

        The datum must be supported on the near side of the observation
        cell.  Returns t_max (flagged inconclusive) when no crossing occurs.
        When L is supplied the analytic upper bound is attached; the lower
        bound additionally needs the external constant C.
        """
        if not threshold > 0.0:
            raise ConfigurationError(f"threshold must be positive, got {threshold}")
        if not t_max > 0.0:
            raise ConfigurationError(f"t_max must be positive, got {t_max}")
        state = self.init_state(grid, datum)
        obs_cell = self._cell_at(grid, x0_offset)
        if state.values[obs_cell] >= threshold:
            raise ConfigurationError(
                "datum already covers the observation cell at the threshold level"
            )

        u = state.values.copy()
        thr_support = _DEFAULT_SUPPORT_REL * max(state.vmax(), 1e-300)
        chunk = observe_interval if observe_interval else t_max / 256.0
        rows_t, rows_mass, rows_supp, rows_obs = [], [], [], []

        def sample(t_now: float):
            rows_t.append(t_now)
            rows_mass.append(float(u @ grid.volumes))
            above = np.nonzero(u > thr_support)[0]
            rows_supp.append(float(grid.edges[above[-1] + 1]) if above.size else 0.0)
            rows_obs.append(float(u[obs_cell]))

        t = 0.0
        sample(t)
        crossing = -1.0
        steps_left = max_steps
        while t < t_max and crossing < 0.0 and steps_left > 0:
            target = min(t + chunk, t_max)
            t, used, crossing = _advance(
                u,
                grid.face_areas,
                grid.volumes,
                grid.h,
                self._model_id,
                self.model.exponent,
                self.cfl,
                t,
                target,
                steps_left,
                obs_cell,
                threshold,
            )
            steps_left -= used
            if not np.all(np.isfinite(u)):
                raise SolverFailureError(f"non-finite state at t={t}")
            sample(t)
        if crossing < 0.0 and t < t_max:
            raise SolverFailureError(
                f"step budget {max_steps} exhausted at t={t} before t_max={t_max}"
            )

        conclusive = crossing >= 0.0
        t_star = crossing if conclusive else t_max
        T_upper = None
        T_lower = None
        if L is not None:
            T_upper, _ = _bounds.upper_bound_T_u(L, self.model.dimension, self.model)
            if C is not None:
                T_lower = _bounds.lower_bound_T_ell(L, C, self.model)
        report = WaitingTimeReport(
            t_star_measured=t_star,
            threshold=threshold,
            x0_cell=obs_cell,
            T_lower=T_lower,
            T_upper=T_upper,
            L_used=L,
            conclusive=conclusive,
            t_max=t_max,
            cells=grid.cells,
        )
        trace = Trace(
            t=np.asarray(rows_t),
            mass=np.asarray(rows_mass),
            support_radius=np.asarray(rows_supp),
            u_at_x0=np.asarray(rows_obs),
            snapshots=[],
        )
        return report, trace
