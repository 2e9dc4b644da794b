"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Criteria combine
exact-constant checks, analytic-residual certification on sampled grids,
structural solver properties, and the waiting-time bound/scaling study.
"""

import dataclasses
import math

import numpy as np

import fluxsat as fs
from fluxsat.subsolutions import _G_grid

REL2 = fs.relativistic_pm(2.0, 1)
SLPM2 = fs.speed_limited_pm(2.0, 1)

# SLPM runs append (label, max support-growth excess, budget 2h) here; the
# finite-speed criterion asserts over everything collected plus its own run.
_FINITE_SPEED_LOG = []


def _report(n: int, ok: bool, msg: str):
    print(f"[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'} - {msg}")
    assert ok, f"criterion {n} failed: {msg}"


def _check_finite_speed(label: str, trace, h: float):
    growth = trace.support_radius - trace.support_radius[0]
    excess = float(np.max(growth - trace.t))
    _FINITE_SPEED_LOG.append((label, excess, 2.0 * h))
    assert excess <= 2.0 * h, f"finite speed violated in {label}: {excess} > {2*h}"


def test_01_constant_reproduction():
    ok = fs.upper_bound_T_u(1.0, 1, REL2)[1] == 4.0**2
    ok &= fs.upper_bound_T_u(1.0, 3, REL2)[1] == 16.0
    ok &= fs.upper_bound_T_u(1.0, 1, fs.relativistic_pm(2.5, 1))[1] == 4.0**2.5
    rng = np.random.default_rng(1)
    for _ in range(10):
        N = int(rng.integers(1, 4))
        M = float(1.2 + 2.0 * rng.random())
        p, _ = fs.synthesize_M_params(float(0.5 + rng.random()), 1.0, N, M)
        ok &= p.K == 2.0 * N * (M - 1.0)
    _report(1, ok, "W = 4^m exactly and K = 2N(M-1) exactly on 10 random (N, M)")


def test_02_m_family_certification():
    worst = -math.inf
    min_slack = math.inf
    ok = True
    for L, R, N, M in [(1.0, 1.0, 1, 2.0), (1.0, 1.0, 2, 2.0), (2.0, 1.0, 1, 3.0)]:
        p, _ = fs.synthesize_M_params(L, R, N, M)
        rep = fs.certify_m_family(p, n_t=200, n_y=200)
        ok &= rep.passed
        worst = max(worst, rep.max_residual)
        min_slack = min(min_slack, rep.min_slack)
    _report(
        2,
        ok and min_slack >= 0.0,
        f"bulk residual <= tolerance on 200x200 grids (worst {worst:.2e}), "
        f"window slacks >= 0 (min {min_slack:.2e})",
    )


def test_03_rel_family_certification():
    ok = True
    worst_gap = math.inf
    worst_rh = 0.0
    worst_jump = -math.inf
    for L, R, N, m in [(1.0, 1.0, 1, 2.0), (2.0, 1.0, 1, 2.0), (1.0, 1.0, 2, 3.0)]:
        p, _ = fs.synthesize_rel_params(L, R, N, m)
        rep = fs.certify_rel_family(p)
        ok &= rep.passed
        worst_gap = min(worst_gap, rep.min_slack)

        # Rankine-Hugoniot identity in the unscaled frame (|r' - A^(1-m)|)
        twin = dataclasses.replace(p, U=1.0)
        h = 1e-6
        for t in np.linspace(0.01, 0.9 * twin.horizon, 40):
            num = (
                fs.front_radius_rel(t + h, twin) - fs.front_radius_rel(t - h, twin)
            ) / (2.0 * h)
            A = ((m - 1.0) * (1.0 + p.gamma * t)) ** (1.0 / (m - 1.0))
            worst_rh = max(worst_rh, abs(num - A ** (1.0 - m)))
        ok &= worst_rh <= 1e-5

        # jump inequality: lhs <= 0 = rhs on 20 random truncation pairs
        rng = np.random.default_rng(5)
        t_mid = 0.5 * p.scaled_horizon
        u_plus = fs.rel_plus_level(t_mid, p)
        for _ in range(20):
            a = float(u_plus * (0.02 + 0.5 * rng.random()))
            b = float(a + u_plus * (0.05 + 0.6 * rng.random()))
            a2 = float(u_plus * (0.02 + 0.5 * rng.random()))
            b2 = float(a2 + u_plus * (0.05 + 0.6 * rng.random()))
            lhs, rhs = fs.jump_check_rel(t_mid, p, (a, b), (a2, b2))
            worst_jump = max(worst_jump, lhs, abs(rhs))
            ok &= lhs <= 1e-12 and abs(rhs) <= 1e-12
    _report(
        3,
        ok,
        f"gamma-G >= 0 sampled (min {worst_gap:.2e}), RH error <= 1e-5 "
        f"(worst {worst_rh:.2e}), jump lhs <= 0 = rhs (worst {worst_jump:.2e})",
    )


def test_04_gamma0_oracle_equivalence():
    got = fs.gamma0(1, 2.0, 1.0, 1.0)

    # exhaustive 2000x2000 oracle over the search region, excluding the
    # provably negative band near the front, with a local zoom at the argmax
    N, m, T, r1 = 1, 2.0, 1.0, 1.0
    rho = np.linspace(r1 / 2.0, r1 + math.log1p(T) / (m - 1.0), 2000)
    frac = np.linspace(0.0, 1.0 - 1e-3, 2000)
    P, Q = np.meshgrid(rho, frac, indexing="ij")
    G = _G_grid(P, Q * P, N, m)
    i, j = np.unravel_index(np.argmax(G), G.shape)
    best = float(G[i, j])
    drho = rho[1] - rho[0]
    dfrac = frac[1] - frac[0]
    zoom_rho = np.linspace(
        max(rho[0], rho[i] - drho), min(rho[-1], rho[i] + drho), 201
    )
    zoom_frac = np.linspace(
        max(0.0, frac[j] - dfrac), min(1.0 - 1e-3, frac[j] + dfrac), 201
    )
    Pz, Qz = np.meshgrid(zoom_rho, zoom_frac, indexing="ij")
    best = max(best, float(np.max(_G_grid(Pz, Qz * Pz, N, m))))
    oracle = max(best, 1.0)

    ok = abs(got - oracle) <= 0.01 * oracle
    _report(4, ok, f"gamma0 = {got:.6f} vs brute-force oracle {oracle:.6f}")


def test_05_discrete_conservation():
    p, _ = fs.synthesize_M_params(1.0, 1.0, 1, 2.0)
    solver = fs.RadialSolver(SLPM2)
    grid = fs.RadialGrid(1, 2.0, 1024)
    state = solver.init_state(grid, fs.SubsolutionSnapshot(fs.RadialSubsolution(p)))
    out = solver.run_steps(state, 10_000)
    drift = abs(out.mass() - state.mass()) / state.mass()

    # support trace over the same window for the finite-speed criterion
    _, trace = solver.run(state, out.t, observe=fs.ObserverSpec(interval=out.t / 32))
    _check_finite_speed("conservation run", trace, grid.h)

    _report(5, drift < 1e-10, f"mass drift {drift:.2e} over 10^4 steps, 1024 cells")


def test_06_discrete_comparison():
    # order preservation on 100 random ordered pairs at the admissible step
    grid64 = fs.RadialGrid(1, 1.0, 64)
    pairs_ok = True
    for model in (SLPM2, REL2):
        solver = fs.RadialSolver(model)
        for k in range(100):
            rng = np.random.default_rng(k)
            lo = rng.random(64)
            hi = lo + rng.random(64) * 0.5
            dt = min(
                solver.admissible_dt(fs.RadialState(grid64, 0.0, lo)),
                solver.admissible_dt(fs.RadialState(grid64, 0.0, hi)),
            )
            out_lo = solver.step(fs.RadialState(grid64, 0.0, lo), dt)
            out_hi = solver.step(fs.RadialState(grid64, 0.0, hi), dt)
            pairs_ok &= bool(np.all(out_hi.values >= out_lo.values - 1e-14))

    # dominated subsolution stays below the evolved solution
    p, _ = fs.synthesize_M_params(1.0, 1.0, 1, 2.0)
    violations = []
    for cells in (1024, 2048):
        rep = fs.comparison_test(
            SLPM2,
            p,
            margin=0.05,
            grid=fs.RadialGrid(1, 2.0, cells),
            t_end=0.8 * p.lifetime,
            cfl=0.85,
        )
        violations.append(max(0.0, -rep.min_gap))
        if cells == 1024:
            gap_ok = rep.min_gap >= -0.05 * rep.initial_max
            _check_finite_speed("comparison run", rep.trace, 2.0 / cells)
    shrink_ok = violations[1] <= violations[0] + 1e-15
    _report(
        6,
        pairs_ok and gap_ok and shrink_ok,
        f"monotone pairs ok, min gap {-violations[0]:.2e} >= -0.05 umax, "
        f"violation {violations[0]:.2e} -> {violations[1]:.2e} under refinement",
    )


def test_07_waiting_time_bound_and_scaling():
    config = fs.WaitingTimeStudyConfig(cells=1024, cfl=0.85, t_max_factor=1.5)

    rel = fs.scaling_study(REL2, [1.0, 2.0, 4.0], config)
    bound_ok = True
    for L, rep in zip(rel.L_values, rel.reports):
        bound_ok &= rep.conclusive
        bound_ok &= 0.0 < rep.t_star_measured <= 1.1 * (16.0 / L)
    rel_slope_ok = -1.25 <= rel.slope <= -0.75

    slpm = fs.scaling_study(SLPM2, [1.0, 2.0, 4.0], config)
    slpm_slope_ok = -1.25 <= slpm.slope <= -0.75
    slpm_ok = all(rep.conclusive for rep in slpm.reports) and all(slpm.within_upper)
    for L, trace in zip(slpm.L_values, slpm.traces):
        scale = L ** (1.0 - SLPM2.exponent)
        _check_finite_speed(
            f"waiting-time run L={L}", trace, config.r_max * scale / config.cells
        )

    _report(
        7,
        bound_ok and rel_slope_ok and slpm_slope_ok and slpm_ok,
        f"relativistic t* in (0, 1.1*16/L], slope {rel.slope:.4f}; "
        f"speed-limited slope {slpm.slope:.4f} (window [-1.25, -0.75])",
    )


def test_08_finite_speed():
    # representative fresh run plus everything logged by the other criteria
    p, _ = fs.synthesize_M_params(1.0, 1.0, 1, 2.0)
    solver = fs.RadialSolver(SLPM2, cfl=0.85)
    grid = fs.RadialGrid(1, 2.0, 1024)
    state = solver.init_state(grid, fs.SubsolutionSnapshot(fs.RadialSubsolution(p)))
    _, trace = solver.run(state, 3.0, observe=fs.ObserverSpec(interval=0.05))
    _check_finite_speed("dedicated run", trace, grid.h)

    ok = all(excess <= budget for _, excess, budget in _FINITE_SPEED_LOG)
    worst = max(excess for _, excess, _ in _FINITE_SPEED_LOG)
    _report(
        8,
        ok,
        f"support growth <= t + 2h on {len(_FINITE_SPEED_LOG)} SLPM runs "
        f"(worst excess {worst:.2e})",
    )


def test_09_scaling_identities():
    rng = np.random.default_rng(9)

    # speed-limited family: member with s = U^(1-M) vs the s = 1 member
    base = fs.MSubParams(M=2.0, N=1, b=10.0, ell=1.2, K=2.0, w=0.21, s=1.0,
                         center=(0.0,))
    ok = True
    worst = 0.0
    for _ in range(1000):
        U = 0.3 + 2.0 * rng.random()
        scaled = dataclasses.replace(base, s=U ** (1.0 - base.M))
        t = rng.random() * scaled.lifetime * 0.999
        x = (rng.random() - 0.5) * 4.0 * scaled.s
        lhs = fs.eval_M_sub(t, [x], scaled)
        rhs = fs.eval_M_sub(U ** (base.M - 1.0) * t, [U ** (base.M - 1.0) * x], base) / U
        err = abs(lhs - rhs) / max(abs(rhs), 1e-300) if rhs else abs(lhs)
        worst = max(worst, err)
        ok &= err <= 1e-12

    # relativistic family: amplitude-U member vs the U = 1 member
    base_r = fs.RelSubParams(m=2.0, N=1, gamma=2.0, r0=0.5, U=1.0, center=(0.0,),
                             horizon=10.0, r1=1.0)
    worst_r = 0.0
    for _ in range(1000):
        U = 0.3 + 2.0 * rng.random()
        scaled = dataclasses.replace(base_r, U=U)
        t = rng.random() * scaled.scaled_horizon * 0.999
        x = (rng.random() - 0.5) * 5.0
        lhs = fs.eval_rel_sub(t, [x], scaled)
        rhs = U * fs.eval_rel_sub(U ** (base_r.m - 1.0) * t, [x], base_r)
        err = abs(lhs - rhs) / max(abs(rhs), 1e-300) if rhs else abs(lhs)
        worst_r = max(worst_r, err)
        ok &= err <= 1e-12

    _report(
        9,
        ok,
        f"closed-form scaling identities at 1000 random points each "
        f"(worst rel err {worst:.2e} / {worst_r:.2e})",
    )
