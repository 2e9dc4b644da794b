"""Waiting-time bounds, growth estimation, and the scaling study."""

import math

import numpy as np
import pytest

import fluxsat as fs
from fluxsat.subsolutions import select_ell

REL2 = fs.relativistic_pm(2.0, 1)
REL3 = fs.relativistic_pm(3.0, 1)
SLPM2 = fs.speed_limited_pm(2.0, 1)
SLPM3 = fs.speed_limited_pm(3.0, 1)


def test_lower_bound_examples():
    assert fs.lower_bound_T_ell(1.0, 3.0, REL2) == pytest.approx(3.0, rel=1e-12)
    assert fs.lower_bound_T_ell(2.0, 1.0, REL2) == pytest.approx(0.5, rel=1e-12)
    assert fs.lower_bound_T_ell(2.0, 1.0, SLPM3) == pytest.approx(0.25, rel=1e-12)
    with pytest.raises(fs.ConfigurationError):
        fs.lower_bound_T_ell(1.0, None, REL2)


def test_upper_bound_relativistic_constant():
    T_u, W = fs.upper_bound_T_u(1.0, 1, REL2)
    assert W == 16.0  # 4^m at m = 2
    assert T_u == pytest.approx(16.0, rel=1e-12)
    # W depends only on the exponent for the relativistic model
    for N in (1, 2, 3):
        assert fs.upper_bound_T_u(1.0, N, REL2)[1] == 16.0
    assert fs.upper_bound_T_u(1.0, 1, REL3)[1] == 64.0
    assert fs.upper_bound_T_u(4.0, 1, REL2)[0] == pytest.approx(4.0, rel=1e-12)


def test_upper_bound_speed_limited_constant():
    # W = 2^(M-1) / (K (ell-1)) with the half-gap ell policy
    T_u, W = fs.upper_bound_T_u(1.0, 1, SLPM2)
    ell, _ = select_ell(1, 2.0)
    assert W == pytest.approx(1.0 / (ell - 1.0), rel=1e-12)
    assert W == pytest.approx(6.0266, rel=1e-3)
    assert T_u == pytest.approx(W, rel=1e-12)


def test_upper_bound_matches_synthesis():
    for N, M, L in [(1, 2.0, 1.0), (2, 2.0, 3.0), (1, 3.0, 0.5)]:
        model = fs.speed_limited_pm(M, N)
        _, T_u_synth = fs.synthesize_M_params(L, 1.0, N, M)
        T_u, _ = fs.upper_bound_T_u(L, N, model)
        assert T_u == pytest.approx(T_u_synth, rel=1e-12)


def test_upper_bound_homothety():
    for model in (REL2, REL3, SLPM2, SLPM3):
        base, _ = fs.upper_bound_T_u(1.3, 1, model)
        for lam in (2.0, 10.0):
            scaled, _ = fs.upper_bound_T_u(lam * 1.3, 1, model)
            assert scaled == pytest.approx(
                lam ** (1.0 - model.exponent) * base, rel=1e-12
            )


def test_estimate_growth_linear_profile():
    # u0 = L0 |x| with exponent 1/(m-1) = 1: the ratio is exactly L0
    est = fs.estimate_growth_coefficient(
        lambda pts: 2.0 * np.abs(pts[:, 0]), [0.0], [-1.0], 1.0
    )
    assert abs(est - 2.0) / 2.0 < 0.02


def test_estimate_growth_zero_datum():
    est = fs.estimate_growth_coefficient(
        lambda pts: np.zeros(len(pts)), [0.0], [-1.0], 1.0
    )
    assert est == 0.0


def test_estimate_growth_subcritical_datum():
    # |x|^(1/2) tested against exponent 1 grows slower than the critical power
    est = fs.estimate_growth_coefficient(
        lambda pts: np.abs(pts[:, 0]) ** 0.5, [0.0], [-1.0], 1.0
    )
    assert est == math.inf


def test_estimate_growth_scale_invariance():
    base = fs.estimate_growth_coefficient(
        lambda pts: 2.0 * np.abs(pts[:, 0]), [0.0], [-1.0], 1.0
    )
    scaled = fs.estimate_growth_coefficient(
        lambda pts: 3.0 * 2.0 * np.abs(pts[:, 0]), [0.0], [-1.0], 1.0
    )
    assert scaled == pytest.approx(3.0 * base, rel=1e-6)


def test_estimate_growth_two_dimensional():
    est = fs.estimate_growth_coefficient(
        lambda pts: 1.5 * np.linalg.norm(pts, axis=1) ** 2,
        [0.0, 0.0],
        [-1.0, 0.0],
        2.0,
    )
    assert abs(est - 1.5) / 1.5 < 0.02


def test_scaling_study_requires_three_values():
    with pytest.raises(fs.ConfigurationError):
        fs.scaling_study(REL2, [1.0, 2.0])
    with pytest.raises(fs.ConfigurationError):
        fs.scaling_study(REL2, [1.0, -2.0, 4.0])


def test_scaling_study_smoke():
    config = fs.WaitingTimeStudyConfig(cells=128, cfl=0.85, t_max_factor=1.5)
    result = fs.scaling_study(REL2, [1.0, 2.0, 4.0], config)
    assert all(rep.conclusive for rep in result.reports)
    assert -1.25 <= result.slope <= -0.75
    assert all(result.within_upper)
    rows = result.rows()
    assert len(rows) == 3 and rows[0][0] == 1.0
    summary = result.summary()
    assert summary["n_conclusive"] == 3 and summary["all_within_upper"]


def test_scaling_study_parallel_matches_serial():
    config = fs.WaitingTimeStudyConfig(cells=128, cfl=0.85, t_max_factor=1.5)
    serial = fs.scaling_study(SLPM2, [1.0, 2.0, 4.0], config, jobs=1)
    parallel = fs.scaling_study(SLPM2, [1.0, 2.0, 4.0], config, jobs=3)
    for a, b in zip(serial.reports, parallel.reports):
        assert a.t_star_measured == b.t_star_measured
