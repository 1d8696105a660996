#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from src.core.errors import ClassSpectrumMismatch, EmptyRange, InvalidArgument, NonPositiveScale
from src.core.spectra import ComplexPair, DiagonalTriple, MatrixClass, RealTriple
from src.verification.oracle import (
    ScanConfig,
    gap_allowance,
    necessity_trial,
    omega_scan,
    random_matrix,
    range_audit,
)


@pytest.fixture
def cfg():
    return ScanConfig(grid_n=200, seed=0, trials=200)


@pytest.mark.parametrize("matrix_class", list(MatrixClass))
@pytest.mark.parametrize("seed", [0, 1, 7])
def test_random_matrix_lands_in_class(matrix_class, seed):
    m = random_matrix(matrix_class, 2.5, seed)
    a = m.entries
    assert (a >= 0).all()
    if matrix_class in (MatrixClass.SYMMETRIC, MatrixClass.SYMMETRIC_STOCHASTIC):
        assert np.allclose(a, a.T, atol=0)
    if matrix_class.is_stochastic:
        assert np.allclose(m.row_sums(), 2.5, atol=1e-12)
    if matrix_class in (MatrixClass.SYMMETRIC_STOCHASTIC, MatrixClass.DOUBLY_STOCHASTIC):
        assert np.allclose(m.col_sums(), 2.5, atol=1e-12)


def test_random_matrix_is_seeded():
    assert random_matrix(MatrixClass.DOUBLY_STOCHASTIC, seed=5) == random_matrix(MatrixClass.DOUBLY_STOCHASTIC, seed=5)
    assert random_matrix(MatrixClass.GENERAL, seed=5) != random_matrix(MatrixClass.GENERAL, seed=6)


@pytest.mark.parametrize("scale", [0.0, -1.0, math.nan])
def test_random_matrix_rejects_scale(scale):
    with pytest.raises(NonPositiveScale):
        random_matrix(MatrixClass.GENERAL, scale)


@pytest.mark.parametrize(
    "kwargs",
    [{"grid_n": 1}, {"grid_n": 10.0}, {"seed": -1}, {"seed": 2 ** 64}, {"trials": -1}],
)
def test_scan_config_validation(kwargs):
    with pytest.raises(InvalidArgument):
        ScanConfig(**kwargs)


def test_scan_config_from_settings():
    cfg = ScanConfig.from_settings({"scan": {"grid_n": 50, "seed": 3}}, trials=5, seed=None)
    assert (cfg.grid_n, cfg.seed, cfg.trials) == (50, 3, 5)


def test_zero_trials():
    result = necessity_trial(MatrixClass.GENERAL, ScanConfig(trials=0))
    assert result.trials == 0
    assert result.failures == []


@pytest.mark.parametrize("matrix_class", list(MatrixClass))
def test_no_counterexamples(matrix_class, cfg):
    result = necessity_trial(matrix_class, cfg)
    assert result.trials == 200
    assert result.failures == []


@pytest.mark.slow
@pytest.mark.parametrize("matrix_class", list(MatrixClass))
@pytest.mark.parametrize("seed", range(10))
def test_no_counterexamples_full(matrix_class, seed):
    result = necessity_trial(matrix_class, ScanConfig(seed=seed, trials=10_000))
    assert result.failures == []


def test_necessity_trial_is_deterministic():
    cfg = ScanConfig(seed=42, trials=20)
    first = [random_matrix(MatrixClass.STOCHASTIC, 1.0, np.random.default_rng([cfg.seed, t])) for t in range(3)]
    second = [random_matrix(MatrixClass.STOCHASTIC, 1.0, np.random.default_rng([cfg.seed, t])) for t in range(3)]
    assert first == second
    assert necessity_trial(MatrixClass.STOCHASTIC, cfg) == necessity_trial(MatrixClass.STOCHASTIC, cfg)


def test_scan_finds_witness(half_quarter_spectrum, cfg):
    result = omega_scan(MatrixClass.GENERAL, half_quarter_spectrum, 0.75, cfg)
    assert result.feasible
    assert result.witness == DiagonalTriple(0.75, 0.5, 0.5)


def test_scan_below_range_is_infeasible(half_quarter_spectrum, cfg):
    result = omega_scan(MatrixClass.GENERAL, half_quarter_spectrum, 0.55, cfg)
    assert not result.feasible
    assert result.witness is None


def test_scan_above_doubly_stochastic_range(cfg):
    assert not omega_scan(MatrixClass.DOUBLY_STOCHASTIC, RealTriple(1.0, 0.4, 0.1), 0.72, cfg).feasible
    assert omega_scan(MatrixClass.DOUBLY_STOCHASTIC, RealTriple(1.0, 0.4, 0.1), 0.62, cfg).feasible


def test_scan_rejects_complex_symmetric(cfg):
    with pytest.raises(ClassSpectrumMismatch):
        omega_scan(MatrixClass.SYMMETRIC_STOCHASTIC, ComplexPair(1.0, 0.2, 0.3), 0.5, cfg)


def test_audit_general(half_quarter_spectrum, cfg):
    audit = range_audit(MatrixClass.GENERAL, half_quarter_spectrum, cfg)
    assert audit.formula.lo == pytest.approx(1.75 / 3)
    assert audit.formula.hi == pytest.approx(1.0)
    assert audit.max_endpoint_gap <= gap_allowance(cfg, half_quarter_spectrum)


def test_audit_symmetric_stochastic_point_range(cfg):
    audit = range_audit(MatrixClass.SYMMETRIC_STOCHASTIC, RealTriple(1.0, 0.0, 0.0), cfg)
    assert audit.empirical.lo == pytest.approx(1 / 3, abs=2e-3)
    assert audit.empirical.hi == pytest.approx(1 / 3, abs=2e-3)


def test_audit_doubly_stochastic(cfg):
    audit = range_audit(MatrixClass.DOUBLY_STOCHASTIC, RealTriple(1.0, 0.4, 0.1), cfg)
    assert audit.empirical.lo == pytest.approx(0.55, abs=0.01)
    assert audit.empirical.hi == pytest.approx(0.7, abs=0.01)


def test_audit_complex_stochastic(cfg):
    s = ComplexPair(1.0, 0.2, 0.3)
    audit = range_audit(MatrixClass.STOCHASTIC, s, cfg)
    assert audit.max_endpoint_gap <= gap_allowance(cfg, s)


def test_audit_of_unrealizable_spectrum(cfg):
    with pytest.raises(EmptyRange):
        range_audit(MatrixClass.SYMMETRIC_STOCHASTIC, RealTriple(1.0, 0.5, -0.9), cfg)


def test_gap_allowance_scales():
    assert gap_allowance(ScanConfig(grid_n=200), RealTriple(1.0, 0.0, 0.0)) == pytest.approx(0.01)
    assert gap_allowance(ScanConfig(grid_n=10_000), RealTriple(4.0, 0.0, 0.0)) == pytest.approx(4e-3)


def test_finer_grid_never_loses_feasibility(half_quarter_spectrum):
    coarse = ScanConfig(grid_n=21)
    fine = ScanConfig(grid_n=41)
    for matrix_class in (MatrixClass.GENERAL, MatrixClass.SYMMETRIC, MatrixClass.DOUBLY_STOCHASTIC):
        for w1 in np.linspace(0.5, 1.05, 23):
            if omega_scan(matrix_class, half_quarter_spectrum, w1, coarse).feasible:
                assert omega_scan(matrix_class, half_quarter_spectrum, w1, fine).feasible, (matrix_class, w1)
