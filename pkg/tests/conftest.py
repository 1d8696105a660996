#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from src.core.bounds import omega1_range
from src.core.conditions import realizable
from src.core.spectra import ComplexPair, MatrixClass, RealTriple, Tolerance
from src.utils.config_loader import default_rel_tol

# (class, spectrum kind) pairs covered by a condition set
CLASS_KINDS = [
    (MatrixClass.GENERAL, "real"),
    (MatrixClass.GENERAL, "complex"),
    (MatrixClass.SYMMETRIC, "real"),
    (MatrixClass.STOCHASTIC, "real"),
    (MatrixClass.STOCHASTIC, "complex"),
    (MatrixClass.SYMMETRIC_STOCHASTIC, "real"),
    (MatrixClass.DOUBLY_STOCHASTIC, "real"),
    (MatrixClass.DOUBLY_STOCHASTIC, "complex"),
]

# keeps sampled spectra away from repeated eigenvalues
MIN_ROOT_GAP = 1e-3


@pytest.fixture(autouse=True)
def _no_env_tolerance(monkeypatch):
    monkeypatch.delenv("NIEP3_TOL", raising=False)
    default_rel_tol.cache_clear()
    yield
    default_rel_tol.cache_clear()


@pytest.fixture
def tol():
    return Tolerance(rel=1e-9)


@pytest.fixture
def half_quarter_spectrum():
    return RealTriple(1.0, 0.5, 0.25)


def draw_spectrum(matrix_class: MatrixClass, kind: str, rng: np.random.Generator, scale: float = 1.0):
    """A random spectrum the class can realize with a nonempty ω1 range."""
    while True:
        if kind == "real":
            l2 = rng.uniform(-1.0, 1.0)
            l3 = rng.uniform(-1.0, l2)
            if 1.0 - l2 < MIN_ROOT_GAP or l2 - l3 < MIN_ROOT_GAP:
                continue
            s = RealTriple(1.0, l2, l3)
        else:
            b = rng.uniform(-0.5, 1.0)
            c = rng.uniform(0.0, (1.0 - b) / math.sqrt(3.0))
            if c < MIN_ROOT_GAP:
                continue
            s = ComplexPair(1.0, b, c)
        s = s.scaled(scale)
        if realizable(matrix_class, s).satisfied and not omega1_range(matrix_class, s).empty:
            return s
