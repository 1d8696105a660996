"""
Brute-force validation of the closed-form results.

Random samplers draw matrices from each class to exercise the "only if"
direction; grid scans over the diagonal (trace equality leaves one free
coordinate once ω1 is fixed) measure the feasible ω1 interval empirically.
"""
import math
from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional

import numpy as np

from config.config import BISECTION_RESOLUTION, DEFAULT_GRID_N, DEFAULT_SEED, DEFAULT_TRIALS, SCAN_EQUALITY_REL_TOL
from src.core.bounds import Interval, omega1_range, sds_pair
from src.core.conditions import check, ensure_supported, realizable
from src.core.errors import ClassSpectrumMismatch, EmptyRange, InvalidArgument, NonPositiveScale
from src.core.spectra import (
    DiagonalTriple,
    Matrix3,
    MatrixClass,
    RealTriple,
    Spectrum,
    Tolerance,
    canonicalize_diagonal,
    elementary_symmetrics,
    resolve_tolerance,
)
from src.verification.eigen import char_poly, solve_cubic
from src.utils.logger import get_logger

logger = get_logger(__name__)

PERMUTATION_MATRICES = tuple(np.eye(3)[list(perm)] for perm in permutations(range(3)))
# ω1 candidates seeding the boundary bisection
COARSE_OMEGA1_POINTS = 41


@dataclass(frozen=True)
class ScanConfig:
    grid_n: int = DEFAULT_GRID_N
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    equality_rel: float = SCAN_EQUALITY_REL_TOL

    def __post_init__(self):
        if not isinstance(self.grid_n, int) or self.grid_n < 2:
            raise InvalidArgument(f"grid_n must be an integer >= 2, got {self.grid_n!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise InvalidArgument(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.trials, int) or self.trials < 0:
            raise InvalidArgument(f"trials must be a nonnegative integer, got {self.trials!r}")

    @classmethod
    def from_settings(cls, settings: dict, **overrides) -> "ScanConfig":
        scan = dict(settings.get("scan", {}))
        scan.update({key: value for key, value in overrides.items() if value is not None})
        return cls(
            grid_n=int(scan.get("grid_n", DEFAULT_GRID_N)),
            seed=int(scan.get("seed", DEFAULT_SEED)),
            trials=int(scan.get("trials", DEFAULT_TRIALS)),
            equality_rel=float(scan.get("equality_rel", SCAN_EQUALITY_REL_TOL)),
        )


@dataclass(frozen=True)
class NecessityResult:
    failures: List[Matrix3]
    trials: int


@dataclass(frozen=True)
class ScanResult:
    feasible: bool
    witness: Optional[DiagonalTriple] = None


@dataclass(frozen=True)
class AuditResult:
    empirical: Interval
    formula: Interval
    max_endpoint_gap: float


def gap_allowance(cfg: ScanConfig, s: Spectrum) -> float:
    """Largest endpoint gap a range audit may report at this grid resolution."""
    return max(2.0 / cfg.grid_n, 1e-3) * max(1.0, abs(s.lambda1))


def random_matrix(matrix_class: MatrixClass, scale: float = 1.0, seed=None) -> Matrix3:
    """seed: anything np.random.default_rng accepts, including a Generator."""
    if not scale > 0:
        raise NonPositiveScale(f"scale must be positive, got {scale!r}")
    rng = np.random.default_rng(seed)

    if matrix_class is MatrixClass.GENERAL:
        entries = rng.uniform(0.0, scale, size=(3, 3))
    elif matrix_class is MatrixClass.SYMMETRIC:
        general = rng.uniform(0.0, scale, size=(3, 3))
        entries = (general + general.T) / 2
    elif matrix_class is MatrixClass.STOCHASTIC:
        entries = rng.dirichlet(np.ones(3), size=3) * scale
    else:
        weights = rng.dirichlet(np.ones(len(PERMUTATION_MATRICES)))
        entries = np.tensordot(weights, np.stack(PERMUTATION_MATRICES), axes=1) * scale
        if matrix_class is MatrixClass.SYMMETRIC_STOCHASTIC:
            entries = (entries + entries.T) / 2
    return Matrix3(entries)


def necessity_trial(
    matrix_class: MatrixClass, cfg: ScanConfig, tol: Optional[Tolerance] = None
) -> NecessityResult:
    tol = resolve_tolerance(tol)
    failures = []
    for trial in range(cfg.trials):
        matrix = random_matrix(matrix_class, 1.0, np.random.default_rng([cfg.seed, trial]))
        spectrum = solve_cubic(char_poly(matrix), tol)
        diagonal = canonicalize_diagonal(matrix.diagonal())
        try:
            passed = check(matrix_class, spectrum, diagonal, tol).overall
        except ClassSpectrumMismatch:
            passed = False
        if not passed:
            logger.warning(f"Counterexample for {matrix_class.label} at trial {trial}: {matrix.to_list()}")
            failures.append(matrix)

    logger.info(f"Necessity trial {matrix_class.label}: {len(failures)} failures in {cfg.trials} trials")
    return NecessityResult(failures, cfg.trials)


def _scan_tolerance(matrix_class: MatrixClass, tol: Tolerance, cfg: ScanConfig) -> Tolerance:
    if matrix_class is MatrixClass.SYMMETRIC_STOCHASTIC:
        return Tolerance(rel=tol.rel, eq_rel=cfg.equality_rel)
    return tol


def omega_scan(
    matrix_class: MatrixClass, s: Spectrum, w1: float, cfg: ScanConfig, tol: Optional[Tolerance] = None
) -> ScanResult:
    ensure_supported(matrix_class, s)
    tol = resolve_tolerance(tol)
    scan_tol = _scan_tolerance(matrix_class, tol, cfg)
    e1, _, _ = elementary_symmetrics(s)
    rest = e1 - w1

    candidates = []
    lo2, hi2 = max(0.0, rest / 2), min(w1, rest)
    if lo2 <= hi2:
        candidates.extend((w2, rest - w2) for w2 in np.linspace(lo2, hi2, cfg.grid_n))
    if isinstance(s, RealTriple) and matrix_class in (
        MatrixClass.SYMMETRIC_STOCHASTIC,
        MatrixClass.DOUBLY_STOCHASTIC,
    ):
        pair = sds_pair(s, w1, tol)
        if pair is not None:
            candidates.append(pair)

    for w2, w3 in candidates:
        diagonal = canonicalize_diagonal((w1, float(w2), float(w3)))
        if abs(diagonal.w1 - w1) > tol.linear(s.lambda1):
            continue
        if check(matrix_class, s, diagonal, scan_tol).overall:
            return ScanResult(True, diagonal)
    return ScanResult(False, None)


def _bisect(matrix_class, s, good: float, bad: float, cfg, tol, resolution: float) -> float:
    while abs(good - bad) > resolution:
        middle = (good + bad) / 2
        if omega_scan(matrix_class, s, middle, cfg, tol).feasible:
            good = middle
        else:
            bad = middle
    return good


def range_audit(
    matrix_class: MatrixClass, s: Spectrum, cfg: ScanConfig, tol: Optional[Tolerance] = None
) -> AuditResult:
    tol = resolve_tolerance(tol)
    if not realizable(matrix_class, s, tol).satisfied:
        raise EmptyRange(f"{matrix_class.label} cannot realize Λ={s.values()}")

    formula = omega1_range(matrix_class, s, tol)
    e1, _, _ = elementary_symmetrics(s)
    resolution = BISECTION_RESOLUTION * max(1.0, abs(s.lambda1))

    candidates = set(np.linspace(0.0, max(e1, 0.0), COARSE_OMEGA1_POINTS).tolist())
    if not formula.empty:
        candidates.update((formula.lo, formula.midpoint, formula.hi))
    candidates = sorted(candidates)
    verdicts = [omega_scan(matrix_class, s, w1, cfg, tol).feasible for w1 in candidates]
    feasible = [w1 for w1, ok in zip(candidates, verdicts) if ok]

    if not feasible:
        logger.warning(f"range_audit found no feasible ω1 for {matrix_class.label} Λ={s.values()}")
        return AuditResult(Interval.empty_interval(), formula, math.inf)

    lo_good, hi_good = feasible[0], feasible[-1]
    below = [w1 for w1 in candidates if w1 < lo_good]
    above = [w1 for w1 in candidates if w1 > hi_good]
    lo = _bisect(matrix_class, s, lo_good, below[-1], cfg, tol, resolution) if below else lo_good
    hi = _bisect(matrix_class, s, hi_good, above[0], cfg, tol, resolution) if above else hi_good

    empirical = Interval(lo, hi)
    if formula.empty:
        gap = math.inf
    else:
        gap = max(abs(empirical.lo - formula.lo), abs(empirical.hi - formula.hi))
    logger.info(f"range_audit {matrix_class.label} Λ={s.values()}: empirical [{lo}, {hi}], gap {gap:.3e}")
    return AuditResult(empirical, formula, gap)
