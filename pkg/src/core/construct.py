"""
Explicit realizing matrices for feasible (class, spectrum, diagonal) inputs,
the 2x2 constructions, and normalization of stochastic outputs to λ1 = 1.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from src.core.bounds import checked_sqrt
from src.core.conditions import check, check_pair, sds_quantities
from src.core.errors import InfeasibleInput, InvalidArgument, NegativeEntry, NonPositiveScale
from src.core.spectra import (
    STOCHASTIC_CLASSES,
    ComplexPair,
    DiagonalTriple,
    Matrix3,
    MatrixClass,
    PairDiagonal,
    PairSpectrum,
    Spectrum,
    Tolerance,
    elementary_symmetrics,
    resolve_tolerance,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ConstructionResult:
    matrix: Matrix3
    matrix_class: MatrixClass
    auxiliaries: Dict[str, float] = field(default_factory=dict)


def _clamp_entries(entries: np.ndarray, threshold: float, what: str) -> np.ndarray:
    lowest = float(entries.min())
    if lowest < -threshold:
        raise NegativeEntry(f"{what} has entry {lowest!r} below -{threshold!r}")
    negative = entries < 0
    if negative.any():
        logger.debug(f"Clamped {int(negative.sum())} tiny negative entries of {what} to 0")
        entries = np.where(negative, 0.0, entries)
    return entries


def _general(s: Spectrum, d: DiagonalTriple, tol: Tolerance):
    w1, w2, w3 = d.values()
    e2_gap = elementary_symmetrics(d)[1] - elementary_symmetrics(s)[1]
    if isinstance(s, ComplexPair):
        corner = (s.a - w1) * ((w1 - s.b) ** 2 + s.c ** 2)
    else:
        corner = (s.l1 - w1) * (s.l2 - w1) * (s.l3 - w1)
    entries = [
        [w1, 0.0, corner],
        [1.0, w2, e2_gap],
        [0.0, 1.0, w3],
    ]
    return entries, {"corner": corner, "e2_gap": e2_gap}


def _stochastic(s: Spectrum, d: DiagonalTriple, tol: Tolerance):
    w1, w2, w3 = d.values()
    lambda1 = s.lambda1
    e2_gap = elementary_symmetrics(d)[1] - elementary_symmetrics(s)[1]
    denominator = lambda1 - w3
    if denominator > tol.linear(lambda1):
        p = e2_gap / denominator
        if isinstance(s, ComplexPair):
            lower_left = ((w1 - s.b) ** 2 + s.c ** 2) / denominator
        else:
            lower_left = (w1 - s.l2) * (w1 - s.l3) / denominator
    else:
        # λ1 = ω3 forces Λ = Ω = (λ1, λ1, λ1)
        p = 0.0
        lower_left = lambda1 - w2
    entries = [
        [w1, 0.0, lambda1 - w1],
        [lower_left, w2, p],
        [0.0, lambda1 - w3, w3],
    ]
    return entries, {"p": p, "e2_gap": e2_gap, "direct_lower_left": lambda1 - w2 - p}


def _symmetric(s: Spectrum, d: DiagonalTriple, tol: Tolerance):
    w1, w2, w3 = d.values()
    l1, l2, _ = s.values()
    alpha = l1 + l2 - w1 - w2
    beta = l1 + l2 - w1 - w3
    gamma = (l1 - w1) * (w1 - l2)
    aux = {"alpha": alpha, "beta": beta, "gamma": gamma}
    threshold = tol.quadratic(l1)

    if alpha + beta <= tol.linear(l1):
        logger.debug(f"Symmetric construction degenerate (α+β={alpha + beta}); returning diag(Ω)")
        return [[w1, 0.0, 0.0], [0.0, w2, 0.0], [0.0, 0.0, w3]], aux

    a12 = checked_sqrt(beta * gamma / (alpha + beta), threshold, "symmetric (1,2)")
    a13 = checked_sqrt(alpha * gamma / (alpha + beta), threshold, "symmetric (1,3)")
    a23 = checked_sqrt(alpha * beta, threshold, "symmetric (2,3)")
    entries = [
        [w1, a12, a13],
        [a12, w2, a23],
        [a13, a23, w3],
    ]
    return entries, aux


def _half_sum(s: Spectrum) -> float:
    if isinstance(s, ComplexPair):
        return s.b
    return (s.l2 + s.l3) / 2


def _symmetric_stochastic(s: Spectrum, d: DiagonalTriple, tol: Tolerance):
    w1, w2, w3 = d.values()
    m = _half_sum(s)
    a12, a13, a23 = w3 - m, w2 - m, w1 - m
    entries = [
        [w1, a12, a13],
        [a12, w2, a23],
        [a13, a23, w3],
    ]
    return entries, {"m": m, "s": w3 - m}


def _doubly_stochastic(s: Spectrum, d: DiagonalTriple, tol: Tolerance):
    w1, w2, w3 = d.values()
    m = _half_sum(s)
    slack_s, v = sds_quantities(s, d)
    w = slack_s ** 2 - v
    root = checked_sqrt(w, tol.quadratic(s.lambda1), "W")
    entries = [
        [w1, w3 - m + root, w2 - m - root],
        [w3 - m - root, w2, w1 - m + root],
        [w2 - m + root, w1 - m - root, w3],
    ]
    return entries, {"m": m, "s": slack_s, "V": v, "W": w, "sqrt_W": root}


_BUILDERS = {
    MatrixClass.GENERAL: _general,
    MatrixClass.STOCHASTIC: _stochastic,
    MatrixClass.SYMMETRIC: _symmetric,
    MatrixClass.SYMMETRIC_STOCHASTIC: _symmetric_stochastic,
    MatrixClass.DOUBLY_STOCHASTIC: _doubly_stochastic,
}


def construct(
    matrix_class: MatrixClass, s: Spectrum, d: DiagonalTriple, tol: Optional[Tolerance] = None
) -> ConstructionResult:
    tol = resolve_tolerance(tol)
    report = check(matrix_class, s, d, tol)
    if not report.overall:
        raise InfeasibleInput(
            f"{matrix_class.label} conditions {list(report.failed_labels())} fail for Λ={s.values()} Ω={d.values()}",
            report,
        )

    entries, auxiliaries = _BUILDERS[matrix_class](s, d, tol)
    array = _clamp_entries(np.array(entries, dtype=float), tol.linear(s.lambda1), matrix_class.label)
    # diagonal is assigned, never computed
    np.fill_diagonal(array, d.values())

    result = ConstructionResult(Matrix3(array), matrix_class, {k: float(v) for k, v in auxiliaries.items()})
    logger.info(f"Constructed {matrix_class.label} matrix for Λ={s.values()} Ω={d.values()}")
    return result


def construct_pair(
    matrix_class: MatrixClass, s: PairSpectrum, d: PairDiagonal, tol: Optional[Tolerance] = None
) -> np.ndarray:
    tol = resolve_tolerance(tol)
    report = check_pair(matrix_class, s, d, tol)
    if not report.overall:
        raise InfeasibleInput(
            f"2x2 {matrix_class.label} conditions {list(report.failed_labels())} fail "
            f"for Λ=({s.l1}, {s.l2}) Ω=({d.w1}, {d.w2})",
            report,
        )

    gap = d.w1 * d.w2 - s.l1 * s.l2
    if matrix_class is MatrixClass.GENERAL:
        entries = [[d.w1, gap], [1.0, d.w2]]
    elif matrix_class is MatrixClass.SYMMETRIC:
        root = math.sqrt(max(gap, 0.0))
        entries = [[d.w1, root], [root, d.w2]]
    elif matrix_class is MatrixClass.STOCHASTIC:
        entries = [[d.w1, s.l1 - d.w1], [s.l1 - d.w2, d.w2]]
    else:
        half, spread = (s.l1 + s.l2) / 2, (s.l1 - s.l2) / 2
        entries = [[half, spread], [spread, half]]

    array = _clamp_entries(np.array(entries, dtype=float), tol.linear(s.l1), f"2x2 {matrix_class.label}")
    array.setflags(write=False)
    return array


def normalize_unit(m: ConstructionResult, s: Spectrum, tol: Optional[Tolerance] = None) -> Matrix3:
    tol = resolve_tolerance(tol)
    if m.matrix_class not in STOCHASTIC_CLASSES:
        raise InvalidArgument(f"Only stochastic classes normalize; got {m.matrix_class.label}")
    if s.lambda1 <= tol.rel:
        raise NonPositiveScale(f"Cannot normalize by λ1={s.lambda1}")
    return Matrix3(m.matrix.entries / s.lambda1)
