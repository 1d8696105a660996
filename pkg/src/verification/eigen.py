"""
Independent eigenvalue verification for 3x3 matrices: characteristic
polynomial, closed-form cubic roots, class detection, power-sum diagnostics.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np

from config.config import MAX_KMAX
from src.core.errors import InvalidArgument, NonFinite
from src.core.spectra import (
    ComplexPair,
    DiagonalTriple,
    Matrix3,
    MatrixClass,
    RealTriple,
    Spectrum,
    Tolerance,
    canonicalize_diagonal,
    canonicalize_spectrum,
    elementary_symmetrics,
    resolve_tolerance,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

ROOT_MATCH_REL = 1e-8
DISCRIMINANT_NOISE = 16 * np.finfo(float).eps


@dataclass(frozen=True)
class CubicCoefficients:
    """Monic x^3 - c2*x^2 + c1*x - c0."""
    c2: float
    c1: float
    c0: float

    def __post_init__(self):
        for name in ("c2", "c1", "c0"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFinite(f"Cubic coefficient {name}={value!r} is not finite")
            object.__setattr__(self, name, value)

    def __call__(self, x):
        return ((x - self.c2) * x + self.c1) * x - self.c0

    def derivative(self, x):
        return (3 * x - 2 * self.c2) * x + self.c1


@dataclass(frozen=True)
class VerificationReport:
    spectrum: Spectrum
    coefficients: CubicCoefficients
    eigen_residual: float
    root_error: Optional[float]
    spectrum_match: Optional[bool]
    diagonal_match: Optional[bool]
    classes_satisfied: FrozenSet[MatrixClass]
    row_sum_deviation: float
    col_sum_deviation: float
    symmetry_deviation: float
    min_entry: float
    perron_estimate: float


@dataclass(frozen=True)
class PowerSum:
    k: int
    s_k: float
    nonneg: bool


@dataclass(frozen=True)
class PowerSumReport:
    sums: Tuple[PowerSum, ...]
    jll: Dict[Tuple[int, int], bool] = field(default_factory=dict)

    def value(self, k: int) -> float:
        return self.sums[k - 1].s_k


def char_poly(m: Matrix3) -> CubicCoefficients:
    a = m.entries
    trace = a[0, 0] + a[1, 1] + a[2, 2]
    minors = (
        a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
        + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1]
    )
    det = (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )
    return CubicCoefficients(float(trace), float(minors), float(det))


def _polish(c: CubicCoefficients, root):
    """One Newton step, kept only if it lowers the residual."""
    slope = c.derivative(root)
    if slope == 0:
        return root
    candidate = root - c(root) / slope
    if abs(c(candidate)) < abs(c(root)):
        return candidate
    logger.debug(f"Rejected Newton step at root {root}")
    return root


def _root_scale(shift: float, p: float, q: float) -> float:
    """Magnitude of the roots, from the shift and the depressed coefficients."""
    return max(1.0, abs(shift), math.sqrt(abs(p)), abs(q) ** (1 / 3))


def solve_cubic(c: CubicCoefficients, tol: Optional[Tolerance] = None) -> Spectrum:
    tol = resolve_tolerance(tol)
    shift = c.c2 / 3
    p = c.c1 - c.c2 ** 2 / 3
    q = -2 * c.c2 ** 3 / 27 + c.c2 * c.c1 / 3 - c.c0
    scale = _root_scale(shift, p, q)

    if abs(p) <= tol.rel * scale ** 2 and abs(q) <= tol.rel * scale ** 3:
        # triple root at the mean of the roots
        return canonicalize_spectrum([shift] * 3, tol)

    # 4p^3 + 27q^2 > 0 iff one real root and a conjugate pair; compared
    # against its own first-order rounding error in p and q
    form = 4 * p ** 3 + 27 * q ** 2
    noise = DISCRIMINANT_NOISE * (
        12 * p * p * scale ** 2 + 54 * abs(q) * scale ** 3 + 4 * abs(p) ** 3 + 27 * q * q
    )

    if form > noise:
        half_q = -q / 2
        root_d = math.sqrt(q ** 2 / 4 + p ** 3 / 27)
        u = float(np.cbrt(half_q + math.copysign(root_d, half_q)))
        v = -p / (3 * u)
        real_root = _polish(c, u + v + shift)
        pair = complex((c.c2 - real_root) / 2, math.sqrt(3) / 2 * abs(u - v))
        pair = _polish(c, pair)
        roots = [real_root, pair, pair.conjugate()]
    elif p < 0:
        amplitude = 2 * math.sqrt(-p / 3)
        argument = 3 * q / (2 * p) * math.sqrt(-3 / p)
        theta = math.acos(min(1.0, max(-1.0, argument))) / 3
        roots = [
            _polish(c, amplitude * math.cos(theta - 2 * math.pi * k / 3) + shift)
            for k in range(3)
        ]
    else:
        logger.debug(f"Degenerate cubic p={p}, q={q}; returning triple root")
        roots = [shift] * 3

    return canonicalize_spectrum(roots, tol)


def _sorted_roots(s: Spectrum):
    return sorted(s.roots(), key=lambda z: (z.real, z.imag))


def root_distance(computed: Spectrum, claimed: Spectrum) -> float:
    """Max root discrepancy relative to max(1, |λ1|) of the claim."""
    pairs = zip(_sorted_roots(computed), _sorted_roots(claimed))
    return max(abs(x - y) for x, y in pairs) / max(1.0, abs(claimed.lambda1))


def verify(
    m: Matrix3,
    claimed: Optional[Spectrum] = None,
    claimed_diag: Optional[DiagonalTriple] = None,
    tol: Optional[Tolerance] = None,
) -> VerificationReport:
    tol = resolve_tolerance(tol)
    coefficients = char_poly(m)
    spectrum = solve_cubic(coefficients, tol)

    reference = claimed if claimed is not None else spectrum
    residual = max(abs(coefficients(z)) for z in reference.roots()) / max(1.0, abs(coefficients.c2)) ** 3

    root_error = spectrum_match = None
    if claimed is not None:
        root_error = root_distance(spectrum, claimed)
        spectrum_match = root_error <= ROOT_MATCH_REL

    diagonal_match = None
    if claimed_diag is not None:
        diagonal_match = canonicalize_diagonal(m.diagonal()) == claimed_diag

    perron = max(abs(z) for z in spectrum.roots())
    scale = max(1.0, perron)
    a = m.entries
    row_dev = float(np.ptp(m.row_sums())) / scale
    col_dev = float(np.ptp(m.col_sums())) / scale
    sym_dev = float(np.max(np.abs(a - a.T))) / scale
    min_entry = float(a.min())

    classes = set()
    if min_entry >= -tol.linear(scale):
        classes.add(MatrixClass.GENERAL)
        symmetric = sym_dev <= tol.rel
        stochastic = row_dev <= tol.rel
        doubly = stochastic and col_dev <= tol.rel
        if symmetric:
            classes.add(MatrixClass.SYMMETRIC)
        if stochastic:
            classes.add(MatrixClass.STOCHASTIC)
        if doubly:
            classes.add(MatrixClass.DOUBLY_STOCHASTIC)
        if symmetric and doubly:
            classes.add(MatrixClass.SYMMETRIC_STOCHASTIC)

    report = VerificationReport(
        spectrum=spectrum,
        coefficients=coefficients,
        eigen_residual=float(residual),
        root_error=root_error,
        spectrum_match=spectrum_match,
        diagonal_match=diagonal_match,
        classes_satisfied=frozenset(classes),
        row_sum_deviation=row_dev,
        col_sum_deviation=col_dev,
        symmetry_deviation=sym_dev,
        min_entry=min_entry,
        perron_estimate=float(perron),
    )
    logger.debug(f"Verified matrix: spectrum={spectrum}, classes={sorted(c.label for c in classes)}")
    return report


def power_sums(s: Spectrum, kmax: int):
    if isinstance(s, RealTriple):
        return [sum(x ** k for x in s.values()) for k in range(1, kmax + 1)]
    e1, e2, e3 = elementary_symmetrics(s)
    sums = [e1, e1 * e1 - 2 * e2, e1 ** 3 - 3 * e1 * e2 + 3 * e3]
    for _ in range(4, kmax + 1):
        sums.append(e1 * sums[-1] - e2 * sums[-2] + e3 * sums[-3])
    return sums[:kmax]


def power_sum_diagnostics(s: Spectrum, kmax: int, tol: Optional[Tolerance] = None) -> PowerSumReport:
    if not isinstance(kmax, int) or not 1 <= kmax <= MAX_KMAX:
        raise InvalidArgument(f"kmax must be an integer in [1, {MAX_KMAX}], got {kmax!r}")
    tol = resolve_tolerance(tol)
    scale = max(1.0, abs(s.lambda1))
    sums = power_sums(s, kmax)

    entries = tuple(
        PowerSum(k, float(value), bool(value >= -tol.rel * scale ** k))
        for k, value in enumerate(sums, start=1)
    )
    jll = {}
    for k in range(2, kmax + 1):
        for m in range(1, kmax // k + 1):
            weight = 3 ** (k - 1)
            gap = weight * sums[k * m - 1] - sums[m - 1] ** k
            jll[(k, m)] = bool(gap >= -tol.rel * weight * scale ** (k * m))
    return PowerSumReport(entries, jll)
