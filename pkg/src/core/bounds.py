"""
Bound constants, the exact feasible interval of the largest diagonal entry,
canonical completions, and the region classifiers for the symmetric stochastic (R)
and doubly stochastic (Q) cases.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from src.core.conditions import ensure_supported, realizable, realizable_pair
from src.core.errors import DegenerateDenominator, NegativeRadicand, OutOfRange, OutsideRegion
from src.core.spectra import (
    ComplexPair,
    DiagonalTriple,
    MatrixClass,
    PairSpectrum,
    RealTriple,
    Spectrum,
    Tolerance,
    canonicalize_diagonal,
    elementary_symmetrics,
    resolve_tolerance,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

SQRT3 = math.sqrt(3.0)
# linear factors this close to zero are exact zeros of the underlying identities
FACTOR_SNAP = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    empty: bool = False

    def __post_init__(self):
        if not self.empty and self.lo > self.hi:
            raise ValueError(f"Interval lo={self.lo} exceeds hi={self.hi}")

    @classmethod
    def empty_interval(cls) -> "Interval":
        return cls(math.nan, math.nan, True)

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return 0.0 if self.empty else self.hi - self.lo

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return not self.empty and self.lo - slack <= value <= self.hi + slack

    def contains_interval(self, other: "Interval", slack: float = 0.0) -> bool:
        if other.empty:
            return True
        return not self.empty and other.lo >= self.lo - slack and other.hi <= self.hi + slack

    def scaled(self, t: float) -> "Interval":
        if self.empty:
            return self
        return Interval(t * self.lo, t * self.hi)


@dataclass(frozen=True)
class BoundConstants:
    L1: float
    L2: Optional[float] = None
    L3: Optional[float] = None
    U1: Optional[float] = None
    U2: Optional[float] = None

    def lower_constants(self) -> dict:
        return {name: value for name, value in (("L1", self.L1), ("L2", self.L2), ("L3", self.L3)) if value is not None}


class RegionLabel(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    Q1 = "Q1"
    Q2 = "Q2"


def _snap(value: float, magnitude: float) -> float:
    return 0.0 if abs(value) <= FACTOR_SNAP * max(1.0, magnitude) else value


def _sqrt_or_none(radicand: float, threshold: float, name: str) -> Optional[float]:
    if radicand >= 0:
        return math.sqrt(radicand)
    if radicand >= -threshold:
        logger.debug(f"Clamped {name} radicand {radicand:.3e} to 0")
        return 0.0
    return None


def checked_sqrt(radicand: float, threshold: float, name: str) -> float:
    root = _sqrt_or_none(radicand, threshold, name)
    if root is None:
        raise NegativeRadicand(f"{name} radicand {radicand!r} is below -{threshold!r}")
    return root


def bound_constants(s: Spectrum, tol: Optional[Tolerance] = None) -> BoundConstants:
    tol = resolve_tolerance(tol)
    threshold = tol.quadratic(s.lambda1)
    e1, _, _ = elementary_symmetrics(s)

    if isinstance(s, ComplexPair):
        gap2 = (s.a - s.b) ** 2
        root_u1 = _sqrt_or_none(gap2 - 3 * s.c ** 2, threshold, "U1")
        root_u2 = _sqrt_or_none(gap2 - 2 * s.c ** 2, threshold, "U2")
        return BoundConstants(
            L1=e1 / 3,
            U1=None if root_u1 is None else e1 / 3 + 2 * root_u1 / 3,
            U2=None if root_u2 is None else s.b + root_u2 / SQRT3,
        )

    l1, l2, l3 = s.values()
    mag = abs(l1) + abs(l2) + abs(l3)
    L1 = (2 * l1 + 3 * l2 + l3) / 6

    radicand = -_snap(l1 + 2 * l2, mag) * _snap(l1 + 2 * l3, mag)
    root = _sqrt_or_none(radicand, threshold, "L2")
    L2 = None if root is None else e1 / 2 + root / (2 * SQRT3)

    radicand = -_snap(2 * l1 + l2 - 3 * l3, mag) * _snap(2 * l1 - 3 * l2 + l3, mag)
    root = _sqrt_or_none(radicand, threshold, "L3")
    L3 = None if root is None else (2 * l1 + l2 + l3) / 4 + root / (4 * SQRT3)

    radicand = 4 * _snap(l1 - l2, mag) * _snap(l1 - l3, mag) + 3 * (l2 - l3) ** 2
    U2 = (l2 + l3) / 2 + checked_sqrt(radicand, threshold, "U2") / (2 * SQRT3)

    return BoundConstants(L1=L1, L2=L2, L3=L3, U2=U2)


def dominant_constant(s: RealTriple, tol: Optional[Tolerance] = None) -> Tuple[str, bool]:
    """Name of the largest defined lower constant and whether another one ties it."""
    tol = resolve_tolerance(tol)
    lowers = bound_constants(s, tol).lower_constants()
    name = max(lowers, key=lowers.get)
    tie = any(
        other != name and abs(value - lowers[name]) <= tol.linear(s.l1)
        for other, value in lowers.items()
    )
    return name, tie


def omega1_range(matrix_class: MatrixClass, s: Spectrum, tol: Optional[Tolerance] = None) -> Interval:
    ensure_supported(matrix_class, s)
    tol = resolve_tolerance(tol)
    if not realizable(matrix_class, s, tol).satisfied:
        logger.debug(f"{matrix_class.label} Λ={s.values()} not realizable: empty ω1 range")
        return Interval.empty_interval()

    e1, _, _ = elementary_symmetrics(s)
    constants = bound_constants(s, tol)

    if isinstance(s, ComplexPair):
        upper = constants.U2 if matrix_class is MatrixClass.DOUBLY_STOCHASTIC else constants.U1
        if upper is None:
            return Interval.empty_interval()
        lo = e1 / 3
        hi = min(e1, upper)
        if matrix_class is not MatrixClass.DOUBLY_STOCHASTIC:
            hi = min(hi, s.a)
    elif matrix_class is MatrixClass.SYMMETRIC_STOCHASTIC:
        lo = max(constants.lower_constants().values())
        hi = (s.l1 + 2 * s.l2) / 3
    elif matrix_class is MatrixClass.DOUBLY_STOCHASTIC:
        lo = max(constants.lower_constants().values())
        hi = min(e1, constants.U2)
    else:
        lo = max(e1 / 3, s.l2)
        hi = min(e1, s.l1)

    if lo > hi:
        if lo - hi <= tol.linear(s.lambda1):
            return Interval(hi, hi)
        logger.warning(f"Realizable {matrix_class.label} Λ={s.values()} gave lo={lo} > hi={hi}")
        return Interval.empty_interval()

    interval = Interval(lo, hi)
    logger.debug(f"ω1 range {matrix_class.label} Λ={s.values()}: [{lo}, {hi}]")
    return interval


def sds_pair(s: RealTriple, w1: float, tol: Optional[Tolerance] = None) -> Optional[Tuple[float, float]]:
    """
    The (ω2, ω3), ω2 ≥ ω3, solving the trace equality and the symmetric
    stochastic quadratic equality for a given ω1; None when no real solution.
    """
    tol = resolve_tolerance(tol)
    e1, _, _ = elementary_symmetrics(s)
    mag = 3 * abs(w1) + abs(s.l1) + 2 * max(abs(s.l2), abs(s.l3))
    radicand = -_snap(3 * w1 - s.l1 - 2 * s.l2, mag) * _snap(3 * w1 - s.l1 - 2 * s.l3, mag)
    root = _sqrt_or_none(radicand, tol.quadratic(s.l1), "completion")
    if root is None:
        return None
    half = (e1 - w1) / 2
    offset = root / (2 * SQRT3)
    return half + offset, half - offset


def canonical_completion(
    matrix_class: MatrixClass, s: Spectrum, w1: float, tol: Optional[Tolerance] = None
) -> DiagonalTriple:
    tol = resolve_tolerance(tol)
    interval = omega1_range(matrix_class, s, tol)
    if not interval.contains(w1, tol.linear(s.lambda1)):
        raise OutOfRange(f"ω1={w1} is outside the {matrix_class.label} range {interval}")

    e1, _, _ = elementary_symmetrics(s)
    uses_sds = isinstance(s, RealTriple) and (
        matrix_class is MatrixClass.SYMMETRIC_STOCHASTIC
        or (matrix_class is MatrixClass.DOUBLY_STOCHASTIC and w1 <= (s.l1 + 2 * s.l2) / 3)
    )
    if uses_sds:
        pair = sds_pair(s, w1, tol)
        if pair is None:
            raise NegativeRadicand(f"Completion radicand negative at ω1={w1} for Λ={s.values()}")
        w2, w3 = pair
    else:
        w2 = w3 = (e1 - w1) / 2

    return canonicalize_diagonal((w1, w2, w3))


def _require_region_r(s: Spectrum, tol: Tolerance):
    if not isinstance(s, RealTriple):
        raise OutsideRegion("Regions are defined for real spectra only")
    threshold = tol.linear(s.l1)
    inside = s.l2 >= -s.l1 / 2 - threshold and s.l3 >= -(2 * s.l1 + s.l2) / 3 - threshold
    if not inside:
        raise OutsideRegion(f"Λ={s.values()} lies outside region R")


def classify_region_R(s: Spectrum, tol: Optional[Tolerance] = None) -> RegionLabel:
    tol = resolve_tolerance(tol)
    _require_region_r(s, tol)
    l1, l2, l3 = s.values()
    if l3 >= max(-l1 / 2, -2 * l1 + 3 * l2):
        return RegionLabel.R1
    if l2 >= l1 / 2 and -l2 <= l3 <= -2 * l1 + 3 * l2:
        return RegionLabel.R3
    return RegionLabel.R2


def q_form(s: RealTriple) -> float:
    l1, l2, l3 = s.values()
    return l1 * l1 + 2 * l1 * l2 + 2 * l1 * l3 + l2 * l3


def q_boundary(s: RealTriple, tol: Optional[Tolerance] = None) -> float:
    """λ3 threshold of the Q region test: Q1 iff λ3 ≤ this value."""
    tol = resolve_tolerance(tol)
    denominator = 2 * s.l1 + s.l2
    if denominator <= tol.linear(s.l1):
        raise DegenerateDenominator(f"2λ1+λ2={denominator} vanishes for Λ={s.values()}")
    return -(s.l1 ** 2 + 2 * s.l1 * s.l2) / denominator


def classify_region_Q(s: Spectrum, tol: Optional[Tolerance] = None) -> RegionLabel:
    tol = resolve_tolerance(tol)
    _require_region_r(s, tol)
    return RegionLabel.Q1 if q_form(s) <= 0 else RegionLabel.Q2


def range_pair(matrix_class: MatrixClass, s: PairSpectrum, tol: Optional[Tolerance] = None) -> Interval:
    tol = resolve_tolerance(tol)
    if not realizable_pair(matrix_class, s, tol).satisfied:
        return Interval.empty_interval()
    half = (s.l1 + s.l2) / 2
    if matrix_class in (MatrixClass.SYMMETRIC_STOCHASTIC, MatrixClass.DOUBLY_STOCHASTIC):
        return Interval(half, half)
    return Interval(half, max(half, min(s.l1 + s.l2, s.l1)))
