import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from config.config import CLASS_LABELS, DEFAULT_REL_TOL
from src.core.errors import InvalidArgument, NonFinite, NotConjugateClosed
from src.utils.config_loader import default_rel_tol
from src.utils.logger import get_logger

logger = get_logger(__name__)


class MatrixClass(Enum):
    GENERAL = "General"
    SYMMETRIC = "Symmetric"
    STOCHASTIC = "Stochastic"
    SYMMETRIC_STOCHASTIC = "SymmetricStochastic"
    DOUBLY_STOCHASTIC = "DoublyStochastic"

    @property
    def label(self) -> str:
        return CLASS_LABELS[self.value]

    @property
    def is_stochastic(self) -> bool:
        return self in STOCHASTIC_CLASSES

    @property
    def real_only(self) -> bool:
        return self in (MatrixClass.SYMMETRIC, MatrixClass.SYMMETRIC_STOCHASTIC)

    @classmethod
    def from_label(cls, text: str) -> "MatrixClass":
        key = text.strip().lower().replace("_", "-")
        for member in cls:
            if key in (member.label, member.value.lower()):
                return member
        raise InvalidArgument(f"Unknown matrix class {text!r}; expected one of {[m.label for m in cls]}")


STOCHASTIC_CLASSES = frozenset(
    {MatrixClass.STOCHASTIC, MatrixClass.SYMMETRIC_STOCHASTIC, MatrixClass.DOUBLY_STOCHASTIC}
)


@dataclass(frozen=True)
class Tolerance:
    """
    Relative tolerance with degree-aware absolute floors.
    rel: relative tolerance for inequalities
    eq_rel: optional looser tolerance for equality conditions (grid scans)
    """
    rel: float = DEFAULT_REL_TOL
    eq_rel: Optional[float] = None

    def __post_init__(self):
        if not (isinstance(self.rel, (int, float)) and math.isfinite(self.rel) and self.rel > 0):
            raise InvalidArgument(f"Tolerance rel must be a positive finite number, got {self.rel!r}")
        if self.eq_rel is not None and not (math.isfinite(self.eq_rel) and self.eq_rel > 0):
            raise InvalidArgument(f"Tolerance eq_rel must be positive, got {self.eq_rel!r}")

    @classmethod
    def default(cls) -> "Tolerance":
        return cls(rel=default_rel_tol())

    def linear(self, scale: float) -> float:
        return self.rel * max(1.0, abs(scale))

    def quadratic(self, scale: float) -> float:
        return self.rel * max(1.0, abs(scale)) ** 2

    def equality(self, scale: float, degree: int = 1) -> float:
        rel = self.eq_rel if self.eq_rel is not None else self.rel
        return rel * max(1.0, abs(scale)) ** degree


def resolve_tolerance(tol: Optional[Tolerance]) -> Tolerance:
    return tol if tol is not None else Tolerance.default()


def _require_finite(values: Iterable[float], what: str):
    for value in values:
        if not math.isfinite(value):
            raise NonFinite(f"{what} contains a non-finite value: {value!r}")


@dataclass(frozen=True)
class RealTriple:
    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        for name in ("l1", "l2", "l3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite((self.l1, self.l2, self.l3), "RealTriple")
        if not (self.l1 >= self.l2 >= self.l3):
            raise InvalidArgument(f"RealTriple must be nonincreasing, got {self.values()}")

    kind = "real"

    @property
    def lambda1(self) -> float:
        return self.l1

    def values(self) -> Tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)

    def roots(self) -> Tuple[complex, complex, complex]:
        return (complex(self.l1), complex(self.l2), complex(self.l3))

    def scaled(self, t: float) -> "RealTriple":
        return RealTriple(t * self.l1, t * self.l2, t * self.l3)


@dataclass(frozen=True)
class ComplexPair:
    """The list {a, b + ci, b - ci} with c > 0."""
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite((self.a, self.b, self.c), "ComplexPair")
        if not self.c > 0:
            raise InvalidArgument(f"ComplexPair needs c > 0, got c={self.c}")

    kind = "complex"

    @property
    def lambda1(self) -> float:
        return self.a

    def values(self) -> Tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def roots(self) -> Tuple[complex, complex, complex]:
        return (complex(self.a), complex(self.b, self.c), complex(self.b, -self.c))

    def scaled(self, t: float) -> "ComplexPair":
        return ComplexPair(t * self.a, t * self.b, t * self.c)


Spectrum = Union[RealTriple, ComplexPair]


@dataclass(frozen=True)
class DiagonalTriple:
    w1: float
    w2: float
    w3: float

    def __post_init__(self):
        for name in ("w1", "w2", "w3"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _require_finite((self.w1, self.w2, self.w3), "DiagonalTriple")
        if not (self.w1 >= self.w2 >= self.w3):
            raise InvalidArgument(f"DiagonalTriple must be nonincreasing, got {self.values()}")

    def values(self) -> Tuple[float, float, float]:
        return (self.w1, self.w2, self.w3)

    def scaled(self, t: float) -> "DiagonalTriple":
        return DiagonalTriple(t * self.w1, t * self.w2, t * self.w3)


@dataclass(frozen=True)
class PairSpectrum:
    l1: float
    l2: float

    def __post_init__(self):
        object.__setattr__(self, "l1", float(self.l1))
        object.__setattr__(self, "l2", float(self.l2))
        _require_finite((self.l1, self.l2), "PairSpectrum")
        if not self.l1 >= self.l2:
            raise InvalidArgument(f"PairSpectrum must be nonincreasing, got ({self.l1}, {self.l2})")


@dataclass(frozen=True)
class PairDiagonal:
    w1: float
    w2: float

    def __post_init__(self):
        object.__setattr__(self, "w1", float(self.w1))
        object.__setattr__(self, "w2", float(self.w2))
        _require_finite((self.w1, self.w2), "PairDiagonal")
        if not self.w1 >= self.w2:
            raise InvalidArgument(f"PairDiagonal must be nonincreasing, got ({self.w1}, {self.w2})")


class Matrix3:
    """Read-only dense 3x3 real matrix."""

    def __init__(self, entries):
        array = np.array(entries, dtype=float)
        if array.shape != (3, 3):
            raise InvalidArgument(f"Matrix3 needs a 3x3 array, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise NonFinite("Matrix3 contains a non-finite entry")
        array.setflags(write=False)
        self._entries = array

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, index) -> float:
        return float(self._entries[index])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix3):
            return NotImplemented
        return bool(np.array_equal(self._entries, other._entries))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Matrix3({self.to_list()})"

    def diagonal(self) -> Tuple[float, float, float]:
        return tuple(float(x) for x in np.diag(self._entries))

    def row_sums(self) -> np.ndarray:
        return self._entries.sum(axis=1)

    def col_sums(self) -> np.ndarray:
        return self._entries.sum(axis=0)

    def transpose(self) -> "Matrix3":
        return Matrix3(self._entries.T)

    def scaled(self, t: float) -> "Matrix3":
        return Matrix3(self._entries * t)

    def permuted(self, perm) -> "Matrix3":
        """P A P^T for the permutation given as an index sequence."""
        idx = np.asarray(perm)
        return Matrix3(self._entries[np.ix_(idx, idx)])

    def to_list(self):
        return self._entries.tolist()


def canonicalize_spectrum(raw: Iterable[complex], tol: Optional[Tolerance] = None) -> Spectrum:
    tol = resolve_tolerance(tol)
    values = [complex(z) for z in raw]
    if len(values) != 3:
        raise InvalidArgument(f"A spectrum needs exactly three values, got {len(values)}")
    for z in values:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise NonFinite(f"Spectrum contains a non-finite value: {z!r}")

    threshold = tol.linear(max(abs(z) for z in values))
    reals = [z.real for z in values if abs(z.imag) <= threshold]
    nonreal = [z for z in values if abs(z.imag) > threshold]

    if not nonreal:
        l1, l2, l3 = sorted(reals, reverse=True)
        return RealTriple(l1, l2, l3)

    if len(nonreal) == 2 and len(reals) == 1:
        z1, z2 = nonreal
        if abs(z1.real - z2.real) <= threshold and abs(z1.imag + z2.imag) <= threshold:
            b = (z1.real + z2.real) / 2
            c = (abs(z1.imag) + abs(z2.imag)) / 2
            return ComplexPair(reals[0], b, c)

    logger.debug(f"Rejected non-conjugate-closed list {values}")
    raise NotConjugateClosed(f"Values {values} are not closed under conjugation")


def canonicalize_diagonal(raw: Iterable[float]) -> DiagonalTriple:
    values = [float(x) for x in raw]
    if len(values) != 3:
        raise InvalidArgument(f"A diagonal needs exactly three values, got {len(values)}")
    _require_finite(values, "Diagonal")
    w1, w2, w3 = sorted(values, reverse=True)
    return DiagonalTriple(w1, w2, w3)


def elementary_symmetrics(x: Union[Spectrum, DiagonalTriple]) -> Tuple[float, float, float]:
    if isinstance(x, ComplexPair):
        modulus2 = x.b * x.b + x.c * x.c
        return (x.a + 2 * x.b, 2 * x.a * x.b + modulus2, x.a * modulus2)
    p, q, r = x.values()
    return (p + q + r, p * q + p * r + q * r, p * q * r)


def spectrum_scale(s: Spectrum) -> float:
    return max(1.0, abs(s.lambda1))
