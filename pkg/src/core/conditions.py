"""
Necessary-and-sufficient condition sets for the prescribed-diagonal problem,
eigenvalue-only realizability, and the 2x2 case.

Every condition is evaluated (no short-circuit) so reports can name each
violated item. Inequalities pass when slack >= -threshold; equalities carry
slack = -|residual| and pass when |residual| <= threshold.
"""
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from config.config import DEFAULT_KMAX
from src.core.errors import ClassSpectrumMismatch
from src.core.spectra import (
    ComplexPair,
    DiagonalTriple,
    MatrixClass,
    PairDiagonal,
    PairSpectrum,
    RealTriple,
    Spectrum,
    Tolerance,
    elementary_symmetrics,
    resolve_tolerance,
)
from src.utils.logger import get_logger
from src.verification.eigen import power_sum_diagnostics

logger = get_logger(__name__)

CITATIONS = {
    "general_real": "diagonal criterion for the general class, real spectrum: (i)-(iv) necessary and sufficient",
    "general_complex": "diagonal criterion for the general class, complex spectrum: (i)-(iv) necessary and sufficient",
    "symmetric": "Fiedler (1974), symmetric diagonal criterion: (i)-(iv) necessary and sufficient",
    "stochastic_real": "Perfect (1955), stochastic diagonal criterion, real spectrum: same conditions as the general class",
    "stochastic_complex": "Soto-Salas-Manzaneda (2010), stochastic diagonal criterion, complex spectrum",
    "symmetric_stochastic": "diagonal criterion for the symmetric stochastic class: ω3 ≥ 0, trace, s ≥ 0 and the equality s² = V",
    "doubly_stochastic_real": "diagonal criterion for the doubly stochastic class, real spectrum: s ≥ 0, V ≥ 0, s² ≥ V",
    "doubly_stochastic_complex": "diagonal criterion for the doubly stochastic class, complex spectrum: s ≥ 0, V ≥ 0",
    "realizable_general": "Loewy-London (1978), spectra of 3x3 nonnegative matrices",
    "realizable_symmetric": "Fiedler (1974), spectra of 3x3 symmetric nonnegative matrices",
    "realizable_perfect_mirsky": "Perfect-Mirsky (1965), spectra of 3x3 doubly stochastic matrices",
    "pair": "2x2 diagonal criterion: ω2 ≥ 0, trace equality, ω1ω2 ≥ λ1λ2",
    "perron": "Perron-Frobenius: λ1 dominates every eigenvalue modulus",
}



@dataclass(frozen=True)
class ConditionItem:
    label: str
    description: str
    slack: float
    satisfied: bool
    citation: str
    equality: bool = False


@dataclass(frozen=True)
class ConditionReport:
    matrix_class: MatrixClass
    items: Tuple[ConditionItem, ...]

    @property
    def overall(self) -> bool:
        return all(item.satisfied for item in self.items)

    def item(self, label: str) -> ConditionItem:
        for item in self.items:
            if item.label == label:
                return item
        raise KeyError(label)

    def failed_labels(self) -> Tuple[str, ...]:
        return tuple(item.label for item in self.items if not item.satisfied)


@dataclass(frozen=True)
class RealizabilityReport(ConditionReport):
    @property
    def satisfied(self) -> bool:
        return self.overall


@dataclass(frozen=True)
class ImplicationAudit:
    premises_hold: bool
    symmetric_iii_holds: bool
    general_iv_holds: bool

    @property
    def implication_respected(self) -> bool:
        return not (self.premises_hold and self.symmetric_iii_holds and not self.general_iv_holds)


@dataclass(frozen=True)
class NecessaryConditions:
    conjugate_closed: bool
    perron: bool
    power_sums_nonneg: bool
    jll: bool

    @property
    def holds(self) -> bool:
        return self.conjugate_closed and self.perron and self.power_sums_nonneg and self.jll


def _inequality(label, description, slack, threshold, citation) -> ConditionItem:
    return ConditionItem(label, description, float(slack), bool(slack >= -threshold), citation)


def _equality(label, description, residual, threshold, citation) -> ConditionItem:
    return ConditionItem(
        label, description, -abs(float(residual)), bool(abs(residual) <= threshold), citation, equality=True
    )


class _Thresholds:
    def __init__(self, tol: Tolerance, lambda1: float):
        self.lin = tol.linear(lambda1)
        self.quad = tol.quadratic(lambda1)
        self.eq_lin = tol.equality(lambda1, 1)
        self.eq_quad = tol.equality(lambda1, 2)


def _trace_item(label, s: Spectrum, d: DiagonalTriple, th: _Thresholds, citation) -> ConditionItem:
    residual = elementary_symmetrics(d)[0] - elementary_symmetrics(s)[0]
    return _equality(label, "ω1+ω2+ω3 = λ1+λ2+λ3", residual, th.eq_lin, citation)


def _general_real(s: RealTriple, d: DiagonalTriple, th: _Thresholds, citation: str):
    e2_gap = elementary_symmetrics(d)[1] - elementary_symmetrics(s)[1]
    return (
        _inequality("i", "ω3 ≥ 0", d.w3, th.lin, citation),
        _inequality("ii", "λ1 ≥ ω1 ≥ λ2", min(s.l1 - d.w1, d.w1 - s.l2), th.lin, citation),
        _trace_item("iii", s, d, th, citation),
        _inequality("iv", "e2(Ω) ≥ e2(Λ)", e2_gap, th.quad, citation),
    )


def _general_complex(s: ComplexPair, d: DiagonalTriple, th: _Thresholds, citation: str):
    e2_gap = elementary_symmetrics(d)[1] - elementary_symmetrics(s)[1]
    return (
        _inequality("i", "ω3 ≥ 0", d.w3, th.lin, citation),
        _inequality("ii", "λ1 ≥ ω1", s.a - d.w1, th.lin, citation),
        _trace_item("iii", s, d, th, citation),
        _inequality("iv", "e2(Ω) ≥ e2(Λ)", e2_gap, th.quad, citation),
    )


def _symmetric(s: RealTriple, d: DiagonalTriple, th: _Thresholds, citation: str):
    return (
        _inequality("i", "ω3 ≥ 0", d.w3, th.lin, citation),
        _inequality("ii", "λ1 ≥ ω1 ≥ λ2", min(s.l1 - d.w1, d.w1 - s.l2), th.lin, citation),
        _inequality("iii", "λ1+λ2 ≥ ω1+ω2", s.l1 + s.l2 - d.w1 - d.w2, th.lin, citation),
        _trace_item("iv", s, d, th, citation),
    )


def sds_quantities(s: Spectrum, d: DiagonalTriple) -> Tuple[float, float]:
    """
    s = ω3 - (λ2+λ3)/2 and V = (λ1-ω1)(λ1-ω2) - (λ1-λ2)(λ1-λ3)/3.
    Complex spectra use λ2+λ3 = 2b and (λ1-λ2)(λ1-λ3) = (a-b)^2 + c^2.
    """
    if isinstance(s, ComplexPair):
        half_sum = s.b
        gap_product = (s.a - s.b) ** 2 + s.c ** 2
        lambda1 = s.a
    else:
        half_sum = (s.l2 + s.l3) / 2
        gap_product = (s.l1 - s.l2) * (s.l1 - s.l3)
        lambda1 = s.l1
    v = (lambda1 - d.w1) * (lambda1 - d.w2) - gap_product / 3
    return d.w3 - half_sum, v


def _symmetric_stochastic(s: RealTriple, d: DiagonalTriple, th: _Thresholds, citation: str):
    slack_s, v = sds_quantities(s, d)
    return (
        _inequality("i", "ω3 ≥ 0", d.w3, th.lin, citation),
        _trace_item("ii", s, d, th, citation),
        _inequality("iii", "s = ω3-(λ2+λ3)/2 ≥ 0", slack_s, th.lin, citation),
        _equality("iv", "s² = (λ1-ω1)(λ1-ω2) - (λ1-λ2)(λ1-λ3)/3", slack_s ** 2 - v, th.eq_quad, citation),
    )


def _doubly_stochastic(s: Spectrum, d: DiagonalTriple, th: _Thresholds, citation: str):
    slack_s, v = sds_quantities(s, d)
    items = (
        _inequality("i", "ω3 ≥ 0", d.w3, th.lin, citation),
        _trace_item("ii", s, d, th, citation),
        _inequality("iii", "s = ω3-(λ2+λ3)/2 ≥ 0", slack_s, th.lin, citation),
        _inequality("iv", "V = (λ1-ω1)(λ1-ω2) - (λ1-λ2)(λ1-λ3)/3 ≥ 0", v, th.quad, citation),
    )
    if isinstance(s, ComplexPair):
        return items
    return items + (_inequality("v", "s² ≥ V", slack_s ** 2 - v, th.quad, citation),)


_CHECKS: Dict[Tuple[MatrixClass, str], Tuple[Callable, str]] = {
    (MatrixClass.GENERAL, "real"): (_general_real, CITATIONS["general_real"]),
    (MatrixClass.GENERAL, "complex"): (_general_complex, CITATIONS["general_complex"]),
    (MatrixClass.STOCHASTIC, "real"): (_general_real, CITATIONS["stochastic_real"]),
    (MatrixClass.STOCHASTIC, "complex"): (_general_complex, CITATIONS["stochastic_complex"]),
    (MatrixClass.SYMMETRIC, "real"): (_symmetric, CITATIONS["symmetric"]),
    (MatrixClass.SYMMETRIC_STOCHASTIC, "real"): (_symmetric_stochastic, CITATIONS["symmetric_stochastic"]),
    (MatrixClass.DOUBLY_STOCHASTIC, "real"): (_doubly_stochastic, CITATIONS["doubly_stochastic_real"]),
    (MatrixClass.DOUBLY_STOCHASTIC, "complex"): (_doubly_stochastic, CITATIONS["doubly_stochastic_complex"]),
}


def ensure_supported(matrix_class: MatrixClass, s: Spectrum):
    if isinstance(s, ComplexPair) and matrix_class.real_only:
        raise ClassSpectrumMismatch(
            f"No condition set covers class {matrix_class.label} with a complex spectrum"
        )


def check(
    matrix_class: MatrixClass, s: Spectrum, d: DiagonalTriple, tol: Optional[Tolerance] = None
) -> ConditionReport:
    ensure_supported(matrix_class, s)
    tol = resolve_tolerance(tol)
    evaluate, citation = _CHECKS[(matrix_class, s.kind)]
    report = ConditionReport(matrix_class, evaluate(s, d, _Thresholds(tol, s.lambda1), citation))
    logger.debug(f"check {matrix_class.label} Λ={s.values()} Ω={d.values()}: overall={report.overall}")
    return report


def realizable(matrix_class: MatrixClass, s: Spectrum, tol: Optional[Tolerance] = None) -> RealizabilityReport:
    ensure_supported(matrix_class, s)
    tol = resolve_tolerance(tol)
    th = _Thresholds(tol, s.lambda1)

    if isinstance(s, ComplexPair):
        citation = (
            CITATIONS["realizable_perfect_mirsky"]
            if matrix_class is MatrixClass.DOUBLY_STOCHASTIC
            else CITATIONS["stochastic_complex"]
            if matrix_class is MatrixClass.STOCHASTIC
            else CITATIONS["realizable_general"]
        )
        items = (
            _inequality("i", "a ≥ 0", s.a, th.lin, citation),
            _inequality("ii", "-a/2 ≤ b ≤ a", min(s.b + s.a / 2, s.a - s.b), th.lin, citation),
            _inequality("iii", "(a-b)² ≥ 3c²", (s.a - s.b) ** 2 - 3 * s.c ** 2, th.quad, citation),
        )
    elif matrix_class in (MatrixClass.SYMMETRIC_STOCHASTIC, MatrixClass.DOUBLY_STOCHASTIC):
        items = (
            _inequality(
                "i", "2λ1+λ2+3λ3 ≥ 0", 2 * s.l1 + s.l2 + 3 * s.l3, th.lin, CITATIONS["realizable_perfect_mirsky"]
            ),
        )
    else:
        citation = {
            MatrixClass.GENERAL: CITATIONS["realizable_general"],
            MatrixClass.SYMMETRIC: CITATIONS["realizable_symmetric"],
            MatrixClass.STOCHASTIC: CITATIONS["stochastic_real"],
        }[matrix_class]
        items = (
            _inequality("i", "λ1+λ3 ≥ 0", s.l1 + s.l3, th.lin, citation),
            _inequality("ii", "λ1+λ2+λ3 ≥ 0", s.l1 + s.l2 + s.l3, th.lin, citation),
        )

    report = RealizabilityReport(matrix_class, items)
    logger.debug(f"realizable {matrix_class.label} Λ={s.values()}: {report.satisfied}")
    return report


def _pair_class(matrix_class: MatrixClass) -> MatrixClass:
    # the 2x2 symmetric stochastic construction is also doubly stochastic
    if matrix_class is MatrixClass.DOUBLY_STOCHASTIC:
        return MatrixClass.SYMMETRIC_STOCHASTIC
    return matrix_class


def check_pair(
    matrix_class: MatrixClass, s: PairSpectrum, d: PairDiagonal, tol: Optional[Tolerance] = None
) -> ConditionReport:
    tol = resolve_tolerance(tol)
    th = _Thresholds(tol, s.l1)
    citation = CITATIONS["pair"]
    items = [
        _inequality("i", "ω2 ≥ 0", d.w2, th.lin, citation),
        _equality("ii", "ω1+ω2 = λ1+λ2", d.w1 + d.w2 - s.l1 - s.l2, th.eq_lin, citation),
    ]
    if _pair_class(matrix_class) is MatrixClass.SYMMETRIC_STOCHASTIC:
        items.append(_equality("iii", "ω1 = ω2", d.w1 - d.w2, th.eq_lin, citation))
    else:
        items.append(_inequality("iii", "ω1ω2 ≥ λ1λ2", d.w1 * d.w2 - s.l1 * s.l2, th.quad, citation))
    return ConditionReport(matrix_class, tuple(items))


def realizable_pair(
    matrix_class: MatrixClass, s: PairSpectrum, tol: Optional[Tolerance] = None
) -> RealizabilityReport:
    tol = resolve_tolerance(tol)
    item = _inequality("i", "λ1+λ2 ≥ 0", s.l1 + s.l2, tol.linear(s.l1), CITATIONS["pair"])
    return RealizabilityReport(matrix_class, (item,))


def implication_audit(s: Spectrum, d: DiagonalTriple, tol: Optional[Tolerance] = None) -> ImplicationAudit:
    if not isinstance(s, RealTriple):
        raise ClassSpectrumMismatch("implication_audit is defined for real spectra only")
    tol = resolve_tolerance(tol)
    th = _Thresholds(tol, s.l1)
    e1_s, e2_s, _ = elementary_symmetrics(s)
    e1_d, e2_d, _ = elementary_symmetrics(d)

    premises = (
        s.l1 - d.w1 >= -th.lin
        and d.w1 - s.l2 >= -th.lin
        and abs(e1_d - e1_s) <= th.eq_lin
    )
    audit = ImplicationAudit(
        premises_hold=bool(premises),
        symmetric_iii_holds=bool(s.l1 + s.l2 - d.w1 - d.w2 >= -th.lin),
        general_iv_holds=bool(e2_d - e2_s >= -th.quad),
    )
    if not audit.implication_respected:
        logger.warning(f"Implication violated at Λ={s.values()} Ω={d.values()}")
    return audit


def perron_check(s: Spectrum, tol: Optional[Tolerance] = None) -> RealizabilityReport:
    """Perron-Frobenius dominance of λ1. Diagnostic only; never part of a class verdict."""
    tol = resolve_tolerance(tol)
    th = _Thresholds(tol, s.lambda1)
    citation = CITATIONS["perron"]
    if isinstance(s, ComplexPair):
        items = (
            _inequality("i", "λ1 ≥ 0", s.a, th.lin, citation),
            _inequality("ii", "λ1² ≥ b²+c²", s.a ** 2 - s.b ** 2 - s.c ** 2, th.quad, citation),
        )
    else:
        items = (
            _inequality("i", "λ1 ≥ |λ2|", s.l1 - abs(s.l2), th.lin, citation),
            _inequality("ii", "λ1 ≥ |λ3|", s.l1 - abs(s.l3), th.lin, citation),
        )
    return RealizabilityReport(MatrixClass.GENERAL, items)


def necessary_conditions(
    s: Spectrum, kmax: int = DEFAULT_KMAX, tol: Optional[Tolerance] = None
) -> NecessaryConditions:
    tol = resolve_tolerance(tol)
    diagnostics = power_sum_diagnostics(s, kmax, tol)
    return NecessaryConditions(
        # canonical spectra are conjugate-closed by construction
        conjugate_closed=True,
        perron=perron_check(s, tol).satisfied,
        power_sums_nonneg=all(entry.nonneg for entry in diagnostics.sums),
        jll=all(diagnostics.jll.values()),
    )
