"""Conversion of solver results into JSON-ready dictionaries."""
import math
from typing import Optional

from src.core.bounds import BoundConstants, Interval
from src.core.conditions import ConditionReport, NecessaryConditions, RealizabilityReport
from src.core.construct import ConstructionResult
from src.core.spectra import ComplexPair, DiagonalTriple, Spectrum
from src.verification.eigen import PowerSumReport, VerificationReport
from src.verification.oracle import AuditResult, NecessityResult


def number(value: Optional[float]) -> Optional[float]:
    """JSON has no NaN or infinity; both become null."""
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def spectrum_to_dict(s: Spectrum) -> dict:
    if isinstance(s, ComplexPair):
        return {"kind": "complex", "a": s.a, "b": s.b, "c": s.c}
    return {"kind": "real", "values": list(s.values())}


def diagonal_to_list(d: DiagonalTriple) -> list:
    return list(d.values())


def report_to_dict(report: ConditionReport) -> dict:
    payload = {
        "class": report.matrix_class.label,
        "overall": report.overall,
        "items": [
            {
                "label": item.label,
                "description": item.description,
                "slack": number(item.slack),
                "satisfied": item.satisfied,
                "equality": item.equality,
                "citation": item.citation,
            }
            for item in report.items
        ],
    }
    if isinstance(report, RealizabilityReport):
        payload["satisfied"] = report.satisfied
        payload["failed"] = [item.description for item in report.items if not item.satisfied]
    return payload


def interval_to_dict(interval: Interval) -> dict:
    return {"lo": number(interval.lo), "hi": number(interval.hi), "empty": interval.empty}


def constants_to_dict(constants: BoundConstants) -> dict:
    return {
        "L1": number(constants.L1),
        "L2": number(constants.L2),
        "L3": number(constants.L3),
        "U1": number(constants.U1),
        "U2": number(constants.U2),
    }


def verification_to_dict(report: VerificationReport) -> dict:
    return {
        "spectrum": spectrum_to_dict(report.spectrum),
        "coefficients": [report.coefficients.c2, report.coefficients.c1, report.coefficients.c0],
        "eigen_residual": report.eigen_residual,
        "root_error": number(report.root_error),
        "spectrum_match": report.spectrum_match,
        "diagonal_match": report.diagonal_match,
        "classes": sorted(c.label for c in report.classes_satisfied),
        "row_sum_deviation": report.row_sum_deviation,
        "col_sum_deviation": report.col_sum_deviation,
        "symmetry_deviation": report.symmetry_deviation,
        "min_entry": report.min_entry,
        "perron_estimate": report.perron_estimate,
    }


def construction_to_dict(result: ConstructionResult) -> dict:
    return {
        "class": result.matrix_class.label,
        "matrix": result.matrix.to_list(),
        "auxiliaries": {name: number(value) for name, value in result.auxiliaries.items()},
    }


def power_sums_to_dict(report: PowerSumReport) -> dict:
    return {
        "sums": [{"k": entry.k, "s_k": entry.s_k, "nonneg": entry.nonneg} for entry in report.sums],
        "jll": [{"k": k, "m": m, "holds": holds} for (k, m), holds in sorted(report.jll.items())],
    }


def necessary_to_dict(conditions: NecessaryConditions) -> dict:
    return {
        "conjugate_closed": conditions.conjugate_closed,
        "perron": conditions.perron,
        "power_sums_nonneg": conditions.power_sums_nonneg,
        "jll": conditions.jll,
        "holds": conditions.holds,
    }


def necessity_to_dict(result: NecessityResult) -> dict:
    return {
        "trials": result.trials,
        "failure_count": len(result.failures),
        "failures": [matrix.to_list() for matrix in result.failures],
    }


def audit_to_dict(result: AuditResult) -> dict:
    return {
        "empirical": interval_to_dict(result.empirical),
        "formula": interval_to_dict(result.formula),
        "max_endpoint_gap": number(result.max_endpoint_gap),
    }
