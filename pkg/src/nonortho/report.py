"""Assembly of the per-state entanglement report and its JSON/CSV forms."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import measures
from .bell import analytic_bell, bell_expectation, canonical_settings, oracle_bell_max
from .errors import PhaseUndefined
from .feasibility import FeasibilityVerdict, deviation, maximal_feasibility
from .kaon import (KaonEvolution, kaon_deviation_closed_form,
                   kaon_entangled_state, kaon_overlap, kaon_overlap_mag_sq_alt,
                   weak_decay_norm)
from .schmidt import schmidt_decompose, schmidt_eigenvalues
from .state import NonorthogonalState, embed, eta_phase

SCHEMA_VERSION = 1

JSON_SIG_DIGITS = 17
CSV_SIG_DIGITS = 12

CSV_COLUMNS = ("mu_sq", "x_abs", "y_abs", "eta", "lambda_plus", "lambda_minus",
               "bell_analytic", "d", "concurrence", "entropy_bits")


@dataclass
class EntanglementReport:
    """All derived scalars for one state, plus the feasibility summary."""

    state: NonorthogonalState
    lambda_plus: float
    lambda_minus: float
    bell_analytic: float
    d: float
    concurrence: float
    entropy_bits: float
    eta: float | None
    feasibility: FeasibilityVerdict | None
    bell_oracle: float | None = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        s = self.state
        doc = {
            "schema_version": SCHEMA_VERSION,
            "input": {
                "mu_re": s.mu.real, "mu_im": s.mu.imag,
                "nu_re": s.nu.real, "nu_im": s.nu.imag,
                "x_re": s.x.real, "x_im": s.x.imag,
                "y_re": s.y.real, "y_im": s.y.imag,
            },
            "lambda_plus": self.lambda_plus,
            "lambda_minus": self.lambda_minus,
            "bell_analytic": self.bell_analytic,
            "bell_oracle": self.bell_oracle,
            "d": self.d,
            "concurrence": self.concurrence,
            "entropy_bits": self.entropy_bits,
            "entropy_nats": measures.entropy_nats(self.entropy_bits),
            "eta": self.eta,
            "feasibility": None if self.feasibility is None else {
                "verdict": self.feasibility.verdict,
                "witness_q": self.feasibility.witness_q,
                "required_eta": self.feasibility.required_eta,
                "witness_pipeline_d": self.feasibility.witness_pipeline_d,
                "scan_margin": self.feasibility.scan_margin,
            },
            "warnings": list(self.warnings),
        }
        return doc


def analyze_state(state: NonorthogonalState, with_oracle: bool = False,
                  grid_n: int = 24, refine_iters: int = 40,
                  with_feasibility: bool = True) -> EntanglementReport:
    """Run the full pipeline on one validated state.

    ``with_feasibility=False`` skips the overlap-pattern verdict and its
    scan oracle; sweeps use this since their CSV schema carries only the
    per-state scalars.
    """
    warnings: list[str] = []
    vector = embed(state)
    form = schmidt_decompose(state)
    if form.degenerate:
        warnings.append("degenerate-schmidt: lambda_plus - lambda_minus < 1e-10, "
                        "local bases are one valid choice among many")
    lam_plus, lam_minus = schmidt_eigenvalues(state)
    try:
        eta = eta_phase(state)
    except PhaseUndefined:
        eta = None
        warnings.append("eta-undefined: a parameter is zero, phase combination "
                        "not reported")
    d = deviation(form)
    concurrence = measures.concurrence_det(state)
    report = EntanglementReport(
        state=state,
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        bell_analytic=analytic_bell(form),
        d=d,
        concurrence=concurrence,
        entropy_bits=measures.entanglement_entropy(concurrence),
        eta=eta,
        feasibility=(maximal_feasibility(abs(state.x), abs(state.y))
                     if with_feasibility else None),
        warnings=warnings,
    )
    if with_oracle:
        report.bell_oracle = oracle_bell_max(vector, grid_n=grid_n,
                                             refine_iters=refine_iters)
    return report


def kaon_report(eps: complex, eta: float = math.pi,
                evolution: KaonEvolution | None = None,
                with_oracle: bool = False, grid_n: int = 24,
                refine_iters: int = 40) -> dict:
    """Entanglement report for the two-kaon state plus comparison fields."""
    state = kaon_entangled_state(eps)
    report = analyze_state(state, with_oracle=with_oracle, grid_n=grid_n,
                           refine_iters=refine_iters)
    overlap = kaon_overlap(eps)
    plus = kaon_deviation_closed_form(eps, eta, +1)
    minus = kaon_deviation_closed_form(eps, eta, -1)
    doc = report.to_dict()
    doc["kaon"] = {
        "epsilon_re": complex(eps).real,
        "epsilon_im": complex(eps).imag,
        "eta": eta,
        "overlap_re": overlap.real,
        "overlap_im": overlap.imag,
        "overlap_mag_sq": abs(overlap) ** 2,
        "overlap_mag_sq_alt": kaon_overlap_mag_sq_alt(eps),
        "closed_form_d_plus": plus.closed_form,
        "closed_form_d_minus": minus.closed_form,
        "pipeline_d": plus.pipeline,
        "discrepancy_plus": plus.difference,
        "discrepancy_minus": minus.difference,
        "weak_decay_norm": (None if evolution is None
                            else weak_decay_norm(eps, evolution)),
    }
    return doc


def _round_trip_floats(obj):
    """Pass every float through a 17-significant-digit format.

    The .17g representation reparses to the identical double, so values are
    unchanged while the emitted text is full precision and byte-stable.
    """
    if isinstance(obj, float):
        return float(f"{obj:.{JSON_SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_trip_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_trip_floats(v) for v in obj]
    return obj


def to_json(doc: dict) -> str:
    return json.dumps(_round_trip_floats(doc), indent=2)


def csv_row(mu_sq: float, x_abs: float, y_abs: float, eta: float,
            report: EntanglementReport) -> list[str]:
    values = (mu_sq, x_abs, y_abs, eta, report.lambda_plus, report.lambda_minus,
              report.bell_analytic, report.d, report.concurrence,
              report.entropy_bits)
    return [f"{v:.{CSV_SIG_DIGITS}g}" for v in values]


def report_vector(state: NonorthogonalState) -> np.ndarray:
    return embed(state)


def canonical_bell_value(state: NonorthogonalState) -> float:
    """Bell expectation of the state at its canonical settings."""
    form = schmidt_decompose(state)
    settings = canonical_settings(form)
    return bell_expectation(embed(state), settings,
                            basis_a=(form.a_plus, form.a_minus),
                            basis_b=(form.b_plus, form.b_minus))
