"""Feasibility of maximal CHSH violation and the deviation parameter.

The deviation d = 1 - |2 c+ c-|^2 measures departure from the maximal CHSH
value: the closed-form Bell value is 2*sqrt(2 - d), so d = 0 is maximal
violation and d = 1 is a product state.  Requiring d = 0 together with the
normalization constraint produces a quadratic in q = |mu|^2 whose
discriminant analysis splits by overlap pattern:

  OO  (both overlaps zero)      feasible, q = 1/2;
  ON  (exactly one nonzero, s)  infeasible, with the floor d >= s^2;
  NN  (both nonzero)            infeasible unless |x| = |y| and cos(eta) = -1,
                                where the boundary family q = 1/(2(1-|x||y|))
                                is maximal.

Verdicts are never trusted from the printed inequalities alone: feasible
witnesses are validated by running the state pipeline, infeasible verdicts
by a scan oracle over (eta, q) grids.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoCompatibleNu
from .schmidt import SchmidtForm, schmidt_decompose
from .state import ORTHO_EPS, make_state, state_from_magnitudes

SCAN_ETA_POINTS = 720
SCAN_Q_POINTS = 2000


def deviation(form: SchmidtForm) -> float:
    """d = 1 - |2 c+ c-|^2, clamped to [0, 1] against rounding no wider than 1e-12."""
    d = 1.0 - (2.0 * abs(form.c_plus) * abs(form.c_minus)) ** 2
    if -1e-12 <= d < 0.0:
        return 0.0
    if 1.0 < d <= 1.0 + 1e-12:
        return 1.0
    if not 0.0 <= d <= 1.0:
        raise ArithmeticError(f"deviation {d} outside [0,1] beyond tolerance")
    return d


def state_deviation(mu_sq: float, x_abs: float, y_abs: float,
                    eta: float = math.pi) -> float:
    """Pipeline deviation of the canonical state with these magnitudes."""
    return deviation(schmidt_decompose(state_from_magnitudes(mu_sq, x_abs, y_abs, eta)))


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Coefficients of a*q^2 + b*q + c = 0 with q = |mu|^2."""

    a: float
    b: float
    c: float


def quadratic_coefficients(abs_x: float, abs_y: float, eta: float,
                           d: float) -> QuadraticCoefficients:
    """Quadratic in q whose roots are the amplitude splittings reaching deviation d.

    For d = 0 the scaled form (a = 4(1-|x|^2)(1-|y|^2), b = a[K cos(eta) - 1],
    c = 1) is returned; for d > 0 the monic form with
    c = (1-d) / (4(1-|x|^2)(1-|y|^2)).
    """
    if not (0.0 <= abs_x < 1.0 and 0.0 <= abs_y < 1.0):
        raise DomainError(f"overlaps out of range: {abs_x}, {abs_y}")
    if not (0.0 <= d < 1.0):
        raise DomainError(f"deviation target out of range: {d}")
    g = (1.0 - abs_x ** 2) * (1.0 - abs_y ** 2)
    if d == 0.0:
        a = 4.0 * g
        k = abs_x * abs_y / math.sqrt(g)
        return QuadraticCoefficients(a, a * (k * math.cos(eta) - 1.0), 1.0)
    big_x = math.sqrt(abs_x ** 2 * abs_y ** 2 * (1.0 - d) / g)
    return QuadraticCoefficients(1.0, big_x * math.cos(eta) - 1.0,
                                 (1.0 - d) / (4.0 * g))


def mu_squared_solutions(abs_x: float, abs_y: float, d: float,
                         eta: float | None = None) -> list[float]:
    """Real roots q = |mu|^2 in (0, 1) reaching deviation d, by overlap case.

    Both quadratic branches are returned (neither root is privileged); a
    double root appears once.  An empty list means no real solution exists,
    which is a meaningful verdict rather than a failure.  ``eta`` is only
    consulted when both overlaps are nonzero.
    """
    if not (0.0 <= abs_x < 1.0 and 0.0 <= abs_y < 1.0):
        raise DomainError(f"overlaps out of range: {abs_x}, {abs_y}")
    if not (0.0 <= d < 1.0):
        raise DomainError(f"deviation target out of range: {d}")
    x_on = abs_x > ORTHO_EPS
    y_on = abs_y > ORTHO_EPS
    if x_on and y_on:
        if eta is None:
            raise DomainError("eta is required when both overlaps are nonzero")
        g = (1.0 - abs_x ** 2) * (1.0 - abs_y ** 2)
        big_x = math.sqrt(abs_x ** 2 * abs_y ** 2 * (1.0 - d) / g)
        lead = 1.0 - big_x * math.cos(eta)
        disc = lead * lead - big_x ** 2 / (abs_x ** 2 * abs_y ** 2)
        roots = _quadratic_roots(lead, disc)
    elif x_on or y_on:
        s = abs_x if x_on else abs_y   # the surviving overlap
        roots = _quadratic_roots(1.0, (d - s * s) / (1.0 - s * s))
    else:
        roots = _quadratic_roots(1.0, d)
    return [q for q in roots if 0.0 < q < 1.0]


def _quadratic_roots(lead: float, disc: float) -> list[float]:
    """Roots (lead +- sqrt(disc)) / 2; |disc| < 1e-12 counts as a double root."""
    if disc < -1e-12:
        return []
    if disc < 1e-12:
        return [0.5 * lead]
    root = math.sqrt(disc)
    return [0.5 * (lead - root), 0.5 * (lead + root)]


@dataclass(frozen=True)
class ClosedFormDeviation:
    """Closed-form deviation for one branch, with its pipeline comparator."""

    closed_form: float
    pipeline: float
    difference: float


def deviation_closed_form(abs_mu: float, abs_x: float, abs_y: float, eta: float,
                          branch: int) -> ClosedFormDeviation:
    """Deviation as an explicit function of (|mu|, overlaps, eta) for one branch.

    With q = |mu|^2, G = (1-|x|^2)(1-|y|^2) and
    Z = sqrt(2(1-q) + q|x|^2|y|^2(1+cos 2 eta)):

        d = 1 - 4G [ q + q^2 (2|x|^2|y|^2 cos^2 eta - 1)
                     +- sqrt(2) Z q^{3/2} |x||y| cos(eta) ]

    ``branch`` is +1 or -1 and selects the printed sign.  Each branch
    corresponds to one solution |nu| of the normalization constraint; the
    matching pipeline deviation and the absolute difference are reported
    alongside.  Raises NoCompatibleNu when the selected branch admits no
    nonnegative |nu|.
    """
    if branch not in (+1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch}")
    if not (0.0 <= abs_x < 1.0 and 0.0 <= abs_y < 1.0):
        raise DomainError(f"overlaps out of range: {abs_x}, {abs_y}")
    if abs_mu < 0.0:
        raise DomainError(f"abs_mu must be nonnegative, got {abs_mu}")
    q = abs_mu * abs_mu
    g = (1.0 - abs_x ** 2) * (1.0 - abs_y ** 2)
    t = abs_x * abs_y * math.cos(eta)
    z = math.sqrt(max(2.0 * (1.0 - q) + q * abs_x ** 2 * abs_y ** 2
                      * (1.0 + math.cos(2.0 * eta)), 0.0))
    bracket = (q + q * q * (2.0 * abs_x ** 2 * abs_y ** 2 * math.cos(eta) ** 2 - 1.0)
               + branch * math.sqrt(2.0) * z * q ** 1.5 * t)
    closed = 1.0 - 4.0 * g * bracket

    # the printed +- maps to |nu| = -s -+ W with s = sqrt(q) t, W = Z/sqrt(2)
    s = math.sqrt(q) * t
    w = z / math.sqrt(2.0)
    nu_mag = -s - branch * w
    if nu_mag < -1e-12:
        raise NoCompatibleNu(
            f"branch {branch:+d} gives |nu| = {nu_mag:.3e} < 0 for these inputs")
    nu_mag = max(nu_mag, 0.0)
    pipeline = _pipeline_deviation_from_mags(abs_mu, nu_mag, abs_x, abs_y, eta)
    return ClosedFormDeviation(closed, pipeline, abs(closed - pipeline))


def _pipeline_deviation_from_mags(mu_mag: float, nu_mag: float, abs_x: float,
                                  abs_y: float, eta: float) -> float:
    mu = complex(mu_mag)
    nu = nu_mag * cmath.exp(-1j * eta)
    state = make_state(mu, nu, complex(abs_x), complex(abs_y), auto_normalize=True)
    return deviation(schmidt_decompose(state))


VERDICT_FEASIBLE_ORTHOGONAL = "FeasibleOrthogonal"
VERDICT_FEASIBLE_DEGENERATE = "FeasibleDegenerate"
VERDICT_INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of the maximal-violation feasibility analysis for (|x|, |y|).

    ``witness_q`` is present iff feasible, and ``witness_pipeline_d`` is its
    validated pipeline deviation.  For infeasible pairs, ``scan_margin`` is
    1 minus the largest concurrence found by the (eta, q) scan oracle.
    """

    verdict: str
    witness_q: float | None = None
    required_eta: float | None = None
    witness_pipeline_d: float | None = None
    scan_margin: float | None = None


def overlap_case(abs_x: float, abs_y: float) -> str:
    """Classify the overlap pattern: 'OO', 'ON' or 'NN' (threshold 1e-12)."""
    x_on = abs_x > ORTHO_EPS
    y_on = abs_y > ORTHO_EPS
    if x_on and y_on:
        return "NN"
    if x_on or y_on:
        return "ON"
    return "OO"


def concurrence_scan(abs_x: float, abs_y: float,
                     eta_points: int = SCAN_ETA_POINTS,
                     q_points: int = SCAN_Q_POINTS) -> float:
    """Largest pipeline concurrence over an (eta, q) grid, vectorized.

    For each grid point the unique nonnegative |nu| solving normalization is
    used, so the scan covers every admissible state at these overlap
    magnitudes up to the phase conventions that the concurrence ignores.
    """
    etas = np.linspace(-math.pi, math.pi, eta_points)
    qs = np.linspace(0.0, 1.0, q_points + 2)[1:-1]
    grid_eta, grid_q = np.meshgrid(etas, qs, indexing="ij")
    s = np.sqrt(grid_q) * abs_x * abs_y * np.cos(grid_eta)
    w = np.sqrt(np.maximum(1.0 - grid_q + s * s, 0.0))
    nu_mag = w - s
    g = (1.0 - abs_x ** 2) * (1.0 - abs_y ** 2)
    conc = 2.0 * np.sqrt(grid_q) * nu_mag * math.sqrt(g)
    return float(conc.max())


def maximal_feasibility(abs_x: float, abs_y: float) -> FeasibilityVerdict:
    """Can these overlap magnitudes support maximal CHSH violation?

    Equal overlaps are matched within 1e-12, as is the orthogonality
    threshold.  Feasible witnesses are checked by constructing the state and
    requiring pipeline d < 1e-10; infeasible verdicts carry the margin from
    the concurrence scan oracle.
    """
    if not (0.0 <= abs_x < 1.0 and 0.0 <= abs_y < 1.0):
        raise DomainError(f"overlaps out of range: {abs_x}, {abs_y}")
    case = overlap_case(abs_x, abs_y)
    if case == "OO":
        return _validated_feasible(VERDICT_FEASIBLE_ORTHOGONAL, 0.5, None,
                                   abs_x, abs_y)
    if case == "NN" and abs(abs_x - abs_y) < 1e-12:
        witness = 1.0 / (2.0 * (1.0 - abs_x * abs_y))
        return _validated_feasible(VERDICT_FEASIBLE_DEGENERATE, witness, math.pi,
                                   abs_x, abs_y)
    margin = 1.0 - concurrence_scan(abs_x, abs_y)
    return FeasibilityVerdict(VERDICT_INFEASIBLE, scan_margin=margin)


def _validated_feasible(verdict: str, witness_q: float, required_eta: float | None,
                        abs_x: float, abs_y: float) -> FeasibilityVerdict:
    eta = required_eta if required_eta is not None else math.pi
    d = state_deviation(witness_q, abs_x, abs_y, eta)
    if d >= 1e-10:
        raise ArithmeticError(
            f"feasible witness q={witness_q} failed validation: pipeline d={d:.3e}")
    return FeasibilityVerdict(verdict, witness_q=witness_q,
                              required_eta=required_eta, witness_pipeline_d=d)


def on_case_floor(overlap: float) -> float:
    """Smallest reachable deviation with one overlap s: d >= s^2 (at q = 1/2)."""
    return overlap * overlap


def nn_case_floor(abs_x: float, abs_y: float) -> float:
    """Smallest reachable deviation with both overlaps nonzero.

    d >= 1 - (1-|x|^2)(1-|y|^2) / (1 - |x||y|)^2, tight at cos(eta) = -1 and
    the balanced splitting q = 1/(2(1-|x||y|)); zero exactly when |x| = |y|.
    """
    g = (1.0 - abs_x ** 2) * (1.0 - abs_y ** 2)
    return 1.0 - g / (1.0 - abs_x * abs_y) ** 2
