"""Self-verification suites: tolerance identities, scans, and oracle runs.

``quick`` covers the closed-form identities, fixed examples, feasibility
verdicts and the kaon application in a few seconds; ``full`` adds the
independent CHSH maximizer comparison and the impossibility grid scans.
Every check is wrapped so an exception counts as a failure rather than
aborting the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import measures
from .bell import analytic_bell, oracle_bell_max
from .errors import NonorthoError
from .feasibility import (VERDICT_FEASIBLE_DEGENERATE, VERDICT_FEASIBLE_ORTHOGONAL,
                          VERDICT_INFEASIBLE, concurrence_scan, deviation,
                          maximal_feasibility, mu_squared_solutions, nn_case_floor,
                          state_deviation)
from .kaon import (KaonEvolution, kaon_deviation_closed_form, kaon_entangled_state,
                   kaon_overlap, weak_decay_norm)
from .report import analyze_state, canonical_bell_value
from .sampling import DEFAULT_SEED, random_states
from .schmidt import reconstruct, reduced_density, schmidt_decompose
from .state import embed, make_state, state_from_magnitudes

TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifySummary:
    level: str
    seed: int
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def max_deviation_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """max-norm distance between u and v after aligning a global phase."""
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(u - phase * v)))


def _run(name: str, fn: Callable[[], tuple[bool, str]],
         out: list[CheckResult]) -> None:
    try:
        passed, detail = fn()
    except Exception as exc:   # a crash is a failure, not an abort
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    out.append(CheckResult(name, passed, detail))


def _check_oo_maximal() -> tuple[bool, str]:
    s = make_state(1 / math.sqrt(2), -1 / math.sqrt(2), 0, 0)
    rep = analyze_state(s)
    errs = (abs(rep.bell_analytic - TWO_SQRT_TWO), abs(rep.d), abs(rep.concurrence - 1),
            abs(rep.entropy_bits - 1))
    return max(errs) <= 1e-12, f"max error {max(errs):.2e} (tol 1e-12)"


def _check_identities(seed: int, count: int = 10_000) -> list[tuple[str, float, float]]:
    """Worst-case residuals of the four dual-route identities."""
    worst_bell = worst_cd = worst_cc = worst_ee = 0.0
    for s in random_states(count, seed):
        form = schmidt_decompose(s)
        d = deviation(form)
        bell = analytic_bell(form)
        c_det = measures.concurrence_det(s)
        c_flip = measures.concurrence_spin_flip(embed(s))
        e_direct = measures.entropy_direct(reduced_density(s, "A"))
        e_wootters = measures.entanglement_entropy(c_det)
        worst_bell = max(worst_bell, abs(bell - 2.0 * math.sqrt(2.0 - d)))
        worst_cd = max(worst_cd, abs(c_det ** 2 + d - 1.0))
        worst_cc = max(worst_cc, abs(c_det - c_flip))
        worst_ee = max(worst_ee, abs(e_direct - e_wootters))
    return [("bell-vs-deviation", worst_bell, 1e-12),
            ("concurrence-sq-plus-d", worst_cd, 1e-12),
            ("concurrence-two-routes", worst_cc, 1e-12),
            ("entropy-two-routes", worst_ee, 1e-12)]


def _check_canonical_settings(seed: int, count: int = 1000) -> tuple[bool, str]:
    worst = 0.0
    for s in random_states(count, seed + 1):
        form = schmidt_decompose(s)
        worst = max(worst, abs(canonical_bell_value(s) - analytic_bell(form)))
    return worst <= 1e-9, f"worst |canonical - analytic| {worst:.2e} (tol 1e-9)"


def _check_round_trip(seed: int, count: int = 1000) -> tuple[bool, str]:
    worst_vec = worst_det = 0.0
    for s in random_states(count, seed + 2):
        v = embed(s)
        worst_vec = max(worst_vec,
                        max_deviation_up_to_phase(v, reconstruct(schmidt_decompose(s))))
        target = (abs(s.mu * s.nu) * s.n_a * s.n_b) ** 2
        for side in "AB":
            rho = reduced_density(s, side)
            det = (rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]).real
            worst_det = max(worst_det, abs(det - target))
    ok = worst_vec <= 1e-12 and worst_det <= 1e-12
    return ok, f"worst round trip {worst_vec:.2e}, worst det residual {worst_det:.2e}"


def _check_fixed_examples() -> tuple[bool, str]:
    errs = []
    # auto-normalization with one orthogonal side: plain amplitude rescale
    s = make_state(1, 1, 0.9, 0, auto_normalize=True)
    errs.append(abs(abs(s.mu) - 1 / math.sqrt(2)))
    errs.append(abs(abs(s.nu) - 1 / math.sqrt(2)))
    # product state embedding
    v = embed(make_state(1, 0, 0.5, 0.3))
    errs.append(float(np.max(np.abs(v - np.array([0, 0, math.sqrt(0.75), 0.5])))))
    # single-overlap eigenvalues at balanced amplitudes
    s = state_from_magnitudes(0.5, math.sqrt(0.1), 0.0)
    rep = analyze_state(s)
    errs.append(abs(rep.lambda_plus - (0.5 + 0.5 * math.sqrt(0.1))))
    errs.append(abs(rep.d - 0.1))
    errs.append(abs(rep.concurrence - math.sqrt(0.9)))
    worst = max(errs)
    return worst <= 1e-12, f"worst example error {worst:.2e} (tol 1e-12)"


def _check_root_feedback() -> tuple[bool, str]:
    cases = [(0.0, 0.0, 0.3, None), (math.sqrt(0.04), 0.0, 0.04, None),
             (0.3, 0.3, 0.0, math.pi), (0.4, 0.6, 0.5, 2.0),
             (0.2, 0.7, 0.8, -1.3)]
    worst = 0.0
    any_root = False
    for abs_x, abs_y, d_target, eta in cases:
        roots = mu_squared_solutions(abs_x, abs_y, d_target, eta)
        for q in roots:
            any_root = True
            d_back = state_deviation(q, abs_x, abs_y,
                                     eta if eta is not None else math.pi)
            worst = max(worst, abs(d_back - d_target))
    return (any_root and worst <= 1e-10), f"worst feedback error {worst:.2e} (tol 1e-10)"


def _check_on_impossibility(full_pipeline: bool) -> tuple[bool, str]:
    overlaps = [round(0.05 * k, 2) for k in range(1, 19)]
    qs = np.linspace(0.0, 1.0, 2002)[1:-1]
    worst_gap = math.inf
    for s_abs in overlaps:
        verdict = maximal_feasibility(s_abs, 0.0)
        if verdict.verdict != VERDICT_INFEASIBLE:
            return False, f"|x|={s_abs} not flagged infeasible"
        if full_pipeline:
            dmin = min(state_deviation(float(q), s_abs, 0.0) for q in qs)
        else:
            conc = 2.0 * np.sqrt(qs * (1.0 - qs)) * math.sqrt(1.0 - s_abs ** 2)
            dmin = float((1.0 - conc ** 2).min())
        worst_gap = min(worst_gap, dmin - s_abs ** 2)
    return worst_gap >= -1e-10, f"worst (min d - s^2) gap {worst_gap:.2e} (>= -1e-10)"


def _check_nn_boundary() -> tuple[bool, str]:
    worst = 0.0
    for t in (0.1, 0.3, 0.5):
        q = 1.0 / (2.0 * (1.0 - t * t))
        worst = max(worst, state_deviation(q, t, t, math.pi))
        verdict = maximal_feasibility(t, t)
        if verdict.verdict != VERDICT_FEASIBLE_DEGENERATE:
            return False, f"|x|=|y|={t} not flagged as the boundary family"
    return worst <= 1e-12, f"worst boundary-family d {worst:.2e} (tol 1e-12)"


def _check_kaon() -> tuple[bool, str]:
    errs = []
    for eps in (0.0, 1e-3, 1e-2, 1e-1):
        s = kaon_entangled_state(eps)
        rep = analyze_state(s)
        errs.append(abs(rep.d))
        errs.append(abs(rep.concurrence - 1.0))
        expected = (eps + eps) / (1.0 + eps * eps)
        if abs(kaon_overlap(eps) - expected) > 1e-15:
            return False, f"overlap mismatch at eps={eps}"
        for branch in (+1, -1):
            kaon_deviation_closed_form(eps, math.pi, branch)   # must evaluate
    evo = KaonEvolution(gamma_s=1.0, gamma_l=0.5, t=2.0 / 1.5)
    errs.append(abs(weak_decay_norm(0.0, evo) - math.exp(-1.0)))
    worst = max(errs)
    return worst <= 1e-12, f"worst kaon error {worst:.2e} (tol 1e-12)"


def _check_kaon_discrepancy_logged() -> tuple[bool, str]:
    rows = []
    for eps in (1e-3, 1e-1):
        for branch in (+1, -1):
            res = kaon_deviation_closed_form(eps, math.pi, branch)
            rows.append(f"eps={eps:g} branch={branch:+d} "
                        f"closed={res.closed_form:.6e} pipeline={res.pipeline:.1e} "
                        f"|diff|={res.difference:.3e}")
    return True, "; ".join(rows)


def _check_oracle(seed: int, grid_n: int, refine_iters: int,
                  count: int = 100) -> tuple[bool, str]:
    worst_match = worst_short = 0.0
    ceiling = 0.0
    for s in random_states(count, seed + 3):
        v = embed(s)
        analytic = analytic_bell(schmidt_decompose(s))
        canonical = canonical_bell_value(s)
        got = oracle_bell_max(v, grid_n=grid_n, refine_iters=refine_iters)
        worst_match = max(worst_match, abs(got - analytic))
        worst_short = max(worst_short, canonical - got)
        ceiling = max(ceiling, got)
    ok = (worst_match <= 1e-4 and worst_short <= 1e-9
          and ceiling <= TWO_SQRT_TWO + 1e-9)
    return ok, (f"worst |oracle - analytic| {worst_match:.2e} (tol 1e-4), "
                f"worst shortfall vs canonical {worst_short:.2e} (tol 1e-9), "
                f"max value {ceiling:.12f} <= 2*sqrt(2)+1e-9")


def _check_nn_generic() -> tuple[bool, str]:
    levels = (0.1, 0.3, 0.5, 0.7, 0.9)
    worst_gap = math.inf
    min_floor = math.inf
    for abs_x in levels:
        for abs_y in levels:
            if abs_x == abs_y:
                continue
            floor = nn_case_floor(abs_x, abs_y)
            min_floor = min(min_floor, floor)
            dmin = 1.0 - concurrence_scan(abs_x, abs_y) ** 2
            worst_gap = min(worst_gap, dmin - floor)
            verdict = maximal_feasibility(abs_x, abs_y)
            if verdict.verdict != VERDICT_INFEASIBLE:
                return False, f"({abs_x},{abs_y}) not flagged infeasible"
    ok = worst_gap >= -1e-9 and min_floor > 0
    return ok, (f"worst (scan min d - floor) {worst_gap:.2e} (>= -1e-9), "
                f"smallest floor {min_floor:.3e} > 0")


def _check_scan_vs_pipeline(seed: int) -> tuple[bool, str]:
    """The vectorized scan agrees with the per-state pipeline on a subsample."""
    rng = np.random.default_rng(seed + 4)
    worst = 0.0
    for _ in range(100):
        abs_x, abs_y = rng.uniform(0.05, 0.9, 2)
        eta = rng.uniform(-math.pi, math.pi)
        q = rng.uniform(0.01, 0.99)
        s = math.sqrt(q) * abs_x * abs_y * math.cos(eta)
        nu = math.sqrt(max(1 - q + s * s, 0.0)) - s
        g = (1 - abs_x ** 2) * (1 - abs_y ** 2)
        d_vec = 1.0 - (2.0 * math.sqrt(q) * nu * math.sqrt(g)) ** 2
        worst = max(worst, abs(d_vec - state_deviation(q, abs_x, abs_y, eta)))
    return worst <= 1e-10, f"worst |vectorized - pipeline| {worst:.2e} (tol 1e-10)"


def _check_feasible_orthogonal() -> tuple[bool, str]:
    verdict = maximal_feasibility(0.0, 0.0)
    ok = (verdict.verdict == VERDICT_FEASIBLE_ORTHOGONAL
          and verdict.witness_q == 0.5
          and verdict.witness_pipeline_d is not None
          and verdict.witness_pipeline_d < 1e-10)
    return ok, f"verdict {verdict.verdict}, witness d {verdict.witness_pipeline_d}"


def run_verify(level: str = "quick", seed: int = DEFAULT_SEED,
               grid_n: int = 24, refine_iters: int = 40) -> VerifySummary:
    if level not in ("quick", "full"):
        raise NonorthoError(f"verify level must be 'quick' or 'full', got {level!r}")
    results: list[CheckResult] = []
    _run("oo-maximal-case", _check_oo_maximal, results)

    def identities() -> tuple[bool, str]:
        rows = _check_identities(seed)
        ok = all(val <= tol for _, val, tol in rows)
        detail = ", ".join(f"{name} {val:.2e}" for name, val, _ in rows)
        return ok, detail + " (tol 1e-12 each)"
    _run("closed-form-identities-10k", identities, results)
    _run("canonical-settings-1k", lambda: _check_canonical_settings(seed), results)
    _run("schmidt-round-trip-1k", lambda: _check_round_trip(seed), results)
    _run("fixed-examples", _check_fixed_examples, results)
    _run("root-feedback", _check_root_feedback, results)
    _run("feasible-orthogonal", _check_feasible_orthogonal, results)
    _run("nn-boundary-family", _check_nn_boundary, results)
    _run("on-impossibility",
         lambda: _check_on_impossibility(full_pipeline=(level == "full")), results)
    _run("kaon-suite", _check_kaon, results)
    _run("kaon-discrepancy-log", _check_kaon_discrepancy_logged, results)
    _run("scan-vs-pipeline", lambda: _check_scan_vs_pipeline(seed), results)
    if level == "full":
        _run("nn-generic-impossibility", _check_nn_generic, results)
        _run("oracle-vs-analytic-100",
             lambda: _check_oracle(seed, grid_n, refine_iters), results)
    return VerifySummary(level=level, seed=seed, results=results)
