"""Numerical certificates for the closed forms, plus a sampling check.

The certify functions re-derive optimal failure rates by direct search
over the measurement families, blind to the closed forms they are
judged against; agreement is evidence, a search result beating a
closed form is a red flag the report surfaces as a failed verdict.

monte_carlo draws finite-shot statistics with a counter-based
generator. Shots are partitioned into fixed blocks keyed by
(seed, block index), and block counts are summed, so the result is a
pure function of (povm, ensemble, shots, seed) no matter how the
blocks would be distributed over workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    eliminate_one_fail_prob,
    eliminate_two_fail_prob,
    local_avg_eliminated,
)
from .povm import InvalidPovm, Povm, outcome_probabilities, validate
from .schemes import PAIR_THRESHOLD_OVERLAP, UnsupportedAngle
from .states import Angle, Ensemble, uniform_ensemble

BLOCK_SIZE = 1 << 16

ORACLE_BEAT_TOL = 1e-12
ORACLE_MATCH_TOL = 1e-4
BOUND_TOL = 1e-9


@dataclass
class CertReport:
    """One certified claim: a closed form against an independent number."""

    claim: str
    closed_form: float
    oracle: float
    gap: float
    params: dict = field(default_factory=dict)
    verdict: str = "fail"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


@dataclass
class SimReport:
    """Finite-shot outcome counts next to the analytic probabilities."""

    shots: int
    seed: int
    labels: list
    counts: list
    freqs: list
    analytic: list
    max_abs_dev: float
    avg_eliminated: float


def certify_one(angle: Angle, grid_steps: int = 61, refine_iters: int = 40) -> CertReport:
    """Search the sign-flip covariant rank-one family for lower failure.

    Free coordinates are the three amplitudes on |01>, |10>, |11| of the
    pattern-excluding vector; the |00> amplitude is pinned by the
    zero-error condition and the common weight is pushed to the largest
    value keeping the effects below the identity. A coarse grid over
    [-1, 1]^3 is refined by coordinate steps of halving size.
    """
    if not (0.0 <= angle.two_theta < math.pi / 4.0):
        raise UnsupportedAngle(
            "certification of single elimination needs 0 <= 2*theta < 45 deg"
        )
    t = math.tan(angle.theta)
    c2 = math.cos(angle.theta) ** 2
    s2 = math.sin(angle.theta) ** 2
    w00, w01, w11 = c2 * c2, s2 * c2, s2 * s2

    def fail_of(c01, c10, c11):
        c00 = -(c01 + c10) * t - c11 * t * t
        sq00, sq01, sq10, sq11 = c00 * c00, c01 * c01, c10 * c10, c11 * c11
        top = np.maximum(np.maximum(sq00, sq01), np.maximum(sq10, sq11))
        gain = sq00 * w00 + (sq01 + sq10) * w01 + sq11 * w11
        with np.errstate(invalid="ignore", divide="ignore"):
            out = 1.0 - np.where(top > 0.0, gain / top, 0.0)
        return out

    axis = np.linspace(-1.0, 1.0, grid_steps)
    g01, g10, g11 = np.meshgrid(axis, axis, axis, indexing="ij")
    fails = fail_of(g01, g10, g11)
    flat = int(np.argmin(fails))
    best = np.array(
        [g01.ravel()[flat], g10.ravel()[flat], g11.ravel()[flat]], dtype=float
    )
    best_fail = float(fails.ravel()[flat])

    step = float(axis[1] - axis[0]) if grid_steps > 1 else 1.0
    for _ in range(refine_iters):
        for k in range(3):
            for delta in (step, -step):
                trial = best.copy()
                trial[k] = min(1.0, max(-1.0, trial[k] + delta))
                f = float(fail_of(*trial))
                if f < best_fail:
                    best_fail = f
                    best = trial
        step /= 2.0

    closed = eliminate_one_fail_prob(angle)
    gap = best_fail - closed
    ok = -ORACLE_BEAT_TOL <= gap <= ORACLE_MATCH_TOL
    return CertReport(
        claim="single-pattern exclusion failure probability is optimal "
        "within the covariant rank-one family",
        closed_form=closed,
        oracle=best_fail,
        gap=gap,
        params={
            "grid_steps": grid_steps,
            "refine_iters": refine_iters,
            "amplitudes": [float(x) for x in best],
        },
        verdict="pass" if ok else "fail",
    )


def certify_two(angle: Angle, grid_steps: int = 201, zoom_rounds: int = 6) -> CertReport:
    """Search the pair-exclusion weight polytope for higher success.

    The three weights obey three linear caps; for fixed (gamma, beta)
    the correlated-pair weight alpha is pushed to its own cap, so the
    search runs over a (gamma, beta) grid with feasibility filtering,
    re-centered and shrunk a few times because the flat grid alone
    cannot resolve the optimum to the 1e-4 the verdict demands.
    """
    if angle.theta <= 0.0:
        raise UnsupportedAngle(
            "certification of pair elimination needs 0 < 2*theta <= 90 deg"
        )
    s2 = math.sin(angle.theta) ** 2
    c2 = math.cos(angle.theta) ** 2
    sin_sq_2t = 4.0 * s2 * c2
    gamma_hi = min(1.0 / (4.0 * s2), 1.0 / (2.0 * c2))
    beta_hi = 1.0 / (2.0 * c2 * c2)

    def success_of(gamma, beta):
        feasible = 2.0 * beta * s2 * s2 + 4.0 * gamma * s2 <= 1.0 + 1e-12
        alpha = np.clip((1.0 - 2.0 * gamma * c2) / 2.0, 0.0, None)
        val = 8.0 * gamma * s2 * c2 * c2 + alpha * sin_sq_2t + 4.0 * beta * s2 * s2 * c2 * c2
        return np.where(feasible, val, -np.inf)

    g_lo, g_hi = 0.0, gamma_hi
    b_lo, b_hi = 0.0, beta_hi
    best_succ = -np.inf
    best = (0.0, 0.0)
    for _ in range(zoom_rounds):
        gs = np.linspace(g_lo, g_hi, grid_steps)
        bs = np.linspace(b_lo, b_hi, grid_steps)
        gg, bb = np.meshgrid(gs, bs, indexing="ij")
        succ = success_of(gg, bb)
        flat = int(np.argmax(succ))
        if float(succ.ravel()[flat]) > best_succ:
            best_succ = float(succ.ravel()[flat])
            best = (float(gg.ravel()[flat]), float(bb.ravel()[flat]))
        g_step = gs[1] - gs[0] if grid_steps > 1 else g_hi
        b_step = bs[1] - bs[0] if grid_steps > 1 else b_hi
        g_lo = max(0.0, best[0] - 2.0 * g_step)
        g_hi = min(gamma_hi, best[0] + 2.0 * g_step)
        b_lo = max(0.0, best[1] - 2.0 * b_step)
        b_hi = min(beta_hi, best[1] + 2.0 * b_step)

    closed = 1.0 - eliminate_two_fail_prob(angle)
    gap = best_succ - closed
    ok = abs(gap) <= ORACLE_MATCH_TOL and gap <= BOUND_TOL
    claim = "pair-exclusion weights achieve the closed-form success probability"
    if angle.overlap > PAIR_THRESHOLD_OVERLAP:
        claim += " (conjecture-consistent)"
    return CertReport(
        claim=claim,
        closed_form=closed,
        oracle=best_succ,
        gap=gap,
        params={
            "grid_steps": grid_steps,
            "zoom_rounds": zoom_rounds,
            "gamma": best[0],
            "beta": best[1],
        },
        verdict="pass" if ok else "fail",
    )


def audit_bound(povm: Povm, angle: Angle, tol: float = BOUND_TOL) -> CertReport:
    """Check a POVM against the local elimination benchmark.

    Validates the POVM on the uniform ensemble first, then checks the
    average excluded count and, for every exclusion size K present, the
    cap K * p(exclude K) against 2^n - (1 + cos 2t)^n.
    """
    n = povm.n
    ensemble = uniform_ensemble(angle, n)
    report = validate(povm, ensemble)
    if not report.ok:
        raise InvalidPovm("; ".join(report.violations))
    stats = outcome_probabilities(povm, ensemble)
    bound = local_avg_eliminated(angle, n)

    per_k: dict[int, float] = {}
    for e, p in zip(povm.effects, stats.probs):
        k = e.excludes.size
        if k:
            per_k[k] = per_k.get(k, 0.0) + float(p)
    ok = stats.avg_eliminated <= bound + tol
    worst = -np.inf
    for k, p in sorted(per_k.items()):
        excess = k * p - bound
        worst = max(worst, excess)
        if excess > tol:
            ok = False
    return CertReport(
        claim="average excluded count within the local benchmark",
        closed_form=bound,
        oracle=stats.avg_eliminated,
        gap=bound - stats.avg_eliminated,
        params={
            "n": n,
            "two_theta_deg": angle.two_theta_deg,
            "per_k_prob": {str(k): p for k, p in sorted(per_k.items())},
            "worst_cap_excess": float(worst) if per_k else 0.0,
        },
        verdict="pass" if ok else "fail",
    )


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2 ** 64 - 1), block]))


def monte_carlo(povm: Povm, ensemble: Ensemble, shots: int, seed: int) -> SimReport:
    """Sample preparation-then-outcome shots, reproducibly.

    A state index is drawn from the priors, then an outcome from that
    state's exact click distribution. Results are bitwise reproducible
    for fixed (povm, ensemble, shots, seed).
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    report = validate(povm, ensemble)
    if not report.ok:
        raise InvalidPovm("; ".join(report.violations))

    m = len(povm.effects)
    probs = np.zeros((ensemble.size, m))
    for j, e in enumerate(povm.effects):
        for i, s in enumerate(ensemble.states):
            probs[i, j] = max(0.0, float(np.real(np.vdot(s, e.op @ s))))
    probs /= probs.sum(axis=1, keepdims=True)
    outcome_cdf = np.cumsum(probs, axis=1)
    outcome_cdf[:, -1] = 1.0
    prior_cdf = np.cumsum(np.asarray(ensemble.priors, dtype=float))
    prior_cdf[-1] = 1.0

    counts = np.zeros(m, dtype=np.int64)
    done = 0
    block = 0
    while done < shots:
        size = min(BLOCK_SIZE, shots - done)
        rng = _block_rng(seed, block)
        u_state = rng.random(size)
        u_out = rng.random(size)
        states = np.searchsorted(prior_cdf, u_state, side="right")
        for i in np.unique(states):
            mask = states == i
            picks = np.searchsorted(outcome_cdf[i], u_out[mask], side="right")
            counts += np.bincount(picks, minlength=m)
        done += size
        block += 1

    stats = outcome_probabilities(povm, ensemble)
    freqs = counts / shots
    sizes = np.array([e.excludes.size for e in povm.effects], dtype=float)
    return SimReport(
        shots=shots,
        seed=seed,
        labels=list(povm.labels),
        counts=[int(c) for c in counts],
        freqs=[float(f) for f in freqs],
        analytic=[float(p) for p in stats.probs],
        max_abs_dev=float(np.max(np.abs(freqs - stats.probs))),
        avg_eliminated=float(np.dot(freqs, sizes)),
    )
