"""Measurement constructions that exclude preparations without error.

Six schemes for qubits drawn from the pair |+t>, |-t>:

* pbr_basis: the orthonormal conclusive basis, two qubits, 2t = 45 deg.
* eliminate_one: rules out one of the four sign patterns, 2t < 45 deg.
* ancilla_eliminate_one: couples each qubit to an ancilla and reduces
  to the 45 degree basis, covering 45 deg <= 2t <= 90 deg.
* eliminate_two: rules out a pair of patterns, succeeding always once
  cos(2t) <= sqrt(2) - 1.
* usd_qubit / local_usd: unambiguous discrimination per qubit, the
  local benchmark the collective schemes are measured against.

Sign-flip covariance is the organising symmetry: conjugating by
U = diag(1, -1) on a qubit swaps |+t> and |-t|, and symmetrize()
averages any two-qubit eliminate-one measurement over that group.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .linalg import kron, kron_all, outer, projector
from .povm import Effect, ExclusionSet, Povm
from .states import Angle, SignPattern, orth_state, qubit_state

# cos(2t) at and below which pair elimination succeeds deterministically
PAIR_THRESHOLD_OVERLAP = math.sqrt(2.0) - 1.0

_PBR_OVERLAP_TOL = 1e-9

_E0 = np.array([1.0, 0.0], dtype=complex)
_E1 = np.array([0.0, 1.0], dtype=complex)
_SIGN_FLIP = np.diag([1.0, -1.0]).astype(complex)


class UnsupportedAngle(ValueError):
    """The requested angle lies outside the scheme's domain."""


class DegenerateAngle(ValueError):
    """The two states coincide, so the construction is ill-defined."""


class BadLabels(ValueError):
    """Effects do not carry the exclusion sets the operation needs."""


class TooManyQubits(ValueError):
    """Qubit count exceeds the supported range."""


def _pattern_label(n: int, bits: int) -> str:
    return f"not({SignPattern(n, bits)})"


def pbr_basis(angle: Angle, zero_plus: bool = False) -> Povm:
    """Orthonormal two-qubit basis excluding one sign pattern per click.

    Exists only at 2t = 45 deg. For each pattern (a, b) the basis vector
    (|a, b_perp> + |a_perp, b>) / sqrt(2) is orthogonal to |a, b> and to
    the other three basis vectors. With zero_plus=True the construction
    is expressed for the pair {|0>, |+>} instead of the symmetric pair;
    the two versions differ by a single-qubit rotation.
    """
    if abs(angle.overlap - 2.0 ** -0.5) > _PBR_OVERLAP_TOL:
        raise UnsupportedAngle(
            f"conclusive basis needs 2*theta = 45 deg, got {angle.two_theta_deg:.6g} deg"
        )
    if zero_plus:
        plus = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        minus = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0)
        pair = (_E0, plus)
        perp = (_E1, minus)
    else:
        pair = (qubit_state(angle, +1), qubit_state(angle, -1))
        perp = (orth_state(angle, +1), orth_state(angle, -1))

    effects = []
    for bits in range(4):
        i, j = bits & 1, (bits >> 1) & 1
        vec = (kron(pair[i], perp[j]) + kron(perp[i], pair[j])) / math.sqrt(2.0)
        effects.append(
            Effect(projector(vec), ExclusionSet(2, 1 << bits), _pattern_label(2, bits))
        )
    return Povm(tuple(effects))


def eliminate_one(angle: Angle) -> Povm:
    """Exclude a single sign pattern of two qubits, 0 <= 2t < 45 deg.

    One rank-one effect per pattern, all four related by sign flips, plus
    a failure effect proportional to |00><00|. The amplitudes
    (tan(t)(1 + tan(t)/2), -1/2, -1/2, -1/2) make each effect orthogonal
    to its target pattern and the failure weight is what the sum rule
    leaves over; the weight reaches zero exactly at 2t = 45 deg.
    """
    if not (0.0 <= angle.two_theta < math.pi / 4.0):
        raise UnsupportedAngle(
            f"single elimination needs 0 <= 2*theta < 45 deg, got "
            f"{angle.two_theta_deg:.6g} deg; the ancilla construction covers "
            f"45 to 90 deg"
        )
    t = math.tan(angle.theta)
    base = np.array([t * (1.0 + 0.5 * t), -0.5, -0.5, -0.5], dtype=complex)

    effects = []
    for flip in range(4):
        signs = np.array(
            [(-1.0) ** ((idx >> 1) * (flip & 1) + (idx & 1) * ((flip >> 1) & 1))
             for idx in range(4)]
        )
        vec = base * signs
        effects.append(
            Effect(projector(vec), ExclusionSet(2, 1 << flip), _pattern_label(2, flip))
        )
    fail_coef = 1.0 - t * t * (2.0 + t) ** 2
    fail_op = np.zeros((4, 4), dtype=complex)
    fail_op[0, 0] = fail_coef
    effects.append(Effect(fail_op, ExclusionSet(2, 0), "fail"))
    return Povm(tuple(effects))


def _gram_schmidt_completion(cols: list[np.ndarray], order) -> list[np.ndarray]:
    """Extend orthonormal cols to a full basis, drawing candidates in order."""
    dim = len(cols[0])
    basis = [c.copy() for c in cols]
    for k in order:
        if len(basis) == dim:
            break
        cand = np.zeros(dim, dtype=complex)
        cand[k] = 1.0
        for b in basis:
            cand = cand - np.vdot(b, cand) * b
        norm = float(np.linalg.norm(cand))
        if norm > 1e-8:
            basis.append(cand / norm)
    if len(basis) != dim:
        raise ValueError("could not complete the basis from the given order")
    return basis


def _coupling_unitary(angle: Angle, order) -> np.ndarray:
    """Unitary on (system, ancilla) sending |+-t>|0> to |+-22.5 deg>|phi_+->.

    The ancilla states phi_+- = cos(mu)|0> +- sin(mu)|1> absorb the
    excess overlap: cos(2mu) = sqrt(2) cos(2t) keeps the global inner
    product equal to cos(2t).
    """
    half = Angle(math.pi / 8.0)
    two_mu = math.acos(min(1.0, max(-1.0, math.sqrt(2.0) * angle.overlap)))
    mu = 0.5 * two_mu
    phi = {
        +1: np.array([math.cos(mu), math.sin(mu)], dtype=complex),
        -1: np.array([math.cos(mu), -math.sin(mu)], dtype=complex),
    }
    x = {s: kron(qubit_state(angle, s), _E0) for s in (+1, -1)}
    y = {s: kron(qubit_state(half, s), phi[s]) for s in (+1, -1)}

    def ortho_pair(a, b):
        u1 = a / np.linalg.norm(a)
        r = b - np.vdot(u1, b) * u1
        return [u1, r / np.linalg.norm(r)]

    u = _gram_schmidt_completion(ortho_pair(x[+1], x[-1]), order)
    v = _gram_schmidt_completion(ortho_pair(y[+1], y[-1]), order)
    return sum(outer(vi, ui) for vi, ui in zip(v, u))


def ancilla_eliminate_one(angle: Angle, completion_order=(0, 1, 2, 3)) -> Povm:
    """Deterministic single-pattern exclusion for 45 deg <= 2t <= 90 deg.

    Each qubit is coupled to a fresh |0> ancilla, mapping the pair down
    to the 45 degree pair, then the conclusive basis is measured on the
    two system wires and the ancillas are discarded. Wire order of the
    dilated space is (system1, system2, ancilla1, ancilla2).

    completion_order picks the candidate vectors used to complete the
    coupling isometry to a unitary; the effective POVM does not depend
    on it, because the ancilla input is fixed.
    """
    if angle.theta == 0.0:
        raise DegenerateAngle("theta = 0 leaves nothing to couple to")
    if not (math.pi / 8.0 - 1e-12 <= angle.theta <= math.pi / 4.0 + 1e-12):
        raise UnsupportedAngle(
            f"ancilla construction needs 45 <= 2*theta <= 90 deg, got "
            f"{angle.two_theta_deg:.6g} deg; eliminate_one covers 0 to 45 deg"
        )
    v = _coupling_unitary(angle, completion_order)

    # Columns of the dilation isometry, ordered (s1, a1, s2, a2) first.
    cols = []
    for s1 in (_E0, _E1):
        for s2 in (_E0, _E1):
            cols.append(kron(v @ kron(s1, _E0), v @ kron(s2, _E0)))
    a = np.stack(cols, axis=1)

    # Reorder the 16 rows to the wire convention (s1, s2, a1, a2).
    perm = np.empty(16, dtype=int)
    for idx in range(16):
        s1, a1, s2, a2 = (idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        perm[(s1 << 3) | (s2 << 2) | (a1 << 1) | a2] = idx
    a = a[perm, :]

    basis = pbr_basis(Angle(math.pi / 8.0))
    eye4 = np.eye(4, dtype=complex)
    effects = []
    total = np.zeros((4, 4), dtype=complex)
    for eff in basis.effects:
        op = a.conj().T @ kron(eff.op, eye4) @ a
        op = (op + op.conj().T) / 2.0
        total += op
        effects.append(Effect(op, eff.excludes, eff.label))
    fail_op = eye4 - total
    fail_op = (fail_op + fail_op.conj().T) / 2.0
    effects.append(Effect(fail_op, ExclusionSet(2, 0), "fail"))
    return Povm(tuple(effects))


def eliminate_two(angle: Angle) -> Povm:
    """Exclude one of the six pattern pairs of two qubits, 0 < 2t <= 90 deg.

    Four rank-one effects handle the single-qubit pairs (first or second
    qubit pinned to one sign) and two rank-two effects handle the
    correlated pairs (equal or different signs). Once the overlap
    cos(2t) drops to sqrt(2) - 1 or below, the weights can be chosen so
    that no failure outcome is needed.
    """
    if angle.theta <= 0.0:
        raise UnsupportedAngle("pair elimination needs 0 < 2*theta <= 90 deg")
    s2 = math.sin(angle.theta) ** 2
    c2 = math.cos(angle.theta) ** 2
    beta = 1.0 / (2.0 * c2 * c2)
    deterministic = angle.overlap <= PAIR_THRESHOLD_OVERLAP
    if deterministic:
        gamma = (1.0 - (s2 / c2) ** 2) / (4.0 * s2)
        alpha = 0.5 - gamma * c2
    else:
        gamma = 1.0 / (2.0 * c2)
        alpha = 0.0

    first_plus = kron(orth_state(angle, +1), _E0)
    second_plus = kron(_E0, orth_state(angle, +1))
    second_minus = kron(_E0, orth_state(angle, -1))
    first_minus = kron(orth_state(angle, -1), _E0)
    psi_p01 = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex)
    psi_m01 = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex)
    psi_pcs = np.array([s2, 0.0, 0.0, c2], dtype=complex)
    psi_mcs = np.array([s2, 0.0, 0.0, -c2], dtype=complex)

    def eff(op, *pats):
        excl = ExclusionSet.of(2, *pats)
        return Effect(op, excl, f"not({','.join(pats)})")

    effects = [
        eff(gamma * projector(first_plus), "++", "+-"),
        eff(gamma * projector(second_plus), "++", "-+"),
        eff(gamma * projector(second_minus), "+-", "--"),
        eff(gamma * projector(first_minus), "-+", "--"),
        eff(alpha * projector(psi_p01) + beta * projector(psi_pcs), "+-", "-+"),
        eff(alpha * projector(psi_m01) + beta * projector(psi_mcs), "++", "--"),
    ]
    if not deterministic:
        fail_op = np.zeros((4, 4), dtype=complex)
        fail_op[0, 0] = 2.0 - (1.0 + s2 / c2) ** 2
        effects.append(Effect(fail_op, ExclusionSet(2, 0), "fail"))
    return Povm(tuple(effects))


def usd_qubit(angle: Angle) -> Povm:
    """Unambiguous discrimination of |+t> vs |-t> at the known optimum.

    The identifying effects are weighted projectors onto the state
    orthogonal to the rival, with weight 1/(1 + cos 2t), giving success
    probability 1 - cos(2t) on either input.
    """
    w = 1.0 / (1.0 + angle.overlap)
    id_plus = w * projector(orth_state(angle, -1))
    id_minus = w * projector(orth_state(angle, +1))
    fail = np.eye(2, dtype=complex) - id_plus - id_minus
    fail = (fail + fail.conj().T) / 2.0
    return Povm(
        (
            Effect(id_plus, ExclusionSet.of(1, "-"), "id(+)"),
            Effect(id_minus, ExclusionSet.of(1, "+"), "id(-)"),
            Effect(fail, ExclusionSet(1, 0), "fail"),
        )
    )


MAX_LOCAL_QUBITS = 6


def local_usd(angle: Angle, n: int) -> Povm:
    """Independent per-qubit discrimination on n qubits.

    Each qubit yields +, - or failure; an outcome identifying k qubits
    excludes the 2**n - 2**(n-k) patterns that contradict any of them.
    The label records the per-qubit results, leftmost qubit first.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_LOCAL_QUBITS:
        raise TooManyQubits(f"local discrimination supports up to {MAX_LOCAL_QUBITS} qubits")
    single = usd_qubit(angle)
    ops = [e.op for e in single.effects]  # id(+), id(-), fail
    chars = "+-f"
    full_mask = (1 << (1 << n)) - 1

    effects = []
    for combo in itertools.product(range(3), repeat=n):
        op = kron_all([ops[k] for k in combo])
        consistent = 0
        for p in range(1 << n):
            good = True
            for i, k in enumerate(combo):
                bit = (p >> i) & 1
                if (k == 0 and bit == 1) or (k == 1 and bit == 0):
                    good = False
                    break
            if good:
                consistent |= 1 << p
        label = "".join(chars[k] for k in combo)
        effects.append(Effect(op, ExclusionSet(n, full_mask ^ consistent), label))
    return Povm(tuple(effects))


def symmetrize(povm: Povm) -> Povm:
    """Average a two-qubit eliminate-one POVM over the sign-flip group.

    The input must carry the four singleton exclusion sets, plus
    optionally failure effects. Each output effect is the group average
    that pairs conjugation by a sign flip with the correspondingly
    flipped target pattern, so the result is covariant, idempotent under
    repeated symmetrization, and has a diagonal failure effect. Failure
    probability on the uniform ensemble is unchanged.
    """
    if povm.n != 2:
        raise BadLabels("symmetrization is defined for two-qubit POVMs")
    singles: dict[int, np.ndarray] = {}
    fail = np.zeros((4, 4), dtype=complex)
    has_fail = False
    for e in povm.effects:
        if e.excludes.is_failure:
            fail = fail + e.op
            has_fail = True
        elif e.excludes.size == 1:
            bits = e.excludes.patterns()[0].bits
            singles[bits] = singles.get(bits, np.zeros((4, 4), dtype=complex)) + e.op
        else:
            raise BadLabels(f"unexpected exclusion set {e.excludes}")
    if sorted(singles) != [0, 1, 2, 3]:
        raise BadLabels("need one effect per single pattern (plus optional failure)")

    eye2 = np.eye(2, dtype=complex)
    group = [
        (np.eye(4, dtype=complex), 0),
        (kron(_SIGN_FLIP, eye2), 1),
        (kron(eye2, _SIGN_FLIP), 2),
        (kron(_SIGN_FLIP, _SIGN_FLIP), 3),
    ]
    effects = []
    for target in range(4):
        op = np.zeros((4, 4), dtype=complex)
        for g, flip in group:
            op = op + g @ singles[target ^ flip] @ g
        effects.append(
            Effect(op / 4.0, ExclusionSet(2, 1 << target), _pattern_label(2, target))
        )
    if has_fail:
        op = np.zeros((4, 4), dtype=complex)
        for g, _ in group:
            op = op + g @ fail @ g
        effects.append(Effect(op / 4.0, ExclusionSet(2, 0), "fail"))
    return Povm(tuple(effects))
