"""POVMs whose outcomes rule states out rather than identify them.

An Effect couples a positive operator with the set of sign patterns
its click excludes with certainty. The failure outcome is nothing
special: an ordinary effect whose exclusion set is empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DimensionMismatch, eig_hermitian, frob_dist, is_hermitian
from .states import Ensemble, SignPattern

DEFAULT_TOL = 1e-10


class InvalidPovm(ValueError):
    """A POVM failed validation where a valid one is required."""


@dataclass(frozen=True)
class ExclusionSet:
    """Subset of the 2**n sign patterns, packed as a bitmask.

    Bit p of mask refers to the pattern whose SignPattern.bits value is
    p, which is also its index in a uniform ensemble. mask == 0 marks
    the failure outcome (nothing excluded).
    """

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one qubit")
        if not (0 <= self.mask < (1 << (1 << self.n))):
            raise ValueError(f"mask {self.mask} out of range for n={self.n}")

    @classmethod
    def of(cls, n: int, *patterns: str) -> "ExclusionSet":
        """Build from '+-' style pattern strings."""
        mask = 0
        for s in patterns:
            p = SignPattern.from_string(s)
            if p.n != n:
                raise ValueError(f"pattern {s!r} is not on {n} qubits")
            mask |= 1 << p.bits
        return cls(n, mask)

    @property
    def size(self) -> int:
        """Number of patterns excluded."""
        return bin(self.mask).count("1")

    @property
    def is_failure(self) -> bool:
        return self.mask == 0

    def patterns(self) -> list[SignPattern]:
        return [SignPattern(self.n, b) for b in range(1 << self.n) if (self.mask >> b) & 1]

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.patterns()) + "}"


@dataclass(frozen=True)
class Effect:
    """One measurement operator plus the patterns its outcome excludes."""

    op: np.ndarray
    excludes: ExclusionSet
    label: str = ""


@dataclass(frozen=True)
class Povm:
    """A complete measurement: effects summing to the identity."""

    effects: tuple

    def __post_init__(self):
        if len(self.effects) == 0:
            raise ValueError("a POVM needs at least one effect")
        n = self.effects[0].excludes.n
        dim = self.effects[0].op.shape[0]
        for e in self.effects:
            if e.excludes.n != n:
                raise DimensionMismatch("effects disagree on qubit count")
            if e.op.shape != (dim, dim):
                raise DimensionMismatch("effects disagree on operator shape")
        if dim != 1 << n:
            raise DimensionMismatch(f"operator dim {dim} does not match {n} qubits")

    @property
    def n(self) -> int:
        return self.effects[0].excludes.n

    @property
    def dim(self) -> int:
        return self.effects[0].op.shape[0]

    @property
    def labels(self) -> list[str]:
        return [e.label for e in self.effects]


@dataclass
class ValidationReport:
    """Outcome of the three POVM checks at one tolerance.

    violations is empty exactly when positivity, completeness and
    unambiguity all hold at tol.
    """

    tol: float
    min_eigenvalues: list = field(default_factory=list)
    completeness_residual: float = 0.0
    unambiguity_residuals: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class OutcomeStats:
    """Per-effect click probabilities for a given ensemble."""

    labels: list
    probs: np.ndarray
    fail_prob: float
    avg_eliminated: float


def _expectation(op: np.ndarray, state: np.ndarray) -> float:
    return float(np.real(np.vdot(state, op @ state)))


def validate(povm: Povm, ensemble: Ensemble, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check positivity, completeness and unambiguity of a POVM.

    Unambiguity is checked against the ensemble: for every effect and
    every pattern it claims to exclude, the click probability on that
    ensemble state must vanish within tol.
    """
    dim = povm.dim
    if ensemble.dim != dim:
        raise DimensionMismatch(
            f"POVM dim {dim} does not match ensemble dim {ensemble.dim}"
        )
    if ensemble.size < 1 << povm.n:
        raise DimensionMismatch("ensemble does not cover all sign patterns")

    report = ValidationReport(tol=tol)
    total = np.zeros((dim, dim), dtype=complex)
    for i, e in enumerate(povm.effects):
        name = e.label or f"effect {i}"
        if not is_hermitian(e.op):
            report.violations.append(f"{name}: operator is not Hermitian")
            report.min_eigenvalues.append(float("nan"))
            report.unambiguity_residuals.append(float("nan"))
            continue
        lo = float(eig_hermitian(e.op)[0])
        report.min_eigenvalues.append(lo)
        if lo < -tol:
            report.violations.append(f"{name}: min eigenvalue {lo:.3e} < -{tol:.0e}")
        resid = 0.0
        for p in e.excludes.patterns():
            overlap = _expectation(e.op, ensemble.states[p.bits])
            resid = max(resid, abs(overlap))
            if abs(overlap) > tol:
                report.violations.append(
                    f"{name}: excluded pattern {p} has click probability {overlap:.3e}"
                )
        report.unambiguity_residuals.append(resid)
        total += e.op

    residual = frob_dist(total, np.eye(dim, dtype=complex))
    report.completeness_residual = residual
    if residual > tol:
        report.violations.append(f"completeness residual {residual:.3e} > {tol:.0e}")
    return report


def outcome_probabilities(povm: Povm, ensemble: Ensemble) -> OutcomeStats:
    """Click probabilities averaged over the ensemble priors."""
    if ensemble.dim != povm.dim:
        raise DimensionMismatch(
            f"POVM dim {povm.dim} does not match ensemble dim {ensemble.dim}"
        )
    probs = np.zeros(len(povm.effects))
    for i, e in enumerate(povm.effects):
        probs[i] = sum(
            w * _expectation(e.op, s) for s, w in zip(ensemble.states, ensemble.priors)
        )
    fail = float(sum(p for p, e in zip(probs, povm.effects) if e.excludes.is_failure))
    avg = float(sum(p * e.excludes.size for p, e in zip(probs, povm.effects)))
    return OutcomeStats(
        labels=list(povm.labels), probs=probs, fail_prob=fail, avg_eliminated=avg
    )


def average_eliminated(povm: Povm, ensemble: Ensemble) -> float:
    """Mean number of states excluded per shot, sum of prob * |exclusion set|."""
    return outcome_probabilities(povm, ensemble).avg_eliminated
