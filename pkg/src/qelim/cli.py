"""Command line front end.

Six subcommands: validate, probs, sweep, simulate, certify, bounds.
Angles are given as 2*theta in degrees. Output is JSON (default) or
CSV via --format; sweep defaults to CSV. Exit codes: 0 on success and
passing checks, 1 when a requested check fails, 2 on usage or domain
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .analysis import discrimination_gap, elimination_bound
from .povm import outcome_probabilities, validate
from .schemes import (
    DegenerateAngle,
    TooManyQubits,
    UnsupportedAngle,
    ancilla_eliminate_one,
    eliminate_one,
    eliminate_two,
    local_usd,
    pbr_basis,
    usd_qubit,
)
from .states import Angle, uniform_ensemble
from .verify import certify_one, certify_two, monte_carlo

SCHEMES = ("pbr", "eliminate-one", "ancilla-one", "eliminate-two", "usd", "local-usd")

DEFAULT_TOL = 1e-10
DEFAULT_SHOTS = 10 ** 6
DEFAULT_SEED = 1
SEED_ENV_VAR = "QELIM_SEED"


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _angle_from_deg(deg: float) -> Angle:
    if not (0.0 <= deg <= 90.0):
        raise UnsupportedAngle(
            f"--two-theta-deg must lie in [0, 90] degrees, got {deg:g}"
        )
    return Angle.from_two_theta_deg(deg)


def _build_scheme(scheme: str, angle: Angle, n: int):
    """Construct the named POVM; returns (povm, qubit count)."""
    if scheme == "pbr":
        return pbr_basis(angle), 2
    if scheme == "eliminate-one":
        if angle.two_theta >= math.pi / 4.0:
            raise UnsupportedAngle(
                "eliminate-one covers 0 <= 2*theta < 45 deg; use "
                "--scheme ancilla-one for 45 <= 2*theta <= 90 deg"
            )
        return eliminate_one(angle), 2
    if scheme == "ancilla-one":
        return ancilla_eliminate_one(angle), 2
    if scheme == "eliminate-two":
        return eliminate_two(angle), 2
    if scheme == "usd":
        return usd_qubit(angle), 1
    if scheme == "local-usd":
        return local_usd(angle, n), n
    raise UnsupportedAngle(f"unknown scheme {scheme!r}")


def _resolve_seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
        else:
            seed = DEFAULT_SEED
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return seed


def _emit(args, command: str, config: dict, result: dict, rows: list, columns: list):
    """Write JSON (nested) or CSV (tabular rows) to --out or stdout."""
    fmt = args.format or ("csv" if command == "sweep" else "json")
    if fmt == "json":
        text = json.dumps(
            {"command": command, "config": config, "result": result}, indent=2
        )
        text += "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c, "")) for c in columns])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args) -> int:
    angle = _angle_from_deg(args.two_theta_deg)
    povm, nq = _build_scheme(args.scheme, angle, args.n)
    ensemble = uniform_ensemble(angle, nq)
    report = validate(povm, ensemble, tol=args.tol)
    config = {
        "scheme": args.scheme,
        "two_theta_deg": args.two_theta_deg,
        "n": nq,
        "tol": args.tol,
    }
    result = {
        "ok": report.ok,
        "violations": report.violations,
        "completeness_residual": report.completeness_residual,
        "min_eigenvalues": report.min_eigenvalues,
        "unambiguity_residuals": report.unambiguity_residuals,
    }
    rows = [
        {
            "effect": e.label,
            "min_eigenvalue": report.min_eigenvalues[i],
            "unambiguity_residual": report.unambiguity_residuals[i],
            "completeness_residual": report.completeness_residual,
            "ok": report.ok,
        }
        for i, e in enumerate(povm.effects)
    ]
    cols = [
        "effect",
        "min_eigenvalue",
        "unambiguity_residual",
        "completeness_residual",
        "ok",
    ]
    _emit(args, "validate", config, result, rows, cols)
    return 0 if report.ok else 1


def _cmd_probs(args) -> int:
    angle = _angle_from_deg(args.two_theta_deg)
    povm, nq = _build_scheme(args.scheme, angle, args.n)
    stats = outcome_probabilities(povm, uniform_ensemble(angle, nq))
    config = {"scheme": args.scheme, "two_theta_deg": args.two_theta_deg, "n": nq}
    result = {
        "labels": stats.labels,
        "probs": [float(p) for p in stats.probs],
        "fail_prob": stats.fail_prob,
        "avg_eliminated": stats.avg_eliminated,
    }
    rows = [
        {
            "label": e.label,
            "probability": float(p),
            "excluded_count": e.excludes.size,
        }
        for e, p in zip(povm.effects, stats.probs)
    ]
    _emit(args, "probs", config, result, rows, ["label", "probability", "excluded_count"])
    return 0


def _cmd_sweep(args) -> int:
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")
    if not args.from_deg < args.to_deg:
        raise ValueError("--from must be smaller than --to")
    span = args.to_deg - args.from_deg
    degs = [args.from_deg + span * i / (args.steps - 1) for i in range(args.steps)]
    rows = []
    columns = ["two_theta_deg", "fail_prob"]
    for deg in degs:
        angle = _angle_from_deg(deg)
        povm, nq = _build_scheme(args.scheme, angle, args.n)
        stats = outcome_probabilities(povm, uniform_ensemble(angle, nq))
        bound = elimination_bound(angle, nq).bound
        row = {"two_theta_deg": deg, "fail_prob": stats.fail_prob}
        for e, p in zip(povm.effects, stats.probs):
            key = f"p[{e.label}]"
            row[key] = float(p)
            if key not in columns:
                columns.append(key)
        row["avg_eliminated"] = stats.avg_eliminated
        row["bound"] = bound
        rows.append(row)
    columns += ["avg_eliminated", "bound"]
    for row in rows:
        for c in columns:
            row.setdefault(c, 0.0)  # outcomes absent at this angle never click
    config = {
        "scheme": args.scheme,
        "from": args.from_deg,
        "to": args.to_deg,
        "steps": args.steps,
        "n": args.n,
    }
    result = {"columns": columns, "rows": [[r.get(c) for c in columns] for r in rows]}
    _emit(args, "sweep", config, result, rows, columns)
    return 0


def _cmd_simulate(args) -> int:
    angle = _angle_from_deg(args.two_theta_deg)
    if args.shots < 1:
        raise ValueError("--shots must be at least 1")
    seed = _resolve_seed(args)
    povm, nq = _build_scheme(args.scheme, angle, args.n)
    sim = monte_carlo(povm, uniform_ensemble(angle, nq), args.shots, seed)
    config = {
        "scheme": args.scheme,
        "two_theta_deg": args.two_theta_deg,
        "n": nq,
        "shots": args.shots,
        "seed": seed,
    }
    result = {
        "labels": sim.labels,
        "counts": sim.counts,
        "freqs": sim.freqs,
        "analytic": sim.analytic,
        "max_abs_dev": sim.max_abs_dev,
        "avg_eliminated": sim.avg_eliminated,
    }
    rows = [
        {
            "label": lab,
            "count": cnt,
            "frequency": frq,
            "analytic": ana,
            "abs_dev": abs(frq - ana),
        }
        for lab, cnt, frq, ana in zip(sim.labels, sim.counts, sim.freqs, sim.analytic)
    ]
    _emit(
        args,
        "simulate",
        config,
        result,
        rows,
        ["label", "count", "frequency", "analytic", "abs_dev"],
    )
    return 0


def _cmd_certify(args) -> int:
    angle = _angle_from_deg(args.two_theta_deg)
    if args.scheme == "eliminate-one":
        report = certify_one(angle)
    elif args.scheme == "eliminate-two":
        report = certify_two(angle)
    else:
        raise ValueError(
            "certify supports --scheme eliminate-one or eliminate-two"
        )
    config = {"scheme": args.scheme, "two_theta_deg": args.two_theta_deg}
    result = {
        "claim": report.claim,
        "closed_form": report.closed_form,
        "oracle": report.oracle,
        "gap": report.gap,
        "params": report.params,
        "verdict": report.verdict,
    }
    row = {
        "claim": report.claim,
        "closed_form": report.closed_form,
        "oracle": report.oracle,
        "gap": report.gap,
        "verdict": report.verdict,
    }
    _emit(args, "certify", config, result, [row], list(row.keys()))
    return 0 if report.ok else 1


def _cmd_bounds(args) -> int:
    angle = _angle_from_deg(args.two_theta_deg)
    if args.n < 1:
        raise ValueError("--n must be at least 1")
    report = elimination_bound(angle, args.n)
    gap = discrimination_gap(angle.overlap, args.n)
    config = {"two_theta_deg": args.two_theta_deg, "n": args.n}
    result = {
        "n": report.n,
        "overlap": report.overlap,
        "bound": report.bound,
        "per_k_caps": [[k, cap] for k, cap in report.per_k_caps],
        "disc_gap": gap,
    }
    rows = [
        {
            "n": report.n,
            "two_theta_deg": args.two_theta_deg,
            "bound": report.bound,
            "disc_gap": gap,
            "k": k,
            "cap": cap,
        }
        for k, cap in report.per_k_caps
    ]
    _emit(
        args,
        "bounds",
        config,
        result,
        rows,
        ["n", "two_theta_deg", "bound", "disc_gap", "k", "cap"],
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qelim",
        description="Unambiguous state-elimination measurements for qubit pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scheme=True, angle=True):
        if scheme:
            p.add_argument("--scheme", required=True, choices=SCHEMES)
        if angle:
            p.add_argument("--two-theta-deg", type=float, required=True)
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "csv"), default=None)

    common(sub.add_parser("validate", help="check a scheme's POVM"))
    common(sub.add_parser("probs", help="outcome probabilities of a scheme"))

    p_sweep = sub.add_parser("sweep", help="tabulate a scheme over an angle range")
    p_sweep.add_argument("--from", dest="from_deg", type=float, required=True)
    p_sweep.add_argument("--to", dest="to_deg", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    common(p_sweep, angle=False)

    p_sim = sub.add_parser("simulate", help="finite-shot sampling of a scheme")
    p_sim.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p_sim.add_argument("--seed", type=int, default=None)
    common(p_sim)

    common(sub.add_parser("certify", help="re-derive a closed form by search"))

    p_bounds = sub.add_parser("bounds", help="local benchmark and gap at an angle")
    common(p_bounds, scheme=False)
    return parser


_COMMANDS = {
    "validate": _cmd_validate,
    "probs": _cmd_probs,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "certify": _cmd_certify,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except (UnsupportedAngle, DegenerateAngle, TooManyQubits, ValueError) as exc:
        print(f"qelim {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
