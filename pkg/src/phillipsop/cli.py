"""Command-line front end: classify extensions, scan grids, run verify suites.

All commands emit a single machine-readable document (JSON by default) on
standard output and communicate success through the exit code: 0 when every
check passed its tolerance, 1 on a verification failure, 2 on usage errors.
Randomness enters only through ``--seed``; scans are deterministic and a
parallel scan produces byte-identical output to a serial one.
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .csym import similarity_form_residual, solve_stable_c, scalar_system_residuals, verify_csymmetry
from .extensions import SIGMA3, Extension, KParams, classify_spectrum, eigenvector_candidate, k_matrix
from .model import FiberSymmetry
from .sampling import random_domain_vector
from .tolerances import Tolerances, get_tolerances, override, set_tolerances
from .triplet import canonical_triplet, characteristic, green_residual
from .verify import MU_SAMPLES, mu_grid, run_suite

USAGE_ERROR = 2
VERIFY_ERROR = 1

_REGULAR_FLAGS = ("zeta", "phi", "omega", "xi")
_DEGENERATE_FLAGS = ("k1", "k2")


def _parse_tol_overrides(items: list[str] | None) -> Tolerances:
    overrides: dict[str, float] = {}
    for item in items or []:
        for chunk in item.split(","):
            if not chunk:
                continue
            if "=" not in chunk:
                raise ValueError(f"--tol expects key=value, got {chunk!r}")
            key, _, value = chunk.partition("=")
            overrides[key.strip()] = float(value)
    return override(get_tolerances(), overrides)


def _parse_grid(spec: str) -> list[float]:
    """Comma list (``0,1.5,3``) or ``start:stop:count`` range."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"range spec must be start:stop:count, got {spec!r}")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 0:
            raise ValueError("range count must be non-negative")
        return [float(x) for x in np.linspace(start, stop, count)]
    return [float(x) for x in spec.split(",") if x.strip() != ""]


def _setup(seed: int):
    fs = FiberSymmetry.standard()
    return fs, canonical_triplet(fs)


def _shared_residuals(t, seed: int, green_pairs: int) -> dict[str, float]:
    """Extension-independent residuals: Green identity and characteristic function."""
    rng = np.random.default_rng(seed)
    green = max(green_residual(random_domain_vector(rng), random_domain_vector(rng), t)
                for _ in range(green_pairs))
    theta = max(float(np.linalg.norm(characteristic(mu, t))) for mu in mu_grid())
    return {"green": float(green), "theta": theta}


def _regular_report(p: KParams, fs, t, seed: int, tol: Tolerances,
                    shared: dict[str, float], probes: int = 4,
                    similarity_pairs: int = 16) -> dict:
    ext = Extension.from_params(p)
    sol = solve_stable_c(p)
    K = k_matrix(p)
    rep = verify_csymmetry(ext, sol, fs, seed=seed, probes=probes, t=t, tol=tol)
    residuals = dict(shared)
    residuals["jUnitary"] = float(np.linalg.norm(K.conj().T @ SIGMA3 @ K - SIGMA3))
    residuals.update(rep.as_dict())
    residuals["system"] = max(scalar_system_residuals(p, sol))
    residuals["similarity"] = similarity_form_residual(
        ext, sol, fs, seed=seed, pairs=similarity_pairs, t=t, tol=tol)
    passes = {
        "green": residuals["green"] < tol.green,
        "theta": residuals["theta"] < tol.theta,
        "jUnitary": residuals["jUnitary"] < tol.j_unitary,
        "intertwine": residuals["intertwine"] < tol.intertwine,
        "cSquare": residuals["cSquare"] < tol.c_square,
        "jcPositivity": residuals["jcPositivity"] > tol.jc_positivity,
        "cmSpan": residuals["cmSpan"] < tol.cm_span,
        "commutatorA": residuals["commutatorA"] < tol.commutator_a,
        "commutatorS": residuals["commutatorS"] < tol.commutator_s,
        "system": residuals["system"] < tol.matrix,
        "similarity": residuals["similarity"] < tol.similarity,
    }
    return {
        "input": {"variant": "regular", "zeta": p.zeta, "phi": p.phi,
                  "omega": p.omega, "xi": p.xi, "seed": seed},
        "spectrumClass": classify_spectrum(ext, tol).value,
        "cSolution": {"chiTilde": sol.chi_tilde, "omegaTilde": sol.omega_tilde,
                      "chiHat": sol.chi_hat, "omegaHat": sol.omega_hat},
        "residuals": residuals,
        "pass": passes,
        "passed": all(passes.values()),
    }


def _degenerate_report(k1: float, k2: float, fs, t, seed: int, tol: Tolerances,
                       shared: dict[str, float]) -> dict:
    ext = Extension.degenerate(k1, k2)
    residuals: dict = dict(shared)
    eigen = []
    worst = 0.0
    for mu in MU_SAMPLES:
        _, r = eigenvector_candidate(ext, mu, t)
        worst = max(worst, r)
        eigen.append({"mu": [mu.real, mu.imag], "residual": r})
    residuals["eigenResiduals"] = eigen
    passes = {
        "green": residuals["green"] < tol.green,
        "theta": residuals["theta"] < tol.theta,
        "eigenResiduals": worst < tol.eigen,
    }
    return {
        "input": {"variant": "degenerate", "k1": k1, "k2": k2, "seed": seed},
        "spectrumClass": classify_spectrum(ext, tol).value,
        "cSolution": None,
        "residuals": residuals,
        "pass": passes,
        "passed": all(passes.values()),
    }


def _finish(report: dict, tol: Tolerances) -> dict:
    report["toolVersion"] = __version__
    report["toleranceConfig"] = tol.as_dict()
    return report


def _variant_from_args(args) -> str:
    regular = [f for f in _REGULAR_FLAGS if getattr(args, f) is not None]
    degenerate = [f for f in _DEGENERATE_FLAGS if getattr(args, f) is not None]
    if regular and degenerate:
        raise SystemExit(_usage(f"flags --{regular[0]} and --{degenerate[0]} conflict"))
    if degenerate:
        if len(degenerate) != 2:
            raise SystemExit(_usage("degenerate extensions need both --k1 and --k2"))
        return "degenerate"
    if not regular:
        raise SystemExit(_usage("give either --zeta/--phi/--omega/--xi or --k1/--k2"))
    return "regular"


def _usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE_ERROR


def cmd_classify(args) -> int:
    tol = _parse_tol_overrides(args.tol)
    set_tolerances(tol)
    variant = _variant_from_args(args)
    fs, t = _setup(args.seed)
    shared = _shared_residuals(t, args.seed, green_pairs=32)
    if variant == "regular":
        p = KParams(args.zeta or 0.0, args.phi or 0.0, args.omega or 0.0, args.xi or 0.0)
        report = _regular_report(p, fs, t, args.seed, tol, shared)
    else:
        report = _degenerate_report(args.k1, args.k2, fs, t, args.seed, tol, shared)
    _finish(report, tol)
    _emit(report, args.format, kind="classify")
    return 0 if report["passed"] else VERIFY_ERROR


def cmd_scan(args) -> int:
    tol = _parse_tol_overrides(args.tol)
    set_tolerances(tol)
    variant = _variant_from_args(args)
    fs, t = _setup(args.seed)
    if variant == "regular":
        grids = {f: _parse_grid(getattr(args, f) or "0") for f in _REGULAR_FLAGS}
        points = [KParams(z, a, b, c) for z in grids["zeta"] for a in grids["phi"]
                  for b in grids["omega"] for c in grids["xi"]]
    else:
        grids = {f: _parse_grid(getattr(args, f)) for f in _DEGENERATE_FLAGS}
        points = [(k1, k2) for k1 in grids["k1"] for k2 in grids["k2"]]

    shared = _shared_residuals(t, args.seed, green_pairs=16) if points else {}

    def evaluate(indexed):
        idx, point = indexed
        if variant == "regular":
            return _regular_report(point, fs, t, args.seed + idx, tol, shared,
                                   probes=2, similarity_pairs=4)
        return _degenerate_report(point[0], point[1], fs, t, args.seed + idx, tol, shared)

    work = list(enumerate(points))
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(evaluate, work))
    else:
        reports = [evaluate(w) for w in work]

    counts: dict[str, int] = {}
    max_resid: dict[str, float] = {}
    for rep in reports:
        counts[rep["spectrumClass"]] = counts.get(rep["spectrumClass"], 0) + 1
        for key, value in rep["residuals"].items():
            if key == "eigenResiduals":
                value = max((e["residual"] for e in value), default=0.0)
            if key == "jcPositivity":
                continue
            max_resid[key] = max(max_resid.get(key, 0.0), value)
    summary = {"points": len(reports), "spectrumClasses": counts,
               "maxResiduals": max_resid,
               "allPassed": all(r["passed"] for r in reports)}
    document = _finish({"grid": grids, "seed": args.seed,
                        "reports": reports, "summary": summary}, tol)
    _emit(document, args.format, kind="scan")
    return 0 if summary["allPassed"] else VERIFY_ERROR


def cmd_verify(args) -> int:
    tol = _parse_tol_overrides(args.tol)
    set_tolerances(tol)
    try:
        report = run_suite(args.suite, seed=args.seed, tol=tol)
    except KeyError as exc:
        return _usage(str(exc))
    _finish(report, tol)
    _emit(report, args.format, kind="verify")
    return 0 if report["pass"] else VERIFY_ERROR


def _emit(document: dict, fmt: str, kind: str) -> None:
    if fmt == "json":
        print(json.dumps(document, indent=2))
    elif fmt == "table":
        print(_render_table(document, kind))
    elif fmt == "csv":
        if kind != "scan":
            raise SystemExit(_usage("--format csv is only available for scans"))
        print(_render_csv(document), end="")
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(_usage(f"unknown format {fmt!r}"))


def _format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _render_table(document: dict, kind: str) -> str:
    lines = []
    if kind == "classify":
        lines.append(f"spectrum class : {document['spectrumClass']}")
        if document.get("cSolution"):
            sol = document["cSolution"]
            lines.append("c solution     : " + ", ".join(f"{k}={_format_value(v)}"
                                                         for k, v in sol.items()))
        lines.append("residuals:")
        for key, value in document["residuals"].items():
            if key == "eigenResiduals":
                value = max((e["residual"] for e in value), default=0.0)
                key = "eigen (max)"
            mark = "ok" if document["pass"].get(key.replace(" (max)", "Residuals"),
                                                document["pass"].get(key, True)) else "FAIL"
            lines.append(f"  {key:<14} {_format_value(value):>12}  {mark}")
        lines.append(f"passed         : {document['passed']}")
    elif kind == "scan":
        summary = document["summary"]
        lines.append(f"points         : {summary['points']}")
        for cls, count in sorted(summary["spectrumClasses"].items()):
            lines.append(f"  {cls:<13}: {count}")
        lines.append("max residuals:")
        for key, value in sorted(summary["maxResiduals"].items()):
            lines.append(f"  {key:<14} {_format_value(value):>12}")
        lines.append(f"all passed     : {summary['allPassed']}")
    else:
        lines.append(f"suite          : {document['suite']}")
        lines.append(f"seed           : {document['seed']}")
        for key, value in document["summary"].items():
            lines.append(f"  {key:<20} {_format_value(value)}")
        lines.append(f"pass           : {document['pass']}")
    return "\n".join(lines)


def _render_csv(document: dict) -> str:
    reports = document["reports"]
    param_keys: list[str] = []
    residual_keys: list[str] = []
    for rep in reports:
        for key in rep["input"]:
            if key not in ("variant", "seed") and key not in param_keys:
                param_keys.append(key)
        for key in rep["residuals"]:
            if key not in residual_keys:
                residual_keys.append(key)
    buf = io.StringIO()
    writer = csv_module.writer(buf, lineterminator="\n")
    writer.writerow(param_keys + ["spectrumClass"] + residual_keys + ["passed"])
    for rep in reports:
        row = [rep["input"].get(k, "") for k in param_keys]
        row.append(rep["spectrumClass"])
        for key in residual_keys:
            value = rep["residuals"].get(key, "")
            if key == "eigenResiduals" and value != "":
                value = max((e["residual"] for e in value), default=0.0)
            row.append(value)
        row.append(rep["passed"])
        writer.writerow(row)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phillipsop",
        description="Classify and verify J-self-adjoint extensions of the "
                    "Phillips symmetric operator in its lattice model.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, grid: bool):
        p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
        p.add_argument("--tol", action="append", metavar="KEY=VALUE",
                       help="tolerance override (repeatable, comma-separable)")
        p.add_argument("--format", choices=("json", "table", "csv"), default="json")
        str_or_float = str if grid else float
        for name in _REGULAR_FLAGS + _DEGENERATE_FLAGS:
            p.add_argument(f"--{name}", type=str_or_float, default=None)

    p_classify = sub.add_parser("classify", help="full report for one extension")
    add_common(p_classify, grid=False)
    p_classify.set_defaults(func=cmd_classify)

    p_scan = sub.add_parser("scan", help="reports over a parameter grid")
    add_common(p_scan, grid=True)
    p_scan.add_argument("--jobs", type=int, default=1, help="parallel evaluation threads")
    p_scan.set_defaults(func=cmd_scan)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True,
                          help="one of: green theta weyl junitary csym similarity eigen krein")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", action="append", metavar="KEY=VALUE")
    p_verify.add_argument("--format", choices=("json", "table"), default="json")
    p_verify.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = tuple(f"--{name}" for name in _REGULAR_FLAGS + _DEGENERATE_FLAGS)


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join value flags with arguments that start with a minus sign.

    argparse would otherwise read ``--zeta -2:2:5`` as a missing argument;
    grid ranges and negative parameters are legitimate values here.
    """
    out = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and argv[i + 1][1] in "0123456789.":
            out.append(f"{token}={argv[i + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    previous = get_tolerances()
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except (ValueError, KeyError) as exc:
        return _usage(str(exc))
    finally:
        set_tolerances(previous)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
