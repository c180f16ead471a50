"""Named verification suites over the standard parameter grids.

Each suite runs a family of residual checks at desk scale and returns a
plain-dict report (JSON-ready): per-case residuals, a summary, and a pass
flag against the tolerance set in force.  The CLI exposes these under
``verify --suite <name>``; the acceptance tests drive the same code.

Grids follow the standing conventions of the project: seven zeta values
spanning [-3, 3], five angles per angular parameter, a 10x10 mu grid in the
upper half-plane for the holomorphic functions, and a 5x5 grid for the
degenerate family.
"""

from __future__ import annotations

import math

import numpy as np

from . import krein
from .csym import (
    similarity_form_residual,
    solve_stable_c,
    scalar_system_residuals,
    verify_csymmetry,
)
from .extensions import (
    SIGMA3,
    Extension,
    KParams,
    SpectrumClass,
    classify_spectrum,
    eigenvector_candidate,
    k_matrix,
)
from .model import FiberSymmetry
from .sampling import (
    random_domain_vector,
    random_hypermaximal_neutral,
    random_transition,
)
from .tolerances import Tolerances, get_tolerances
from .triplet import MSPACE_JZ, canonical_triplet, green_residual, weyl, characteristic

__all__ = ["SUITES", "run_suite", "ZETA_GRID", "ANGLE_GRID", "MU_SAMPLES", "mu_grid"]

ZETA_GRID = (-3.0, -1.0, -0.3, 0.0, 0.3, 1.0, 3.0)
ANGLE_GRID = (0.0, math.pi / 3, math.pi / 2, 1.1 * math.pi, 1.9 * math.pi)
MU_SAMPLES = (1j, 2j, 1 + 1j, -1j, -2j, -1 - 1j)
K_GRID = tuple(np.linspace(0.0, 2.0 * math.pi, 5, endpoint=False))


def mu_grid(points: int = 10) -> list[complex]:
    """Real parts in [-5, 5], imaginary parts in (0, 5]."""
    res = np.linspace(-5.0, 5.0, points)
    ims = np.linspace(5.0 / points, 5.0, points)
    return [complex(a, b) for a in res for b in ims]


def parameter_grid() -> list[KParams]:
    return [KParams(z, a, b, c)
            for z in ZETA_GRID for a in ANGLE_GRID for b in ANGLE_GRID for c in ANGLE_GRID]


def _standard_setup():
    fs = FiberSymmetry.standard()
    return fs, canonical_triplet(fs)


def suite_green(seed: int = 0, tol: Tolerances | None = None, pairs: int = 1000) -> dict:
    """Green identity on seeded random domain pairs, tails included."""
    tol = tol or get_tolerances()
    _, t = _standard_setup()
    rng = np.random.default_rng(seed)
    cases = []
    worst = 0.0
    for k in range(pairs):
        r = green_residual(random_domain_vector(rng), random_domain_vector(rng), t)
        worst = max(worst, r)
        cases.append({"pair": k, "residual": r})
    return {"suite": "green", "seed": seed, "cases": cases,
            "summary": {"pairs": pairs, "maxResidual": worst, "tolerance": tol.green},
            "pass": worst < tol.green}


def suite_theta(seed: int = 0, tol: Tolerances | None = None) -> dict:
    """Characteristic function vanishes on the upper half-plane grid."""
    tol = tol or get_tolerances()
    _, t = _standard_setup()
    cases = []
    worst = 0.0
    for mu in mu_grid():
        r = float(np.linalg.norm(characteristic(mu, t)))
        worst = max(worst, r)
        cases.append({"mu": [mu.real, mu.imag], "residual": r})
    return {"suite": "theta", "seed": seed, "cases": cases,
            "summary": {"points": len(cases), "maxResidual": worst, "tolerance": tol.theta},
            "pass": worst < tol.theta}


def suite_weyl(seed: int = 0, tol: Tolerances | None = None) -> dict:
    """Weyl function equals iI and is mu-independent on the grid."""
    tol = tol or get_tolerances()
    _, t = _standard_setup()
    eye = np.eye(2)
    cases = []
    worst = 0.0
    for mu in mu_grid():
        r = float(np.linalg.norm(weyl(mu, t) - 1j * eye))
        worst = max(worst, r)
        cases.append({"mu": [mu.real, mu.imag], "residual": r})
    return {"suite": "weyl", "seed": seed, "cases": cases,
            "summary": {"points": len(cases), "maxResidual": worst, "tolerance": tol.weyl},
            "pass": worst < tol.weyl}


def suite_junitary(seed: int = 0, tol: Tolerances | None = None) -> dict:
    """J-unitarity of the K family over the full parameter grid."""
    tol = tol or get_tolerances()
    cases = []
    worst = 0.0
    for p in parameter_grid():
        K = k_matrix(p)
        r = float(np.linalg.norm(K.conj().T @ SIGMA3 @ K - SIGMA3))
        worst = max(worst, r)
        cases.append({"zeta": p.zeta, "phi": p.phi, "omega": p.omega, "xi": p.xi,
                      "residual": r})
    return {"suite": "junitary", "seed": seed, "cases": cases,
            "summary": {"points": len(cases), "maxResidual": worst,
                        "tolerance": tol.j_unitary},
            "pass": worst < tol.j_unitary}


def suite_csym(seed: int = 0, tol: Tolerances | None = None, probes: int = 2) -> dict:
    """Canonical stable C-symmetry across the grid, scalar system included."""
    tol = tol or get_tolerances()
    fs, t = _standard_setup()
    cases = []
    worst: dict[str, float] = {}
    min_eig = math.inf
    ok = True
    for idx, p in enumerate(parameter_grid()):
        ext = Extension.from_params(p)
        sol = solve_stable_c(p)
        e1, e2 = scalar_system_residuals(p, sol)
        rep = verify_csymmetry(ext, sol, fs, seed=seed + idx, probes=probes, t=t, tol=tol)
        entry = {"zeta": p.zeta, "phi": p.phi, "omega": p.omega, "xi": p.xi,
                 "system": max(e1, e2), **rep.as_dict()}
        cases.append(entry)
        min_eig = min(min_eig, rep.jc_min_eig)
        for key in ("cSquare", "cmSpan", "commutatorA", "commutatorS", "intertwine"):
            worst[key] = max(worst.get(key, 0.0), entry[key])
        worst["system"] = max(worst.get("system", 0.0), entry["system"])
        ok = ok and rep.passed(tol) and max(e1, e2) < tol.matrix
    return {"suite": "csym", "seed": seed, "cases": cases,
            "summary": {"points": len(cases), "worstResiduals": worst,
                        "minJCEigenvalue": min_eig},
            "pass": ok}


def suite_similarity(seed: int = 0, tol: Tolerances | None = None,
                     pairs: int = 50) -> dict:
    """Similarity witness: symmetry of the conjugated operator on probes."""
    tol = tol or get_tolerances()
    fs, t = _standard_setup()
    params = [KParams(z, a, a / 2.0, 2.0 * a)
              for z in (-3.0, -1.0, 0.0, 0.7, 2.0) for a in (0.0, 2.2)]
    cases = []
    worst = 0.0
    for idx, p in enumerate(params):
        ext = Extension.from_params(p)
        sol = solve_stable_c(p)
        r = similarity_form_residual(ext, sol, fs, seed=seed + idx, pairs=pairs, t=t, tol=tol)
        worst = max(worst, r)
        cases.append({"zeta": p.zeta, "phi": p.phi, "omega": p.omega, "xi": p.xi,
                      "residual": r})
    return {"suite": "similarity", "seed": seed, "cases": cases,
            "summary": {"extensions": len(cases), "pairsPerExtension": pairs,
                        "maxResidual": worst, "tolerance": tol.similarity},
            "pass": worst < tol.similarity}


def suite_eigen(seed: int = 0, tol: Tolerances | None = None) -> dict:
    """Degenerate eigenvectors at the sample points; regular ones have none."""
    tol = tol or get_tolerances()
    _, t = _standard_setup()
    cases = []
    worst = 0.0
    ok = True
    for k1 in K_GRID:
        for k2 in K_GRID:
            ext = Extension.degenerate(k1, k2)
            if classify_spectrum(ext, tol) is not SpectrumClass.WHOLE_PLANE:
                ok = False
            for mu in MU_SAMPLES:
                out = eigenvector_candidate(ext, mu, t)
                assert out is not None
                _, residual = out
                worst = max(worst, residual)
                cases.append({"k1": float(k1), "k2": float(k2),
                              "mu": [mu.real, mu.imag], "residual": residual})
    regular_clean = True
    for z in ZETA_GRID:
        ext = Extension.regular(z, 0.4, 1.1, 2.0)
        if classify_spectrum(ext, tol) is not SpectrumClass.REAL_LINE:
            regular_clean = False
        for mu in MU_SAMPLES:
            if eigenvector_candidate(ext, mu, t) is not None:
                regular_clean = False
    ok = ok and regular_clean and worst < tol.eigen
    return {"suite": "eigen", "seed": seed, "cases": cases,
            "summary": {"degenerateCases": len(cases), "maxResidual": worst,
                        "tolerance": tol.eigen, "regularHaveNoCandidates": regular_clean},
            "pass": ok}


def suite_krein(seed: int = 0, tol: Tolerances | None = None,
                samples: int = 100, subspaces: int = 200) -> dict:
    """Transition-operator identities and the neutrality classifier oracle."""
    tol = tol or get_tolerances()
    rng = np.random.default_rng(seed)
    cases = []
    worst = 0.0
    min_eig = math.inf
    for dim, diag in ((2, (1.0, -1.0)), (4, (1.0, 1.0, -1.0, -1.0))):
        sp = krein.IndefiniteSpace(dim, np.diag(diag).astype(complex))
        eye = np.eye(dim)
        for k in range(samples):
            T = random_transition(rng, sp)
            C = krein.transition_to_c(T, sp)
            p_plus, p_minus = krein.canonical_projectors(T, sp)
            resid = max(
                float(np.linalg.norm(C @ C - eye)),
                float(np.linalg.norm(p_plus @ p_plus - p_plus)),
                float(np.linalg.norm(p_minus @ p_minus - p_minus)),
                float(np.linalg.norm(p_plus + p_minus - eye)),
                float(np.linalg.norm(p_plus - p_minus - C)),
                float(np.linalg.norm(p_plus @ p_minus)),
            )
            jc = sp.J @ C
            eig = float(np.linalg.eigvalsh((jc + jc.conj().T) / 2.0).min())
            worst = max(worst, resid)
            min_eig = min(min_eig, eig)
            cases.append({"dim": dim, "sample": k, "residual": resid, "jcMinEig": eig})
    sp4 = krein.IndefiniteSpace(4, MSPACE_JZ)
    agree = 0
    for k in range(subspaces):
        if k % 2 == 0:
            B = random_hypermaximal_neutral(rng, MSPACE_JZ)
        else:
            B = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        cls = krein.classify_subspace(krein.SubspaceBasis(tuple(B.T)), sp4, tol)
        brute = _brute_hypermaximal(B, MSPACE_JZ, tol.rank)
        if (cls is krein.SubspaceClass.HYPERMAXIMAL_NEUTRAL) == brute:
            agree += 1
    ok = worst < tol.matrix and min_eig > tol.positivity and agree == subspaces
    return {"suite": "krein", "seed": seed, "cases": cases,
            "summary": {"maxResidual": worst, "minJCEigenvalue": min_eig,
                        "oracleAgreement": agree, "oracleTotal": subspaces},
            "pass": ok}


def _brute_hypermaximal(B: np.ndarray, metric: np.ndarray, thr: float) -> bool:
    """Span(B) equals its metric-orthogonal complement, by brute force."""
    _, s, vh = np.linalg.svd(B.conj().T @ metric)
    null = vh[int(np.sum(s > thr)):].conj().T
    if null.shape[1] != B.shape[1]:
        return False
    stacked = np.column_stack([B, null])
    sv = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.sum(sv > thr * max(1.0, sv[0])))
    return rank == B.shape[1]


SUITES = {
    "green": suite_green,
    "theta": suite_theta,
    "weyl": suite_weyl,
    "junitary": suite_junitary,
    "csym": suite_csym,
    "similarity": suite_similarity,
    "eigen": suite_eigen,
    "krein": suite_krein,
}


def run_suite(name: str, seed: int = 0, tol: Tolerances | None = None) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed, tol=tol)
