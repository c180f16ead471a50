"""Stable C-symmetry: the intertwining system, its solutions, and witnesses.

A regular extension with matrix ``K(zeta, phi, omega, xi)`` has a stable
C-symmetry iff some pair of involutions

    C_{chi, omega} = [[cosh(chi), sinh(chi) e^{-i omega}],
                      [-sinh(chi) e^{i omega}, -cosh(chi)]]

intertwines with K: ``K C_{~chi, ~omega} = C_{^chi, ^omega} K``.  Written in
scalar form the intertwining is equivalent to a system of two equations; the
canonical branch pins

    ~omega = omega - phi,   ^omega = omega + phi,   ~chi = ^chi = -zeta,

which solves the system identically for every parameter choice (so every
regular extension carries a stable C-symmetry, and with it a similarity to a
self-adjoint operator).  The general equal-chi branch exists iff
``|tanh zeta| < |cos(phi + (~omega - ^omega)/2)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .extensions import Extension, KParams, k_matrix
from .model import BlockOperator, FiberC, FiberSymmetry, apply_sstar
from .sampling import random_ds_vector
from .tolerances import Tolerances, get_tolerances
from .triplet import Triplet, canonical_triplet

__all__ = [
    "CSolution",
    "CSymmetryReport",
    "c_matrix",
    "solve_stable_c",
    "solve_general_c",
    "scalar_system_residuals",
    "fiber_c_matrices",
    "verify_csymmetry",
    "similarity_witness",
    "similarity_form_residual",
]


def c_matrix(chi: float, omega: float) -> np.ndarray:
    """The involution ``C_{chi, omega}``; satisfies C^2 = I and sigma3 C > 0."""
    c, s = math.cosh(chi), math.sinh(chi)
    return np.array([
        [c, s * np.exp(-1j * omega)],
        [-s * np.exp(1j * omega), -c],
    ])


@dataclass(frozen=True)
class CSolution:
    """A solution of the intertwining system in the pinned coordinates.

    ``c_plus`` acts on the defect space at ``-i``, ``c_plus_hat`` is its
    conjugated partner, and ``c_minus`` (the matrix acting on the defect
    space at ``+i``) equals ``Q^{-1} c_plus_hat Q`` — numerically the same
    matrix for the canonical triplet.
    """

    chi_tilde: float
    omega_tilde: float
    chi_hat: float
    omega_hat: float

    @property
    def c_plus(self) -> np.ndarray:
        return c_matrix(self.chi_tilde, self.omega_tilde)

    @property
    def c_plus_hat(self) -> np.ndarray:
        return c_matrix(self.chi_hat, self.omega_hat)

    def c_minus(self, q: np.ndarray | None = None) -> np.ndarray:
        if q is None:
            return self.c_plus_hat
        return np.linalg.inv(q) @ self.c_plus_hat @ q

    def intertwine_residual(self, p: KParams) -> float:
        K = k_matrix(p)
        return float(np.linalg.norm(K @ self.c_plus - self.c_plus_hat @ K))


def solve_stable_c(p: KParams) -> CSolution:
    """The canonical stable C-symmetry of a regular extension.

    Takes the branch with the best conditioning (the cosine in the
    solvability condition equals one): ``~omega = omega - phi``,
    ``^omega = omega + phi`` and ``~chi = ^chi = -zeta``.  Total: succeeds
    for every parameter choice.
    """
    return CSolution(chi_tilde=-p.zeta, omega_tilde=p.omega - p.phi,
                     chi_hat=-p.zeta, omega_hat=p.omega + p.phi)


def _wrap_angle(x: float) -> float:
    """Wrap to (-pi, pi]."""
    y = math.fmod(x + math.pi, 2.0 * math.pi)
    if y <= 0:
        y += 2.0 * math.pi
    return y - math.pi


def solve_general_c(p: KParams, omega_tilde: float, omega_hat: float,
                    tol: Tolerances | None = None) -> CSolution | None:
    """Equal-chi solution for prescribed angles, when one exists.

    Requires ``omega = (omega_hat + omega_tilde)/2`` up to 2 pi; returns
    ``None`` otherwise and also when the solvability condition
    ``|tanh zeta| < |cos(phi + (omega_tilde - omega_hat)/2)|`` fails (the
    inequality is taken with a small margin, since chi diverges at equality).
    """
    tol = tol or get_tolerances()
    if abs(_wrap_angle((omega_hat + omega_tilde) / 2.0 - p.omega)) > 1e-9:
        return None
    cosine = math.cos(p.phi + (omega_tilde - omega_hat) / 2.0)
    th = math.tanh(p.zeta)
    if abs(th) >= abs(cosine) - tol.matrix:
        return None
    chi = math.atanh(-th / cosine)
    return CSolution(chi_tilde=chi, omega_tilde=omega_tilde,
                     chi_hat=chi, omega_hat=omega_hat)


def scalar_system_residuals(p: KParams, sol: CSolution) -> tuple[float, float]:
    """Direct scalar substitution into the two intertwining equations."""
    tz = math.tanh(p.zeta)
    ch_hat, sh_hat = math.cosh(sol.chi_hat), math.sinh(sol.chi_hat)
    ch_til, sh_til = math.cosh(sol.chi_tilde), math.sinh(sol.chi_tilde)
    eq1 = (ch_hat - ch_til
           + tz * (np.exp(1j * (sol.omega_hat - p.omega - p.phi)) * sh_hat
                   - np.exp(1j * (p.omega - sol.omega_tilde - p.phi)) * sh_til))
    eq2 = (tz * (ch_hat + ch_til)
           + np.exp(1j * (p.phi + p.omega - sol.omega_hat)) * sh_hat
           + np.exp(-1j * (p.phi - p.omega + sol.omega_tilde)) * sh_til)
    return abs(complex(eq1)), abs(complex(eq2))


def fiber_c_matrices(sol: CSolution, t: Triplet) -> FiberC:
    """Convert a solution from pinned coordinates to fiber matrices.

    The defect space at ``-i`` carries ``c_plus`` in the (n_plus, n_minus)
    basis; the one at ``+i`` carries ``c_minus`` in the (m_plus, m_minus)
    basis.
    """
    e_plus = np.column_stack([t.basis.n_plus, t.basis.n_minus])
    e_minus = np.column_stack([t.basis.m_plus, t.basis.m_minus])
    c_plus = e_plus @ sol.c_plus @ e_plus.conj().T
    c_minus = e_minus @ sol.c_minus(t.q) @ e_minus.conj().T
    return FiberC(c_minus=c_minus, c_plus=c_plus)


@dataclass(frozen=True)
class CSymmetryReport:
    """Residuals of the five-part C-symmetry verification plus intertwining."""

    c_square: float
    jc_min_eig: float
    cm_span: float
    commutator_a: float
    commutator_s: float
    intertwine: float

    def as_dict(self) -> dict[str, float]:
        return {
            "cSquare": self.c_square,
            "jcPositivity": self.jc_min_eig,
            "cmSpan": self.cm_span,
            "commutatorA": self.commutator_a,
            "commutatorS": self.commutator_s,
            "intertwine": self.intertwine,
        }

    def passed(self, tol: Tolerances | None = None) -> bool:
        tol = tol or get_tolerances()
        return (self.c_square <= tol.c_square
                and self.jc_min_eig > tol.jc_positivity
                and self.cm_span <= tol.cm_span
                and self.commutator_a <= tol.commutator_a
                and self.commutator_s <= tol.commutator_s
                and self.intertwine <= tol.intertwine)


def _span_residual(image: np.ndarray, basis: np.ndarray) -> float:
    qmat, _ = np.linalg.qr(basis)
    resid = 0.0
    for k in range(image.shape[1]):
        v = image[:, k]
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        v = v / nv
        resid = max(resid, float(np.linalg.norm(v - qmat @ (qmat.conj().T @ v))))
    return resid


def verify_csymmetry(ext: Extension, sol: CSolution, fs: FiberSymmetry,
                     seed: int = 0, probes: int = 4,
                     t: Triplet | None = None,
                     tol: Tolerances | None = None) -> CSymmetryReport:
    """Full residual report for a claimed stable C-symmetry of a regular extension.

    Checks, in order: the fiber involutions square to the identity; the
    products with the fiber symmetries are positive definite; the boundary
    subspace is invariant under C; C commutes with the extension on random
    domain vectors; C commutes with S on random vectors of its domain.
    """
    if not ext.is_regular:
        raise ValueError("C-symmetry verification applies to regular extensions only")
    t = t or canonical_triplet(fs)
    fc = fiber_c_matrices(sol, t)
    eye = np.eye(fs.n)

    c_square = max(float(np.linalg.norm(fc.c_minus @ fc.c_minus - eye)),
                   float(np.linalg.norm(fc.c_plus @ fc.c_plus - eye)))
    jc_min = math.inf
    for J, C in ((fs.j_minus, fc.c_minus), (fs.j_plus, fc.c_plus)):
        JC = J @ C
        herm = (JC + JC.conj().T) / 2.0
        jc_min = min(jc_min, float(np.linalg.eigvalsh(herm).min()
                                   - np.linalg.norm(JC - herm)))

    # boundary-subspace invariance: C acts blockwise in the pinned coordinates
    c_boundary = np.zeros((4, 4), dtype=complex)
    c_boundary[:2, :2] = sol.c_plus
    c_boundary[2:, 2:] = sol.c_minus(t.q)
    cm_span = _span_residual(c_boundary @ ext.m_basis, ext.m_basis)

    intertwine = sol.intertwine_residual(ext.params)

    c_op = BlockOperator(fc.c_minus, fc.c_plus)
    rng = np.random.default_rng(seed)
    commutator_a = 0.0
    for _ in range(probes):
        coeffs = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        defect = ext.m_basis @ coeffs
        psi = random_ds_vector(rng, n=fs.n) + t.basis.domain_from_coords(defect)
        psi = (1.0 / psi.to_lattice().norm()) * psi
        resid = (apply_sstar(c_op.apply_domain(psi)) - c_op.apply(apply_sstar(psi))).norm()
        commutator_a = max(commutator_a, float(resid))
    commutator_s = 0.0
    for _ in range(probes):
        u = random_ds_vector(rng, n=fs.n)
        u = (1.0 / u.to_lattice().norm()) * u
        resid = (apply_sstar(c_op.apply_domain(u)) - c_op.apply(apply_sstar(u))).norm()
        commutator_s = max(commutator_s, float(resid))

    return CSymmetryReport(c_square=c_square, jc_min_eig=jc_min, cm_span=cm_span,
                           commutator_a=commutator_a, commutator_s=commutator_s,
                           intertwine=intertwine)


def _sqrtm_hpd(M: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Square root of a Hermitian positive-definite matrix by eigendecomposition."""
    herm = (M + M.conj().T) / 2.0
    eigs, vecs = np.linalg.eigh(herm)
    if eigs.min() <= tol.positivity:
        raise ValueError("matrix is not positive definite")
    return (vecs * np.sqrt(eigs)) @ vecs.conj().T


def similarity_witness(sol: CSolution, fs: FiberSymmetry,
                       t: Triplet | None = None,
                       tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Fiber pair ``(W_minus, W_plus)`` with ``W_pm^2 = J_pm C_pm``.

    The lifted block-constant W conjugates the extension into an operator
    that is symmetric in the ordinary inner product.
    """
    tol = tol or get_tolerances()
    t = t or canonical_triplet(fs)
    fc = fiber_c_matrices(sol, t)
    w_minus = _sqrtm_hpd(fs.j_minus @ fc.c_minus, tol)
    w_plus = _sqrtm_hpd(fs.j_plus @ fc.c_plus, tol)
    return w_minus, w_plus


def similarity_form_residual(ext: Extension, sol: CSolution, fs: FiberSymmetry,
                             seed: int = 0, pairs: int = 50,
                             t: Triplet | None = None,
                             tol: Tolerances | None = None) -> float:
    """Symmetry defect of the conjugated extension on probe pairs.

    Probes are W-images of random domain vectors; the reported number is the
    largest ``|(W A psi, W phi) - (W psi, W A phi)|`` over the pairs, with
    the domain vectors normalized on the lattice.
    """
    t = t or canonical_triplet(fs)
    w_minus, w_plus = similarity_witness(sol, fs, t=t, tol=tol)
    w_op = BlockOperator(w_minus, w_plus)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        vecs = []
        for _ in range(2):
            coeffs = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            defect = ext.m_basis @ coeffs
            psi = random_ds_vector(rng, n=fs.n) + t.basis.domain_from_coords(defect)
            vecs.append((1.0 / psi.to_lattice().norm()) * psi)
        psi, phi = vecs
        wa_psi = w_op.apply(apply_sstar(psi))
        wa_phi = w_op.apply(apply_sstar(phi))
        w_psi = w_op.apply(psi.to_lattice())
        w_phi = w_op.apply(phi.to_lattice())
        worst = max(worst, abs(wa_psi.inner(w_phi) - w_psi.inner(wa_phi)))
    return float(worst)
