"""The catalog of J-self-adjoint extensions in the <2,2> case.

Extensions with ``i`` outside the spectrum correspond to J-unitary 2x2
matrices in the defect space at ``-i``; these form the four-parameter family

    K(zeta, phi, omega, xi) = e^{-i xi} [[-cosh(zeta) e^{-i phi}, sinh(zeta) e^{-i omega}],
                                         [-sinh(zeta) e^{i omega}, cosh(zeta) e^{i phi}]].

The remaining extensions (``i`` an eigenvalue) form the two-parameter
degenerate family spanned by ``e_pp + e^{i k1} e_pm`` and
``e_mm + e^{i k2} e_mp``.  Either way the extension is the restriction of S*
to ``D(S)`` plus a hypermaximal neutral subspace of the boundary space, and
its spectrum is the whole real line or the whole complex plane; the
dichotomy is decided by the intersection of that subspace with the defect
space at ``-i``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeVector
from .model import DomainVector, apply_sstar, embed_defect
from .tolerances import Tolerances, get_tolerances
from .triplet import NMINUS_I_COLUMNS, Triplet, boundary_maps

__all__ = [
    "KParams",
    "Extension",
    "SpectrumClass",
    "SIGMA3",
    "k_matrix",
    "is_j_unitary",
    "domain_subspace",
    "member_of_domain",
    "apply_extension",
    "adjoint_extension",
    "classify_spectrum",
    "eigenvector_candidate",
]

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KParams:
    """Parameters of the J-unitary family; angles are normalized to [0, 2pi)."""

    zeta: float
    phi: float = 0.0
    omega: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.zeta):
            raise ValueError("zeta must be finite")
        for name in ("phi", "omega", "xi"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value % _TWO_PI)
        object.__setattr__(self, "zeta", float(self.zeta))


def k_matrix(p: KParams) -> np.ndarray:
    """The matrix ``K(zeta, phi, omega, xi)`` in the pinned defect basis."""
    c, s = math.cosh(p.zeta), math.sinh(p.zeta)
    return np.exp(-1j * p.xi) * np.array([
        [-c * np.exp(-1j * p.phi), s * np.exp(-1j * p.omega)],
        [-s * np.exp(1j * p.omega), c * np.exp(1j * p.phi)],
    ])


def is_j_unitary(K, tol: Tolerances | None = None) -> bool:
    """True iff ``conj(K)^t sigma3 K = sigma3`` within tolerance."""
    tol = tol or get_tolerances()
    K = np.asarray(K, dtype=complex)
    if K.shape != (2, 2):
        raise ValueError("K must be 2x2")
    scale = max(1.0, float(np.linalg.norm(K, ord=2)) ** 2)
    return bool(np.linalg.norm(K.conj().T @ SIGMA3 @ K - SIGMA3) <= tol.j_unitary * scale)


class SpectrumClass(enum.Enum):
    REAL_LINE = "RealLine"
    WHOLE_PLANE = "WholePlane"


@dataclass(frozen=True)
class Extension:
    """A J-self-adjoint extension: regular (J-unitary K) or degenerate (k1, k2).

    ``m_basis`` holds a basis of the boundary subspace as columns in the
    pinned coordinates; it is hypermaximal neutral in the JZ metric for both
    variants.  Regular extensions are built against the canonical triplet
    (Q = identity).
    """

    kind: str
    params: KParams | None = None
    k1: float | None = None
    k2: float | None = None

    @classmethod
    def regular(cls, zeta: float, phi: float = 0.0, omega: float = 0.0,
                xi: float = 0.0) -> "Extension":
        return cls(kind="regular", params=KParams(zeta, phi, omega, xi))

    @classmethod
    def from_params(cls, p: KParams) -> "Extension":
        return cls(kind="regular", params=p)

    @classmethod
    def degenerate(cls, k1: float, k2: float) -> "Extension":
        return cls(kind="degenerate", k1=float(k1), k2=float(k2))

    def __post_init__(self):
        if self.kind == "regular":
            if self.params is None:
                raise ValueError("regular extension needs KParams")
        elif self.kind == "degenerate":
            if self.k1 is None or self.k2 is None:
                raise ValueError("degenerate extension needs k1 and k2")
        else:
            raise ValueError(f"unknown extension kind {self.kind!r}")

    @property
    def is_regular(self) -> bool:
        return self.kind == "regular"

    @property
    def kmatrix(self) -> np.ndarray:
        if not self.is_regular:
            raise ValueError("degenerate extensions have no K matrix")
        return k_matrix(self.params)

    @property
    def m_basis(self) -> np.ndarray:
        if self.is_regular:
            return np.vstack([np.eye(2, dtype=complex), -self.kmatrix])
        v1 = np.array([1.0, np.exp(1j * self.k1), 0.0, 0.0])
        v2 = np.array([0.0, 0.0, np.exp(1j * self.k2), 1.0])
        return np.column_stack([v1, v2])


def domain_subspace(K, t: Triplet, tol: Tolerances | None = None) -> np.ndarray:
    """Basis (columns) of the boundary subspace of the extension given by K.

    The subspace is ``{f_{-i} - Q^{-1} K f_{-i}}``; the result is
    hypermaximal neutral in the JZ metric for every J-unitary K.
    """
    tol = tol or get_tolerances()
    K = np.asarray(K, dtype=complex)
    if not is_j_unitary(K, tol):
        raise ValueError("K must be J-unitary")
    q_inv = np.linalg.inv(t.q)
    return np.vstack([np.eye(2, dtype=complex), -q_inv @ K])


def _span_distance(w: np.ndarray, basis: np.ndarray) -> float:
    """Distance from w to the column span of ``basis`` (orthonormalized)."""
    qmat, _ = np.linalg.qr(basis)
    return float(np.linalg.norm(w - qmat @ (qmat.conj().T @ w)))


def member_of_domain(ext: Extension, psi: DomainVector, t: Triplet,
                     tol: Tolerances | None = None) -> bool:
    """Whether ``psi`` lies in the domain of the extension.

    Regular extensions test the boundary condition
    ``K (G1 + i G0) psi = (G1 - i G0) psi``; degenerate ones test that the
    defect coordinates of ``psi`` lie in the span of the basis columns.
    """
    tol = tol or get_tolerances()
    if ext.is_regular:
        g0, g1 = boundary_maps(psi, t)
        resid = np.linalg.norm(ext.kmatrix @ (g1 + 1j * g0) - (g1 - 1j * g0))
        scale = max(1.0, float(np.linalg.norm(g0) + np.linalg.norm(g1)))
        return bool(resid <= tol.membership * scale)
    w = t.basis.boundary_coords(psi)
    nw = float(np.linalg.norm(w))
    if nw == 0.0:
        return True
    return bool(_span_distance(w, ext.m_basis) <= tol.membership * max(1.0, nw))


def apply_extension(ext: Extension, psi: DomainVector, t: Triplet,
                    tol: Tolerances | None = None) -> LatticeVector:
    """Apply the extension (the restriction of S*) to a domain member."""
    if not member_of_domain(ext, psi, t, tol):
        raise ValueError("psi is not in the domain of the extension")
    return apply_sstar(psi)


def adjoint_extension(ext: Extension) -> Extension:
    """The adjoint extension: zeta is negated, the angles are kept.

    The adjoint of a degenerate extension is not covered by the K
    parametrization; requesting it is an error.
    """
    if not ext.is_regular:
        raise ValueError("adjoint is only parametrized for regular extensions")
    p = ext.params
    return Extension.regular(-p.zeta, p.phi, p.omega, p.xi)


def _intersection_dim(A: np.ndarray, B: np.ndarray, thr: float) -> int:
    """dim(span A  intersect  span B) via a rank computation."""
    stacked = np.column_stack([A, B])
    s = np.linalg.svd(stacked, compute_uv=False)
    smax = s[0] if s.size else 1.0
    rank_sum = int(np.sum(np.linalg.svd(A, compute_uv=False) > thr * max(1.0, smax)))
    rank_sum += int(np.sum(np.linalg.svd(B, compute_uv=False) > thr * max(1.0, smax)))
    rank_stacked = int(np.sum(s > thr * max(1.0, smax)))
    return rank_sum - rank_stacked


def classify_spectrum(ext: Extension, tol: Tolerances | None = None) -> SpectrumClass:
    """Spectrum dichotomy: real line or whole plane.

    The spectrum covers the plane exactly when the boundary subspace meets
    the defect space at ``-i`` nontrivially; the test is algebraic (singular
    values), not an eigenvalue search.
    """
    tol = tol or get_tolerances()
    dim = _intersection_dim(ext.m_basis, NMINUS_I_COLUMNS, tol.rank)
    return SpectrumClass.WHOLE_PLANE if dim > 0 else SpectrumClass.REAL_LINE


def eigenvector_candidate(ext: Extension, mu: complex, t: Triplet
                          ) -> tuple[DomainVector, float] | None:
    """Exact eigenvector of a degenerate extension at non-real ``mu``.

    Returns ``(psi, residual)`` with ``residual = ||(S* - mu) psi|| / ||psi||``
    computed in closed form, or ``None`` for regular extensions (their
    boundary condition forces the defect coefficient of any candidate into
    the kernel of the invertible K).
    """
    mu = complex(mu)
    if mu.imag == 0:
        raise ValueError("eigenvector candidates exist only off the real axis")
    if ext.is_regular:
        return None
    if mu.imag > 0:
        direction = t.basis.b_fiber([1.0, np.exp(1j * ext.k1)])
    else:
        direction = t.basis.a_fiber([np.exp(1j * ext.k2), 1.0])
    psi = embed_defect(np.conj(mu), direction)
    lat = psi.to_lattice()
    residual = (apply_sstar(psi) - mu * lat).norm() / lat.norm()
    return psi, residual
