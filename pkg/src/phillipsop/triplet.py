"""Canonical boundary triplet, Green identity, Weyl and characteristic functions.

The boundary space is the defect-sum space spanned by the four vectors

    e_pp = f_{-i}(n_plus),  e_pm = f_{-i}(n_minus)   (defect space at -i),
    e_mp = f_i(m_plus),     e_mm = f_i(m_minus)      (defect space at +i),

where ``n_pm`` / ``m_pm`` are unit eigenvectors of the fiber symmetries
acting at positions >= 1 / <= 0.  In the fixed ordering
``(e_pp, e_pm, e_mp, e_mm)`` the restriction of J is diag(1,-1,1,-1), the
defect-sign involution Z is diag(1,1,-1,-1) and the extension metric JZ is
diag(1,-1,-1,1).

The boundary maps are ``G0 = b + Q a`` and ``G1 = i (b - Q a)`` in these
coordinates, where ``a``/``b`` are the defect coefficients of a domain
vector and Q (unitary, commuting with diag(1,-1)) is the identity for the
canonical triplet.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import LatticeVector, fiber_inner
from .model import DomainVector, FiberSymmetry, apply_sstar, embed_defect
from .tolerances import Tolerances, get_tolerances

__all__ = [
    "BoundaryBasis",
    "Triplet",
    "canonical_boundary_basis",
    "canonical_triplet",
    "boundary_maps",
    "green_residual",
    "weyl",
    "characteristic",
    "solve_boundary",
    "MSPACE_J",
    "MSPACE_Z",
    "MSPACE_JZ",
    "NMINUS_I_COLUMNS",
]

# metric matrices on the boundary space, in the fixed basis ordering
MSPACE_J = np.diag([1.0, -1.0, 1.0, -1.0]).astype(complex)
MSPACE_Z = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
MSPACE_JZ = MSPACE_J @ MSPACE_Z
# columns spanning the defect space at -i inside the boundary space
NMINUS_I_COLUMNS = np.eye(4, dtype=complex)[:, :2]


def _signed_unit_eigvecs(J: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(+1, -1) unit eigenvectors of a 2x2 fundamental symmetry, phase-pinned."""
    eigs, vecs = np.linalg.eigh(J)
    order = np.argsort(-eigs)  # +1 first
    plus, minus = vecs[:, order[0]], vecs[:, order[1]]
    out = []
    for v in (plus, minus):
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        out.append(v / phase)
    return out[0], out[1]


@dataclass(frozen=True)
class BoundaryBasis:
    """The pinned orthonormal basis of the 4-dimensional boundary space."""

    n_plus: np.ndarray
    n_minus: np.ndarray
    m_plus: np.ndarray
    m_minus: np.ndarray

    # fiber coordinates <-> boundary coordinates ---------------------------

    def b_coords(self, x) -> np.ndarray:
        """Coordinates of a fiber vector in the (n_plus, n_minus) basis."""
        x = np.asarray(x, dtype=complex).reshape(-1)
        return np.array([fiber_inner(x, self.n_plus), fiber_inner(x, self.n_minus)])

    def a_coords(self, x) -> np.ndarray:
        """Coordinates of a fiber vector in the (m_plus, m_minus) basis."""
        x = np.asarray(x, dtype=complex).reshape(-1)
        return np.array([fiber_inner(x, self.m_plus), fiber_inner(x, self.m_minus)])

    def b_fiber(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex).reshape(-1)
        return c[0] * self.n_plus + c[1] * self.n_minus

    def a_fiber(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex).reshape(-1)
        return c[0] * self.m_plus + c[1] * self.m_minus

    def boundary_coords(self, psi: DomainVector) -> np.ndarray:
        """Defect part of ``psi`` as a 4-vector in the pinned ordering."""
        return np.concatenate([self.b_coords(psi.b), self.a_coords(psi.a)])

    def domain_from_coords(self, w) -> DomainVector:
        """Pure defect domain vector with the given boundary coordinates."""
        w = np.asarray(w, dtype=complex).reshape(-1)
        return DomainVector(a=self.a_fiber(w[2:4]), b=self.b_fiber(w[0:2]), n=2)

    def defect_lattice_vectors(self) -> dict[str, LatticeVector]:
        """The four basis vectors materialized on the lattice."""
        return {
            "e++": LatticeVector.point(1, self.n_plus),
            "e+-": LatticeVector.point(1, self.n_minus),
            "e-+": LatticeVector.point(0, self.m_plus),
            "e--": LatticeVector.point(0, self.m_minus),
        }

    @staticmethod
    def sign_table() -> dict[str, tuple[int, int]]:
        """Expected (J, Z) eigenvalues of the four basis vectors."""
        return {"e++": (+1, +1), "e+-": (-1, +1), "e-+": (+1, -1), "e--": (-1, -1)}


def canonical_boundary_basis(fs: FiberSymmetry, tol: Tolerances | None = None) -> BoundaryBasis:
    """Construct the pinned basis for a fiber symmetry of signature (1,1).

    Both fiber symmetries must have one +1 and one -1 eigenvalue; otherwise
    some of the four sign subspaces are trivial and the basis does not exist.
    """
    tol = tol or get_tolerances()
    if fs.n != 2:
        raise ValueError("the boundary basis requires fiber dimension 2")
    for name, J in (("j_plus", fs.j_plus), ("j_minus", fs.j_minus)):
        eigs = np.linalg.eigvalsh(J)
        if not (eigs[0] < 0 < eigs[1]):
            raise ValueError(f"{name} must have signature (1,1)")
    n_plus, n_minus = _signed_unit_eigvecs(fs.j_plus)
    m_plus, m_minus = _signed_unit_eigvecs(fs.j_minus)
    basis = BoundaryBasis(n_plus, n_minus, m_plus, m_minus)
    # pin the eigenvector relations (construction is exact up to rounding)
    for J, vp, vm in ((fs.j_plus, n_plus, n_minus), (fs.j_minus, m_plus, m_minus)):
        if np.linalg.norm(J @ vp - vp) > 1e3 * tol.matrix or \
           np.linalg.norm(J @ vm + vm) > 1e3 * tol.matrix:
            raise ValueError("eigenvector pinning failed")
    return basis


@dataclass(frozen=True)
class Triplet:
    """Canonical-form boundary triplet: pinned basis plus the unitary Q.

    ``q`` is the matrix of the defect-space pairing map in the pinned bases;
    it must be unitary and commute with diag(1,-1).  The canonical choice is
    the identity.
    """

    basis: BoundaryBasis
    q: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))

    def __post_init__(self):
        q = np.asarray(self.q, dtype=complex)
        tol = get_tolerances().matrix
        if q.shape != (2, 2):
            raise ValueError("Q must be 2x2")
        if np.linalg.norm(q.conj().T @ q - np.eye(2)) > tol:
            raise ValueError("Q must be unitary")
        sigma3 = np.diag([1.0, -1.0])
        if np.linalg.norm(q @ sigma3 - sigma3 @ q) > tol:
            raise ValueError("Q must commute with diag(1,-1)")
        object.__setattr__(self, "q", q)


def canonical_triplet(fs: FiberSymmetry) -> Triplet:
    return Triplet(canonical_boundary_basis(fs))


def boundary_maps(psi: DomainVector, t: Triplet) -> tuple[np.ndarray, np.ndarray]:
    """The boundary values ``(G0 psi, G1 psi)`` in defect-space coordinates."""
    a_e = t.basis.a_coords(psi.a)
    b_e = t.basis.b_coords(psi.b)
    qa = t.q @ a_e
    return b_e + qa, 1j * (b_e - qa)


def green_residual(psi: DomainVector, phi: DomainVector, t: Triplet) -> float:
    """Deviation from the abstract Green identity at the pair (psi, phi).

    Contract: below the ``green`` tolerance for every pair of domain
    vectors, tails included.
    """
    lhs = apply_sstar(psi).inner(phi.to_lattice()) - psi.to_lattice().inner(apply_sstar(phi))
    g0p, g1p = boundary_maps(psi, t)
    g0q, g1q = boundary_maps(phi, t)
    rhs = fiber_inner(g1p, g0q) - fiber_inner(g0p, g1q)
    return float(abs(lhs - rhs))


def _boundary_columns(mu: complex, t: Triplet) -> tuple[np.ndarray, np.ndarray]:
    """Boundary values of a basis of the defect space at conj(mu)."""
    g0_cols, g1_cols = [], []
    for x in (t.basis.n_plus, t.basis.n_minus):
        f = embed_defect(np.conj(mu), x)
        g0, g1 = boundary_maps(f, t)
        g0_cols.append(g0)
        g1_cols.append(g1)
    return np.column_stack(g0_cols), np.column_stack(g1_cols)


def weyl(mu: complex, t: Triplet, tol: Tolerances | None = None) -> np.ndarray:
    """The Weyl function ``M(mu)``, solved over a defect-space basis.

    For the Phillips operator the result is ``i I`` for every ``mu`` in the
    upper half-plane.
    """
    tol = tol or get_tolerances()
    mu = complex(mu)
    if mu.imag <= 0:
        raise ValueError("the Weyl function is evaluated in the upper half-plane")
    G0, G1 = _boundary_columns(mu, t)
    if np.abs(np.linalg.svd(G0, compute_uv=False)).min() < tol.rank:
        raise ValueError("G0 restricted to the defect space is singular")
    return G1 @ np.linalg.inv(G0)


def characteristic(mu: complex, t: Triplet) -> np.ndarray:
    """The characteristic function ``Theta(mu)``; identically zero here."""
    mu = complex(mu)
    if mu.imag <= 0:
        raise ValueError("the characteristic function is evaluated for Im mu > 0")
    G0, G1 = _boundary_columns(mu, t)
    U1 = G1 + 1j * G0
    U2 = G1 - 1j * G0
    return U2 @ np.linalg.inv(U1)


def solve_boundary(t: Triplet, g0, g1) -> DomainVector:
    """A pure defect vector with prescribed boundary values (surjectivity).

    Solves ``b + Q a = g0`` and ``i (b - Q a) = g1``; solvable for every
    pair, and the solution is unique within the defect part.
    """
    g0 = np.asarray(g0, dtype=complex).reshape(-1)
    g1 = np.asarray(g1, dtype=complex).reshape(-1)
    b_e = (g0 - 1j * g1) / 2.0
    a_e = np.linalg.inv(t.q) @ ((g0 + 1j * g1) / 2.0)
    return DomainVector(a=t.basis.a_fiber(a_e), b=t.basis.b_fiber(b_e), n=2)
