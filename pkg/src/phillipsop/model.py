"""The shift model of the Phillips symmetric operator on l2(Z, C^n).

The bilateral shift ``U`` acts by ``(Uv)_j = v_{j-1}``; its restriction ``V``
to the vectors vanishing at position 0 removes the wandering subspace.  The
Cayley transform of ``U`` is the self-adjoint operator ``A`` with

    f_j = x_{j-1} - x_j,        (A f)_j = i (x_{j-1} + x_j),

parametrized by square-summable sequences ``x``.  The symmetric operator S
is the restriction of A to the sequences with ``x_0 = 0``; its adjoint acts
on ``D(S) + N_i + N_{-i}`` where the defect subspaces are spanned by exact
geometric-tail vectors.  The sign convention used throughout is

    S* f_i = -i f_i,            S* f_{-i} = +i f_{-i},

with ``f_i(x)`` the point mass at position 0 and ``f_{-i}(x)`` the point
mass at position 1; the Green-identity test suite pins this convention.

Position-dependent fundamental symmetries and C-candidates that commute
with S are block constant (one fiber matrix on positions <= 0, another on
positions >= 1); :class:`BlockOperator` is the lifted handle for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import LatticeVector, Ray
from .tolerances import Tolerances, get_tolerances

__all__ = [
    "FiberSpace",
    "DomainVector",
    "FiberSymmetry",
    "FiberC",
    "BlockOperator",
    "r_mu",
    "apply_shift",
    "apply_restricted_shift",
    "apply_cayley",
    "apply_sstar",
    "defect_vector",
    "embed_defect",
    "make_fundamental_symmetry",
    "make_fiber_c",
    "extensions_exist",
]


@dataclass(frozen=True)
class FiberSpace:
    """The auxiliary fiber C^n; the extension machinery requires n = 2."""

    n: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("fiber dimension must be >= 1")

    def basis_vector(self, k: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=complex)
        e[k] = 1.0
        return e


def r_mu(mu: complex) -> complex:
    """The Cayley coefficient ``(mu - i) / (mu + i)``.

    Maps the open upper half-plane bijectively onto the open unit disk;
    ``mu = -i`` is the pole.
    """
    mu = complex(mu)
    if mu == -1j:
        raise ValueError("r_mu has a pole at mu = -i")
    return (mu - 1j) / (mu + 1j)


def apply_shift(v: LatticeVector) -> LatticeVector:
    """The bilateral shift ``(Uv)_j = v_{j-1}`` (exact on rays)."""
    return v.shifted(1)


def apply_restricted_shift(v: LatticeVector) -> LatticeVector:
    """The restriction ``V`` of the shift to vectors with ``v_0 = 0``."""
    if np.any(v.value_at(0) != 0):
        raise ValueError("restricted shift requires a vanishing entry at position 0")
    return v.shifted(1)


def apply_cayley(xseq: LatticeVector) -> tuple[LatticeVector, LatticeVector]:
    """Return ``(f, Af)`` for the parametrizing sequence ``xseq``.

    ``f_j = x_{j-1} - x_j`` and ``(Af)_j = i (x_{j-1} + x_j)``; no condition
    on ``x_0``, this is the full domain of the Cayley transform A.
    """
    shifted = xseq.shifted(1)
    return shifted - xseq, 1j * (shifted + xseq)


class DomainVector:
    """Element of D(S*) in von Neumann coordinates.

    ``xseq`` parametrizes the D(S) part ``u_j = x_{j-1} - x_j`` and must not
    touch position 0 (support keys and ray coverage exclude it), which makes
    ``x_0 = 0`` structural; ``a`` and ``b`` are the fiber coefficients of the
    defect components ``f_i(a)`` (position 0) and ``f_{-i}(b)`` (position 1).
    """

    __slots__ = ("xseq", "a", "b", "n")

    def __init__(self, xseq: LatticeVector | None = None, a=None, b=None, n: int | None = None):
        if xseq is None:
            if n is None:
                raise ValueError("need xseq or an explicit fiber dimension")
            xseq = LatticeVector.zero(n)
        if n is None:
            n = xseq.n
        if xseq.n != n:
            raise ValueError("fiber dimension mismatch")
        if 0 in xseq.support:
            raise ValueError("xseq must not have a support entry at position 0")
        if any(r.start >= 0 for r in xseq.left) or any(r.start <= 0 for r in xseq.right):
            raise ValueError("xseq rays must not cover position 0")
        self.xseq = xseq
        self.n = n
        self.a = self._coeff(a)
        self.b = self._coeff(b)

    def _coeff(self, x) -> np.ndarray:
        if x is None:
            return np.zeros(self.n, dtype=complex)
        v = np.asarray(x, dtype=complex).reshape(-1)
        if v.shape[0] != self.n:
            raise ValueError("defect coefficient has wrong fiber dimension")
        return v

    @property
    def in_ds(self) -> bool:
        """True iff the defect part vanishes (the vector lies in D(S))."""
        return not (np.any(self.a != 0) or np.any(self.b != 0))

    def to_lattice(self) -> LatticeVector:
        """Materialize ``u + f_i(a) + f_{-i}(b)`` as a lattice vector."""
        u = self.xseq.shifted(1) - self.xseq
        return u + LatticeVector(self.n, {0: self.a, 1: self.b})

    def __add__(self, other: "DomainVector") -> "DomainVector":
        return DomainVector(self.xseq + other.xseq, self.a + other.a, self.b + other.b)

    def __rmul__(self, c) -> "DomainVector":
        c = complex(c)
        return DomainVector(c * self.xseq, c * self.a, c * self.b)

    def __mul__(self, c) -> "DomainVector":
        return self.__rmul__(c)

    def __sub__(self, other: "DomainVector") -> "DomainVector":
        return self + (-1.0) * other

    def map_blockwise(self, m_minus, m_plus) -> "DomainVector":
        """Apply a block-constant fiber operator in domain coordinates.

        The parametrizing sequence transforms blockwise with the same split
        (possible only because ``x_0 = 0``), ``a`` picks up the matrix acting
        at position 0 and ``b`` the one acting at position 1.
        """
        Mm = np.asarray(m_minus, dtype=complex)
        Mp = np.asarray(m_plus, dtype=complex)
        return DomainVector(self.xseq.map_blockwise(Mm, Mp), Mm @ self.a, Mp @ self.b)


def apply_sstar(psi: DomainVector) -> LatticeVector:
    """The adjoint S* applied to a domain vector.

    ``S* psi = S u - i f_i(a) + i f_{-i}(b)`` with ``(S u)_j = i (x_{j-1} + x_j)``.
    """
    su = 1j * (psi.xseq.shifted(1) + psi.xseq)
    return su + LatticeVector(psi.n, {0: -1j * psi.a, 1: 1j * psi.b})


def defect_vector(mu: complex, x) -> LatticeVector:
    """The defect element of ker(S* - conj(mu) I) with fiber coefficient x.

    For ``mu`` in the upper half-plane the vector is a left geometric tail
    ending at position 0 with ratio ``conj(r_mu(mu))``; for the lower
    half-plane it is the mirror right tail starting at position 1 with ratio
    ``r_mu(conj(mu))``.  ``mu = i`` and ``mu = -i`` degenerate to the point
    masses at positions 0 and 1.
    """
    mu = complex(mu)
    if mu.imag == 0:
        raise ValueError("defect vectors exist only for non-real mu")
    xv = np.asarray(x, dtype=complex).reshape(-1)
    if not np.any(xv != 0):
        raise ValueError("fiber coefficient must be nonzero")
    n = xv.shape[0]
    if mu.imag > 0:
        ratio = np.conj(r_mu(mu))
        return LatticeVector(n, left=(Ray(0, xv, ratio),))
    ratio = r_mu(np.conj(mu))
    return LatticeVector(n, right=(Ray(1, xv, ratio),))


def embed_defect(mu: complex, x) -> DomainVector:
    """Von Neumann coordinates of the (rescaled) defect vector at ``mu``.

    Returns the domain vector representing ``f_mu((1 - conj(r_mu)) x)``
    for ``mu`` in the upper half-plane (defect coefficient ``a = x``), and
    the mirror element ``f_conj(mu')((1 - r_mu') x)`` with ``mu' = conj(mu)``
    for the lower half-plane (coefficient ``b = x``).  In both cases the
    parametrizing sequence is a single exact geometric tail, and applying S*
    reproduces ``conj(mu)`` times the materialized vector.
    """
    mu = complex(mu)
    if mu.imag == 0:
        raise ValueError("defect embedding requires non-real mu")
    xv = np.asarray(x, dtype=complex).reshape(-1)
    n = xv.shape[0]
    if mu.imag > 0:
        rbar = np.conj(r_mu(mu))
        xseq = LatticeVector(n, left=(Ray(-1, -rbar * xv, rbar),)) if rbar != 0 \
            else LatticeVector.zero(n)
        return DomainVector(xseq, a=xv)
    r = r_mu(np.conj(mu))
    xseq = LatticeVector(n, right=(Ray(1, r * xv, r),)) if r != 0 \
        else LatticeVector.zero(n)
    return DomainVector(xseq, b=xv)


def _check_involution(M: np.ndarray, name: str, tol: float) -> None:
    n = M.shape[0]
    if np.linalg.norm(M - M.conj().T) > tol:
        raise ValueError(f"{name} must be Hermitian")
    if np.linalg.norm(M @ M - np.eye(n)) > tol:
        raise ValueError(f"{name} must be an involution")


@dataclass(frozen=True)
class FiberSymmetry:
    """Pair of fundamental symmetries in the fiber defining J via the block split.

    ``j_minus`` acts at positions <= 0 and ``j_plus`` at positions >= 1; any
    such pair commutes with S (and only such position-dependent symmetries do).
    """

    j_minus: np.ndarray
    j_plus: np.ndarray

    def __post_init__(self):
        jm = np.asarray(self.j_minus, dtype=complex)
        jp = np.asarray(self.j_plus, dtype=complex)
        if jm.shape != jp.shape or jm.ndim != 2 or jm.shape[0] != jm.shape[1]:
            raise ValueError("fiber symmetries must be square matrices of equal size")
        tol = get_tolerances().matrix
        _check_involution(jm, "j_minus", tol)
        _check_involution(jp, "j_plus", tol)
        object.__setattr__(self, "j_minus", jm)
        object.__setattr__(self, "j_plus", jp)

    @property
    def n(self) -> int:
        return self.j_minus.shape[0]

    @classmethod
    def standard(cls, n: int = 2) -> "FiberSymmetry":
        """Both blocks equal to diag(1, -1, ..., alternating) — for n = 2: sigma_3."""
        d = np.diag([(-1.0) ** k for k in range(n)]).astype(complex)
        return cls(d, d)


@dataclass(frozen=True)
class FiberC:
    """Candidate fiber pair for a C operator commuting with S."""

    c_minus: np.ndarray
    c_plus: np.ndarray

    def __post_init__(self):
        cm = np.asarray(self.c_minus, dtype=complex)
        cp = np.asarray(self.c_plus, dtype=complex)
        if cm.shape != cp.shape or cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
            raise ValueError("fiber C matrices must be square of equal size")
        object.__setattr__(self, "c_minus", cm)
        object.__setattr__(self, "c_plus", cp)


@dataclass(frozen=True)
class BlockOperator:
    """Block-constant lattice operator: ``m_minus`` on j <= 0, ``m_plus`` on j >= 1."""

    m_minus: np.ndarray = field(repr=False)
    m_plus: np.ndarray = field(repr=False)

    def apply(self, v: LatticeVector) -> LatticeVector:
        return v.map_blockwise(self.m_minus, self.m_plus)

    def apply_domain(self, psi: DomainVector) -> DomainVector:
        return psi.map_blockwise(self.m_minus, self.m_plus)

    def __call__(self, v):
        if isinstance(v, DomainVector):
            return self.apply_domain(v)
        return self.apply(v)


def make_fundamental_symmetry(fs: FiberSymmetry) -> BlockOperator:
    """The lifted fundamental symmetry J acting blockwise; commutes with S."""
    return BlockOperator(fs.j_minus, fs.j_plus)


def make_fiber_c(fc: FiberC, fs: FiberSymmetry, tol: Tolerances | None = None) -> BlockOperator:
    """Validate a fiber C-candidate against ``fs`` and lift it.

    Requires ``C_pm^2 = I`` and ``J_pm C_pm`` positive definite; the lifted
    operator is then an involution with ``JC > 0`` commuting with S.
    """
    tol = tol or get_tolerances()
    n = fs.n
    for name, C, J in (("c_minus", fc.c_minus, fs.j_minus), ("c_plus", fc.c_plus, fs.j_plus)):
        if C.shape[0] != n:
            raise ValueError("fiber dimension mismatch with the symmetry")
        if np.linalg.norm(C @ C - np.eye(n)) > tol.c_square:
            raise ValueError(f"{name} is not an involution")
        JC = J @ C
        herm = (JC + JC.conj().T) / 2.0
        if np.linalg.norm(JC - herm) > tol.c_square:
            raise ValueError(f"J {name} is not Hermitian")
        if np.linalg.eigvalsh(herm).min() <= tol.positivity:
            raise ValueError(f"J {name} is not positive definite")
    return BlockOperator(fc.c_minus, fc.c_plus)


def extensions_exist(fs: FiberSymmetry) -> bool:
    """Whether J-self-adjoint extensions exist for the symmetry ``fs``.

    True iff the -1 eigenspaces of the two fiber symmetries have equal
    dimension.
    """
    neg_minus = int(np.sum(np.linalg.eigvalsh(fs.j_minus) < 0))
    neg_plus = int(np.sum(np.linalg.eigvalsh(fs.j_plus) < 0))
    return neg_minus == neg_plus
