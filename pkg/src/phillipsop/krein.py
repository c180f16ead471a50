"""Finite-dimensional indefinite-metric linear algebra.

A fundamental symmetry ``J`` (Hermitian involution) turns ``C^n`` into a
Krein space with indefinite inner product ``[x, y] = (Jx, y)``.  This module
provides the canonical-decomposition toolkit for such spaces: operators of
transition, the involutions ``C`` they generate, the associated projectors,
and the classification of subspaces by the sign of the indefinite metric on
them.

Everything is dense complex double precision; the dimensions that occur in
this project never exceed 8.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .tolerances import Tolerances, get_tolerances

__all__ = [
    "IndefiniteSpace",
    "TransitionOperator",
    "SubspaceBasis",
    "SubspaceClass",
    "indefinite_inner",
    "is_valid_transition",
    "transition_to_c",
    "canonical_projectors",
    "classify_subspace",
    "c_subspaces",
    "fundamental_projectors",
]


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _as_vector(v, dim: int) -> np.ndarray:
    x = np.asarray(v, dtype=complex).reshape(-1)
    if x.shape[0] != dim:
        raise ValueError(f"expected a vector of length {dim}, got {x.shape[0]}")
    return x


def vec_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Ordinary inner product, linear in the first argument."""
    return complex(np.vdot(y, x))


@dataclass(frozen=True)
class IndefiniteSpace:
    """``C^dim`` with a fundamental symmetry ``J`` (J = J*, J^2 = I)."""

    dim: int
    J: np.ndarray

    def __post_init__(self):
        J = _as_matrix(self.J)
        if J.shape[0] != self.dim or self.dim < 1:
            raise ValueError("J must be dim x dim with dim >= 1")
        tol = get_tolerances().matrix
        if np.linalg.norm(J - J.conj().T) > tol:
            raise ValueError("J must be Hermitian")
        if np.linalg.norm(J @ J - np.eye(self.dim)) > tol:
            raise ValueError("J must be an involution")
        object.__setattr__(self, "J", J)

    @property
    def signature(self) -> tuple[int, int]:
        """Number of +1 and -1 eigenvalues of J."""
        eigs = np.linalg.eigvalsh(self.J)
        plus = int(np.sum(eigs > 0))
        return plus, self.dim - plus


@dataclass(frozen=True)
class TransitionOperator:
    """Self-adjoint strict contraction anticommuting with J.

    Such operators parametrize the canonical decompositions of the Krein
    space; validity is re-checked on construction.
    """

    T: np.ndarray
    space: IndefiniteSpace

    def __post_init__(self):
        T = _as_matrix(self.T)
        if not is_valid_transition(T, self.space):
            raise ValueError("not a valid operator of transition")
        object.__setattr__(self, "T", T)


@dataclass(frozen=True)
class SubspaceBasis:
    """A tuple of linearly independent vectors spanning a subspace.

    An empty tuple denotes the trivial subspace; ``ambient_dim`` must then be
    given explicitly.
    """

    vectors: tuple = field(default_factory=tuple)
    ambient_dim: int | None = None

    def __post_init__(self):
        vecs = tuple(np.asarray(v, dtype=complex).reshape(-1) for v in self.vectors)
        if not vecs:
            if self.ambient_dim is None:
                raise ValueError("empty basis needs an explicit ambient_dim")
            object.__setattr__(self, "vectors", vecs)
            return
        dim = vecs[0].shape[0]
        if any(v.shape[0] != dim for v in vecs):
            raise ValueError("basis vectors have mixed lengths")
        if self.ambient_dim is not None and self.ambient_dim != dim:
            raise ValueError("ambient_dim disagrees with vector length")
        B = np.column_stack(vecs)
        gram = B.conj().T @ B
        if abs(np.linalg.det(gram)) < 1e-14:
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "ambient_dim", dim)

    @property
    def matrix(self) -> np.ndarray:
        if not self.vectors:
            return np.zeros((self.ambient_dim, 0), dtype=complex)
        return np.column_stack(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)


class SubspaceClass(enum.Enum):
    UNIFORMLY_POSITIVE = "UniformlyPositive"
    UNIFORMLY_NEGATIVE = "UniformlyNegative"
    NEUTRAL = "Neutral"
    HYPERMAXIMAL_NEUTRAL = "HypermaximalNeutral"
    INDEFINITE = "Indefinite"


def indefinite_inner(x, y, sp: IndefiniteSpace) -> complex:
    """Indefinite inner product ``[x, y] = (Jx, y)``, linear in ``x``."""
    xv = _as_vector(x, sp.dim)
    yv = _as_vector(y, sp.dim)
    return vec_inner(sp.J @ xv, yv)


def is_valid_transition(T, sp: IndefiniteSpace, tol: Tolerances | None = None) -> bool:
    """True iff T = T*, ||T|| < 1 and JT = -TJ, each within tolerance."""
    tol = tol or get_tolerances()
    M = _as_matrix(T)
    if M.shape[0] != sp.dim:
        raise ValueError("dimension mismatch")
    if np.linalg.norm(M - M.conj().T) > tol.matrix:
        return False
    if np.linalg.norm(M, ord=2) >= 1.0 - tol.matrix:
        return False
    if np.linalg.norm(sp.J @ M + M @ sp.J) > tol.matrix:
        return False
    return True


def _transition_matrix(T, sp: IndefiniteSpace) -> np.ndarray:
    if isinstance(T, TransitionOperator):
        return T.T
    M = _as_matrix(T)
    if not is_valid_transition(M, sp):
        raise ValueError("not a valid operator of transition")
    return M


def transition_to_c(T, sp: IndefiniteSpace) -> np.ndarray:
    """The involution ``C = J (I - T)(I + T)^{-1}`` of a transition operator.

    The result satisfies ``C^2 = I`` and ``JC > 0``; together these two
    conditions characterize the operators produced here.
    """
    M = _transition_matrix(T, sp)
    eye = np.eye(sp.dim)
    return sp.J @ ((eye - M) @ np.linalg.inv(eye + M))


def fundamental_projectors(sp: IndefiniteSpace) -> tuple[np.ndarray, np.ndarray]:
    """The orthoprojectors ``P_+ = (I + J)/2`` and ``P_- = (I - J)/2``."""
    eye = np.eye(sp.dim)
    return (eye + sp.J) / 2.0, (eye - sp.J) / 2.0


def canonical_projectors(T, sp: IndefiniteSpace) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the positive/negative parts of the decomposition of T.

    Returns ``(P_plus, P_minus)`` with ``P_plus + P_minus = I`` and
    ``P_plus - P_minus = transition_to_c(T)``; the ranges are the maximal
    uniformly positive/negative subspaces ``(I + T) H_+`` and ``(I + T) H_-``.
    """
    M = _transition_matrix(T, sp)
    p_plus, p_minus = fundamental_projectors(sp)
    inv = np.linalg.inv(np.eye(sp.dim) - M)
    return inv @ (p_plus - M @ p_minus), inv @ (p_minus - M @ p_plus)


def classify_subspace(basis: SubspaceBasis, sp: IndefiniteSpace,
                      tol: Tolerances | None = None) -> SubspaceClass:
    """Classify span(basis) by the signature of its indefinite Gram matrix.

    Neutral subspaces of dimension ``sp.dim / 2`` are hypermaximal neutral
    (they coincide with their own indefinite-orthogonal complement).
    Degenerate mixed signatures fall into ``INDEFINITE``.
    """
    tol = tol or get_tolerances()
    B = basis.matrix
    if B.shape[0] != sp.dim:
        raise ValueError("dimension mismatch")
    if B.shape[1] == 0:
        return SubspaceClass.NEUTRAL
    gram = B.conj().T @ (sp.J @ B)
    eigs = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
    # scale-aware threshold: the basis itself sets the magnitude
    scale = max(1.0, float(np.linalg.norm(B, ord=2)) ** 2)
    thr = tol.rank * scale
    n_pos = int(np.sum(eigs > thr))
    n_neg = int(np.sum(eigs < -thr))
    n_zero = len(eigs) - n_pos - n_neg
    if n_pos == len(eigs):
        return SubspaceClass.UNIFORMLY_POSITIVE
    if n_neg == len(eigs):
        return SubspaceClass.UNIFORMLY_NEGATIVE
    if n_zero == len(eigs):
        if 2 * len(basis) == sp.dim:
            return SubspaceClass.HYPERMAXIMAL_NEUTRAL
        return SubspaceClass.NEUTRAL
    return SubspaceClass.INDEFINITE


def c_subspaces(C, tol: Tolerances | None = None) -> tuple[SubspaceBasis, SubspaceBasis]:
    """Bases of the ranges of ``(I + C)/2`` and ``(I - C)/2``.

    ``C`` must be an involution; the two ranges are complementary and their
    dimensions add up to the full space dimension.
    """
    tol = tol or get_tolerances()
    M = _as_matrix(C)
    dim = M.shape[0]
    if np.linalg.norm(M @ M - np.eye(dim)) > max(tol.matrix, tol.matrix * np.linalg.norm(M, ord=2) ** 2):
        raise ValueError("C is not an involution")
    bases = []
    for sign in (+1.0, -1.0):
        P = (np.eye(dim) + sign * M) / 2.0
        u, s, _ = np.linalg.svd(P)
        rank = int(np.sum(s > tol.rank * max(1.0, s[0] if s.size else 1.0)))
        bases.append(SubspaceBasis(tuple(u[:, k] for k in range(rank)), ambient_dim=dim))
    return bases[0], bases[1]
