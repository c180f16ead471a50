"""Seeded random generators for vectors, operators and subspaces.

Everything takes an explicit ``numpy.random.Generator`` so that seeded runs
are reproducible; nothing in the library draws randomness from global state.
Tail ratios are capped at 0.75 so that window-64 materializations agree with
the closed forms to full double precision in the oracle cross-checks.
"""

from __future__ import annotations

import numpy as np

from .krein import IndefiniteSpace
from .lattice import LatticeVector, Ray
from .model import DomainVector

__all__ = [
    "random_fiber",
    "random_xseq",
    "random_ds_vector",
    "random_domain_vector",
    "random_lattice_vector",
    "random_transition",
    "random_unitary",
    "random_hypermaximal_neutral",
    "random_nonreal_mu",
]

RATIO_CAP = 0.75


def random_fiber(rng: np.random.Generator, n: int = 2, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _random_ratio(rng: np.random.Generator, cap: float = RATIO_CAP) -> complex:
    radius = cap * np.sqrt(rng.uniform(0.05, 1.0))
    angle = rng.uniform(0.0, 2.0 * np.pi)
    return complex(radius * np.exp(1j * angle))


def random_xseq(rng: np.random.Generator, n: int = 2, with_tails: bool = True,
                span: int = 4) -> LatticeVector:
    """Parametrizing sequence avoiding position 0 (so it defines a D(S) vector)."""
    support = {}
    for j in list(range(-span, 0)) + list(range(1, span + 1)):
        if rng.uniform() < 0.5:
            support[j] = random_fiber(rng, n)
    left, right = [], []
    if with_tails and rng.uniform() < 0.8:
        left.append(Ray(-int(rng.integers(1, 4)), random_fiber(rng, n), _random_ratio(rng)))
    if with_tails and rng.uniform() < 0.8:
        right.append(Ray(int(rng.integers(1, 4)), random_fiber(rng, n), _random_ratio(rng)))
    return LatticeVector(n, support, tuple(left), tuple(right))


def random_ds_vector(rng: np.random.Generator, n: int = 2,
                     with_tails: bool = True) -> DomainVector:
    """Random element of D(S) (no defect part)."""
    return DomainVector(random_xseq(rng, n, with_tails))


def random_domain_vector(rng: np.random.Generator, n: int = 2,
                         with_tails: bool = True) -> DomainVector:
    """Random element of D(S*): D(S) part plus random defect coefficients."""
    return DomainVector(random_xseq(rng, n, with_tails),
                        a=random_fiber(rng, n), b=random_fiber(rng, n))


def random_lattice_vector(rng: np.random.Generator, n: int = 2,
                          with_tails: bool = True, span: int = 4) -> LatticeVector:
    support = {}
    for j in range(-span, span + 1):
        if rng.uniform() < 0.5:
            support[j] = random_fiber(rng, n)
    left, right = [], []
    if with_tails and rng.uniform() < 0.8:
        left.append(Ray(int(rng.integers(-3, 4)), random_fiber(rng, n), _random_ratio(rng)))
    if with_tails and rng.uniform() < 0.8:
        right.append(Ray(int(rng.integers(-3, 4)), random_fiber(rng, n), _random_ratio(rng)))
    return LatticeVector(n, support, tuple(left), tuple(right))


def random_transition(rng: np.random.Generator, sp: IndefiniteSpace,
                      norm_cap: float = 0.9) -> np.ndarray:
    """Random valid operator of transition for the space ``sp``.

    Built in the eigenbasis of J as an off-diagonal Hermitian block matrix,
    which anticommutes with J by construction; the norm is drawn in
    ``(0, norm_cap]``.
    """
    eigs, vecs = np.linalg.eigh(sp.J)
    v_minus = vecs[:, eigs < 0]
    v_plus = vecs[:, eigs > 0]
    p, q = v_plus.shape[1], v_minus.shape[1]
    if p == 0 or q == 0:
        return np.zeros((sp.dim, sp.dim), dtype=complex)
    X = rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q))
    X *= rng.uniform(0.05, 1.0) * norm_cap / np.linalg.norm(X, ord=2)
    return v_plus @ X @ v_minus.conj().T + v_minus @ X.conj().T @ v_plus.conj().T


def random_unitary(rng: np.random.Generator, k: int) -> np.ndarray:
    """Haar-ish unitary via QR of a complex Ginibre matrix."""
    Z = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hypermaximal_neutral(rng: np.random.Generator,
                                metric: np.ndarray) -> np.ndarray:
    """Basis (columns) of a random hypermaximal neutral subspace of ``metric``.

    The metric must be a Hermitian involution with balanced signature; the
    subspaces are exactly the graphs of unitaries from its positive to its
    negative eigenspace.
    """
    eigs, vecs = np.linalg.eigh(np.asarray(metric, dtype=complex))
    v_minus = vecs[:, eigs < 0]
    v_plus = vecs[:, eigs > 0]
    if v_plus.shape[1] != v_minus.shape[1]:
        raise ValueError("metric signature is unbalanced; no neutral subspace of half dimension")
    W = random_unitary(rng, v_plus.shape[1])
    return v_plus + v_minus @ W


def random_nonreal_mu(rng: np.random.Generator, half: int | None = None) -> complex:
    """Random non-real point, biased away from the real axis and from -i."""
    sign = half if half is not None else (1 if rng.uniform() < 0.5 else -1)
    re = rng.uniform(-4.0, 4.0)
    im = sign * rng.uniform(0.2, 4.0)
    mu = complex(re, im)
    if abs(mu + 1j) < 1e-6:
        mu += 0.5j * sign
    return mu
