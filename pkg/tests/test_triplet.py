"""Boundary triplet: sign table, boundary maps, Green identity, Weyl/characteristic."""

import numpy as np
import pytest

from phillipsop import (
    DomainVector,
    FiberSymmetry,
    Triplet,
    boundary_maps,
    canonical_boundary_basis,
    canonical_triplet,
    characteristic,
    embed_defect,
    green_residual,
    make_fundamental_symmetry,
    solve_boundary,
    weyl,
)
from phillipsop.sampling import random_domain_vector, random_ds_vector
from phillipsop.triplet import MSPACE_J, MSPACE_JZ, MSPACE_Z
from phillipsop.verify import mu_grid

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def test_canonical_basis_standard_symmetry(fs_standard):
    basis = canonical_boundary_basis(fs_standard)
    assert np.allclose(basis.n_plus, E1)
    assert np.allclose(basis.n_minus, E2)
    assert np.allclose(basis.m_plus, E1)
    assert np.allclose(basis.m_minus, E2)


def test_canonical_basis_needs_balanced_signature():
    with pytest.raises(ValueError):
        canonical_boundary_basis(FiberSymmetry(np.eye(2), np.eye(2)))
    with pytest.raises(ValueError):
        canonical_boundary_basis(FiberSymmetry(np.diag([1.0, -1.0]), np.eye(2)))


@pytest.mark.parametrize("jm,jp", [
    (np.diag([1.0, -1.0]), np.diag([1.0, -1.0])),
    (SIGMA1, np.diag([1.0, -1.0])),
    (SIGMA1, np.array([[0.6, 0.8], [0.8, -0.6]])),
])
def test_sign_table(jm, jp):
    fs = FiberSymmetry(jm.astype(complex), jp.astype(complex))
    basis = canonical_boundary_basis(fs)
    J = make_fundamental_symmetry(fs)
    vectors = basis.defect_lattice_vectors()
    for name, (j_sign, z_sign) in basis.sign_table().items():
        vec = vectors[name]
        assert (J.apply(vec) - float(j_sign) * vec).norm() < 1e-12
        # Z flips the defect space at +i and fixes the one at -i
        z_image = float(+1 if name.startswith("e+") else -1) * vec
        assert (z_image - float(z_sign) * vec).norm() < 1e-12


def test_metric_matrices_are_consistent():
    assert np.allclose(MSPACE_J @ MSPACE_Z, MSPACE_JZ)
    assert np.allclose(MSPACE_JZ, np.diag([1.0, -1.0, -1.0, 1.0]))


def test_boundary_maps_vanish_on_ds(triplet_standard, rng):
    for _ in range(10):
        g0, g1 = boundary_maps(random_ds_vector(rng), triplet_standard)
        assert np.linalg.norm(g0) == 0.0
        assert np.linalg.norm(g1) == 0.0


def test_boundary_maps_on_defects(triplet_standard):
    g0, g1 = boundary_maps(DomainVector(b=E1, n=2), triplet_standard)
    assert np.allclose(g0, E1) and np.allclose(g1, 1j * E1)
    g0, g1 = boundary_maps(DomainVector(a=E1, n=2), triplet_standard)
    assert np.allclose(g0, E1) and np.allclose(g1, -1j * E1)


def test_green_identity_on_ds_pairs(triplet_standard, rng):
    for _ in range(20):
        assert green_residual(random_ds_vector(rng), random_ds_vector(rng),
                              triplet_standard) < 1e-11


def test_green_identity_hand_case(triplet_standard):
    psi = DomainVector(a=E1, n=2)
    lhs = (psi.to_lattice().inner(psi.to_lattice()))  # norm of f_i(e1) is 1
    assert lhs == pytest.approx(1.0)
    from phillipsop import apply_sstar
    both = apply_sstar(psi).inner(psi.to_lattice()) - psi.to_lattice().inner(apply_sstar(psi))
    assert both == pytest.approx(-2j)
    assert green_residual(psi, psi, triplet_standard) < 1e-14


def test_green_identity_random_pairs(triplet_standard, rng):
    worst = 0.0
    for _ in range(200):
        worst = max(worst, green_residual(random_domain_vector(rng),
                                          random_domain_vector(rng), triplet_standard))
    assert worst < 1e-10


def test_green_identity_with_nontrivial_symmetry_and_q(rng):
    fs = FiberSymmetry(SIGMA1, np.diag([1.0, -1.0]).astype(complex))
    t = Triplet(canonical_boundary_basis(fs), np.diag([np.exp(0.7j), np.exp(-0.3j)]))
    for _ in range(100):
        assert green_residual(random_domain_vector(rng), random_domain_vector(rng),
                              t) < 1e-10


def test_q_validation(fs_standard):
    basis = canonical_boundary_basis(fs_standard)
    Triplet(basis, np.diag([np.exp(1j), np.exp(2j)]))  # block phases are fine
    with pytest.raises(ValueError):
        Triplet(basis, np.array([[0.0, 1.0], [1.0, 0.0]]))  # unitary, not commuting
    with pytest.raises(ValueError):
        Triplet(basis, np.diag([2.0, 1.0]))  # not unitary


def test_weyl_is_constant_i(triplet_standard):
    eye = np.eye(2)
    values = []
    for mu in [2j, 1 + 1j, 0.5 + 0.1j] + mu_grid(4):
        M = weyl(mu, triplet_standard)
        values.append(M)
        assert np.linalg.norm(M - 1j * eye) < 1e-12
    spread = max(np.linalg.norm(values[0] - M) for M in values)
    assert spread < 1e-12
    with pytest.raises(ValueError):
        weyl(-2j, triplet_standard)


def test_characteristic_vanishes(triplet_standard):
    for mu in [1j, 3 + 0.5j] + mu_grid(5):
        assert np.linalg.norm(characteristic(mu, triplet_standard)) < 1e-12
    with pytest.raises(ValueError):
        characteristic(1.0, triplet_standard)


def test_characteristic_mechanism(triplet_standard):
    # the lower boundary combination annihilates the defect family directly
    for mu in [2j, 1 + 1j]:
        f = embed_defect(np.conj(mu), E1 + 0.5j * E2)
        g0, g1 = boundary_maps(f, triplet_standard)
        assert np.linalg.norm(g1 - 1j * g0) < 1e-13


def test_theta_weyl_identity(triplet_standard):
    eye = np.eye(2)
    for mu in mu_grid(5):
        M = weyl(mu, triplet_standard)
        theta = characteristic(mu, triplet_standard)
        reconstructed = (M - 1j * eye) @ np.linalg.inv(M + 1j * eye)
        assert np.linalg.norm(theta - reconstructed) < 1e-12


def test_boundary_surjectivity(triplet_standard, rng):
    for _ in range(25):
        g0 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        g1 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        psi = solve_boundary(triplet_standard, g0, g1)
        h0, h1 = boundary_maps(psi, triplet_standard)
        assert np.allclose(h0, g0, atol=1e-12)
        assert np.allclose(h1, g1, atol=1e-12)


def test_boundary_kernels_meet_trivially(triplet_standard):
    psi = solve_boundary(triplet_standard, np.zeros(2), np.zeros(2))
    assert np.linalg.norm(psi.a) == 0.0
    assert np.linalg.norm(psi.b) == 0.0


def test_boundary_maps_commute_with_j(fs_standard, rng):
    # with Q commuting with diag(1,-1) the boundary maps intertwine J with
    # its defect-space matrix
    t = Triplet(canonical_boundary_basis(fs_standard),
                np.diag([np.exp(0.4j), np.exp(-1.1j)]))
    J = make_fundamental_symmetry(fs_standard)
    sigma3 = np.diag([1.0, -1.0])
    for _ in range(20):
        psi = random_domain_vector(rng)
        g0, g1 = boundary_maps(psi, t)
        h0, h1 = boundary_maps(J.apply_domain(psi), t)
        assert np.allclose(h0, sigma3 @ g0, atol=1e-12)
        assert np.allclose(h1, sigma3 @ g1, atol=1e-12)
