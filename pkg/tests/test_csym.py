"""Stable C-symmetry: solutions of the intertwining system and their witnesses."""

import numpy as np
import pytest

from phillipsop import (
    CSolution,
    Extension,
    FiberSymmetry,
    KParams,
    c_matrix,
    canonical_triplet,
    k_matrix,
    similarity_form_residual,
    similarity_witness,
    solve_general_c,
    solve_stable_c,
    scalar_system_residuals,
    verify_csymmetry,
)
from phillipsop.csym import fiber_c_matrices

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA3 = np.diag([1.0, -1.0]).astype(complex)


def test_c_matrix_at_zero_is_sigma3():
    assert np.allclose(c_matrix(0.0, 1.7), SIGMA3)


def test_c_matrix_is_involution_with_positive_product():
    for chi in (-2.0, 0.3, 1.0):
        for omega in (0.0, 2.0, 5.0):
            C = c_matrix(chi, omega)
            assert np.linalg.norm(C @ C - np.eye(2)) < 1e-14
            assert np.trace(C) == pytest.approx(0.0)
            prod = SIGMA3 @ C
            assert np.linalg.norm(prod - prod.conj().T) < 1e-14
            assert np.linalg.eigvalsh(prod).min() > 0.0


def test_canonical_solution_zero_zeta():
    sol = solve_stable_c(KParams(0.0, 1.0, 2.0, 3.0))
    assert sol.chi_tilde == 0.0 and sol.chi_hat == 0.0
    assert np.allclose(sol.c_plus, SIGMA3)


def test_canonical_solution_example_values():
    sol = solve_stable_c(KParams(1.0, 0.0, 0.0, 0.0))
    assert sol.chi_tilde == -1.0 and sol.chi_hat == -1.0
    assert sol.omega_tilde == 0.0 and sol.omega_hat == 0.0
    # second scalar equation: 2 tanh(zeta) cosh(chi) + 2 cos(phi) sinh(chi) = 0
    assert 2 * np.tanh(1.0) * np.cosh(-1.0) + 2 * np.sinh(-1.0) == pytest.approx(0.0)

    p = KParams(2.0, np.pi / 3, 1.0, 0.0)
    sol = solve_stable_c(p)
    assert sol.omega_tilde == pytest.approx(1.0 - np.pi / 3)
    assert sol.omega_hat == pytest.approx(1.0 + np.pi / 3)
    assert sol.chi_tilde == -2.0
    assert sol.intertwine_residual(p) < 1e-12


def test_canonical_solution_solves_system_on_grid():
    for z in (-3.0, -0.3, 0.0, 1.0, 3.0):
        for a in (0.0, 1.2, 2.7, 4.9):
            p = KParams(z, a, 2 * a, a / 3)
            sol = solve_stable_c(p)
            e1, e2 = scalar_system_residuals(p, sol)
            assert e1 < 1e-12 and e2 < 1e-12
            assert sol.intertwine_residual(p) < 1e-12


def test_general_solution_formula():
    p = KParams(0.5, 0.0, 1.0, 0.0)
    sol = solve_general_c(p, 1.0, 1.0)
    assert sol is not None
    assert sol.chi_tilde == pytest.approx(-0.5)
    e1, e2 = scalar_system_residuals(p, sol)
    assert max(e1, e2) < 1e-12


def test_general_solution_unsolvable_branch():
    # cos(phi) = 0 makes the chi equation unsolvable for nonzero zeta
    assert solve_general_c(KParams(2.0, np.pi / 2, 1.0, 0.0), 1.0, 1.0) is None


def test_general_solution_requires_angle_constraint():
    p = KParams(0.5, 0.0, 1.0, 0.0)
    assert solve_general_c(p, 0.3, 1.0) is None
    # the constraint holds up to full turns
    assert solve_general_c(p, 1.0 + 2 * np.pi, 1.0 - 2 * np.pi) is not None


def test_general_solution_reduces_to_canonical_branch():
    p = KParams(1.5, 0.8, 2.0, 0.1)
    sol = solve_general_c(p, p.omega - p.phi, p.omega + p.phi)
    assert sol is not None
    assert sol.chi_tilde == pytest.approx(-1.5)


def test_general_solution_near_solvability_boundary():
    cosine = 0.5  # phi = pi/3, equal omegas
    phi = np.arccos(cosine)
    inside = np.arctanh(cosine - 1e-6)
    outside = np.arctanh(cosine + 1e-6)
    assert solve_general_c(KParams(inside, phi, 1.0, 0.0), 1.0, 1.0) is not None
    assert solve_general_c(KParams(outside, phi, 1.0, 0.0), 1.0, 1.0) is None


@pytest.mark.parametrize("fs", [
    FiberSymmetry.standard(),
    FiberSymmetry(SIGMA1, SIGMA3),
    FiberSymmetry(SIGMA1, np.array([[0.6, 0.8], [0.8, -0.6]], dtype=complex)),
])
def test_verify_csymmetry_canonical(fs):
    for z in (-2.0, 0.0, 0.7):
        p = KParams(z, 1.5, 0.7, 2.1)
        rep = verify_csymmetry(Extension.from_params(p), solve_stable_c(p), fs, seed=11)
        assert rep.passed(), rep.as_dict()


def test_verify_csymmetry_zero_zeta_exact(fs_standard):
    p = KParams(0.0, 1.0, 2.0, 3.0)
    rep = verify_csymmetry(Extension.from_params(p), solve_stable_c(p), fs_standard)
    assert rep.c_square < 1e-14
    assert rep.cm_span < 1e-13
    assert rep.intertwine < 1e-14


def test_verify_csymmetry_negative_control(fs_standard):
    for z in (-3.0, -1.0, -0.3, 0.3, 1.0, 3.0):
        p = KParams(z, 0.9, 2.0, 0.5)
        good = solve_stable_c(p)
        bad = CSolution(chi_tilde=-good.chi_tilde, omega_tilde=good.omega_tilde,
                        chi_hat=good.chi_hat, omega_hat=good.omega_hat)
        rep = verify_csymmetry(Extension.from_params(p), bad, fs_standard, seed=11)
        assert rep.cm_span >= 0.1


def test_verify_csymmetry_rejects_degenerate(fs_standard):
    sol = solve_stable_c(KParams(1.0))
    with pytest.raises(ValueError):
        verify_csymmetry(Extension.degenerate(0.0, 0.0), sol, fs_standard)


def test_adjoint_solution_is_chi_negated(fs_standard):
    p = KParams(1.2, 0.4, 1.9, 0.3)
    sol = solve_stable_c(p)
    adj_p = KParams(-1.2, 0.4, 1.9, 0.3)
    adj_sol = solve_stable_c(adj_p)
    assert adj_sol.chi_tilde == -sol.chi_tilde
    assert adj_sol.omega_tilde == sol.omega_tilde
    rep = verify_csymmetry(Extension.from_params(adj_p), adj_sol, fs_standard, seed=4)
    assert rep.passed()
    # the fiber matrices of the adjoint solution are the adjoints
    t = canonical_triplet(fs_standard)
    fc, fc_adj = fiber_c_matrices(sol, t), fiber_c_matrices(adj_sol, t)
    assert np.linalg.norm(fc_adj.c_plus - fc.c_plus.conj().T) < 1e-12
    assert np.linalg.norm(fc_adj.c_minus - fc.c_minus.conj().T) < 1e-12


def test_similarity_witness_identity_at_zero_zeta(fs_standard):
    sol = solve_stable_c(KParams(0.0, 0.7, 1.1, 0.2))
    w_minus, w_plus = similarity_witness(sol, fs_standard)
    assert np.allclose(w_minus, np.eye(2), atol=1e-13)
    assert np.allclose(w_plus, np.eye(2), atol=1e-13)


def test_similarity_witness_squares_to_jc(fs_standard):
    p = KParams(1.0, 0.0, 0.0, 0.0)
    sol = solve_stable_c(p)
    t = canonical_triplet(fs_standard)
    fc = fiber_c_matrices(sol, t)
    w_minus, w_plus = similarity_witness(sol, fs_standard)
    assert np.linalg.norm(w_minus @ w_minus - fs_standard.j_minus @ fc.c_minus) < 1e-12
    assert np.linalg.norm(w_plus @ w_plus - fs_standard.j_plus @ fc.c_plus) < 1e-12
    for w in (w_minus, w_plus):
        assert np.linalg.norm(w - w.conj().T) < 1e-13
        assert np.linalg.eigvalsh(w).min() > 0.0


def test_similarity_form_residual_small(fs_standard):
    for z in (0.0, 1.0, -2.0):
        p = KParams(z, 0.7, 2.1, 4.0)
        r = similarity_form_residual(Extension.from_params(p), solve_stable_c(p),
                                     fs_standard, seed=5, pairs=50)
        assert r < 1e-8


def test_square_root_requires_positive_definiteness():
    from phillipsop.csym import _sqrtm_hpd
    from phillipsop.tolerances import get_tolerances
    tol = get_tolerances()
    root = _sqrtm_hpd(np.array([[2.0, 0.0], [0.0, 0.5]], dtype=complex), tol)
    assert np.allclose(root @ root, np.diag([2.0, 0.5]))
    with pytest.raises(ValueError):
        _sqrtm_hpd(np.diag([1.0, -1.0]).astype(complex), tol)
