"""Exact tail algebra against the brute-force window oracle."""

import numpy as np
import pytest

from phillipsop import LatticeVector, Ray, materialize
from phillipsop.sampling import random_lattice_vector


def brute_inner(v, w, window=64):
    dv, dw = materialize(v, window), materialize(w, window)
    return complex(np.sum(dv * dw.conj()))


def test_point_mass_roundtrip():
    v = LatticeVector.point(3, [1.0, 2.0])
    assert np.allclose(v.value_at(3), [1.0, 2.0])
    assert np.allclose(v.value_at(2), 0.0)
    assert v.norm2() == pytest.approx(5.0)


def test_ray_values_left_and_right():
    left = LatticeVector(1, left=(Ray(-1, [2.0], 0.5),))
    assert left.value_at(-1)[0] == pytest.approx(2.0)
    assert left.value_at(-3)[0] == pytest.approx(0.5)
    assert left.value_at(0)[0] == 0.0
    right = LatticeVector(1, right=(Ray(2, [1.0], 0.25),))
    assert right.value_at(2)[0] == pytest.approx(1.0)
    assert right.value_at(4)[0] == pytest.approx(1.0 / 16)
    assert right.value_at(1)[0] == 0.0


def test_ray_ratio_must_be_contraction():
    with pytest.raises(ValueError):
        Ray(0, [1.0], 1.0)
    with pytest.raises(ValueError):
        Ray(0, [1.0], -1.2)


def test_zero_ratio_ray_becomes_point_mass():
    v = LatticeVector(1, right=(Ray(5, [3.0], 0.0),))
    assert not v.right
    assert v.value_at(5)[0] == pytest.approx(3.0)


def test_geometric_norm_closed_form():
    # sum of 4^{-k} over k >= 0 is 16/15 for the squared norm with ratio 1/2
    v = LatticeVector(1, right=(Ray(0, [1.0], 0.5),))
    assert v.norm2() == pytest.approx(1.0 / (1.0 - 0.25))


def test_inner_products_match_window_oracle(rng):
    for _ in range(40):
        v = random_lattice_vector(rng)
        w = random_lattice_vector(rng)
        assert v.inner(w) == pytest.approx(brute_inner(v, w), abs=1e-10)


def test_linear_operations_match_oracle(rng):
    v = random_lattice_vector(rng)
    w = random_lattice_vector(rng)
    c = 0.7 - 1.3j
    combo = v + c * w
    dense = materialize(v, 64) + c * materialize(w, 64)
    assert np.allclose(materialize(combo, 64), dense, atol=1e-12)
    assert np.allclose(materialize(v - w, 64),
                       materialize(v, 64) - materialize(w, 64), atol=1e-12)


def test_shift_relabels_exactly(rng):
    v = random_lattice_vector(rng)
    shifted = v.shifted(1)
    dense = materialize(v, 65)
    for j in range(-60, 60):
        assert np.allclose(shifted.value_at(j), dense[j - 1 + 65], atol=1e-12)


def test_simplify_preserves_vector(rng):
    for _ in range(20):
        v = random_lattice_vector(rng)
        w = v + (-1.0) * v.shifted(1).shifted(-1)  # formal near-duplicate mix
        s = w.simplify()
        assert np.allclose(materialize(s, 40), materialize(w, 40), atol=1e-12)


def test_simplify_collapses_cancelling_tails():
    # identical tails with opposite signs: the formal sum is the zero vector
    ray = Ray(-2, [1.0, -0.5], 0.6 + 0.2j)
    v = LatticeVector(2, left=(ray,)) - LatticeVector(2, left=(ray,))
    assert v.norm() < 1e-15


def test_map_blockwise_splits_rays():
    mm = np.diag([2.0, 2.0])
    mp = np.diag([3.0, 3.0])
    v = LatticeVector(2, left=(Ray(2, [1.0, 0.0], 0.5),),
                      right=(Ray(-1, [0.0, 1.0], 0.5),))
    mapped = v.map_blockwise(mm, mp)
    dense = materialize(v, 32)
    for j in range(-30, 30):
        factor = 2.0 if j <= 0 else 3.0
        assert np.allclose(mapped.value_at(j), factor * dense[j + 32], atol=1e-12)


def test_fiber_dimension_mismatch_rejected():
    v = LatticeVector.point(0, [1.0])
    w = LatticeVector.point(0, [1.0, 2.0])
    with pytest.raises(ValueError):
        v + w
