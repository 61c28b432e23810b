import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _support import bisection_eigenvalues, example_problem, naive_frame_operator, random_hermitian
from multidesign.errors import DimensionMismatch, NonHermitianInput
from multidesign.linalg import (
    as_family,
    as_hermitian,
    commutator_norm,
    eig_hermitian,
    eigvalsh_desc,
    frame_operator,
    jfod_squared,
)
from multidesign.synthesis import synthesize_optimal_design
from multidesign.spectrum import solve

seeds = st.integers(0, 2**32 - 1)


def test_frame_operator_orthonormal_basis():
    assert np.allclose(frame_operator(np.eye(2)), np.eye(2), atol=0)


def test_frame_operator_rank_one_sum():
    assert np.array_equal(frame_operator([[1, 0], [1, 0]]), np.array([[2, 0], [0, 0]], dtype=complex))


def test_frame_operator_matches_naive_loop():
    rng = np.random.default_rng(1)
    f = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    assert np.allclose(frame_operator(f), naive_frame_operator(f), atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 6), st.integers(1, 8))
def test_frame_operator_psd_and_trace(seed, d, n):
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    s = frame_operator(f)
    assert np.allclose(s, naive_frame_operator(f), atol=1e-12 * (1 + np.abs(s).max()))
    assert eig_hermitian(s).values.min() >= -1e-10 * (1 + np.abs(s).max())
    assert np.isclose(np.trace(s).real, np.sum(np.abs(f) ** 2), rtol=1e-12, atol=0)


def test_eig_diagonal_permutation():
    e = eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    assert np.array_equal(e.values, [3.0, 2.0, 1.0])
    assert np.allclose(e.vectors, np.eye(3)[:, [0, 2, 1]], atol=0)


def test_eig_swap_matrix():
    e = eig_hermitian([[0, 1], [1, 0]])
    assert np.allclose(e.values, [1, -1], atol=1e-15)
    assert np.allclose(e.reconstruct(), [[0, 1], [1, 0]], atol=1e-15)


def test_eig_matches_determinant_bisection():
    rng = np.random.default_rng(5)
    for _ in range(5):
        a = random_hermitian(rng, 5)
        assert np.allclose(eig_hermitian(a).values, bisection_eigenvalues(a), atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 12))
def test_eig_invariants(seed, d):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, d)
    e = eig_hermitian(a)
    assert np.all(np.diff(e.values) <= 0)
    assert np.linalg.norm(e.reconstruct() - a) <= 1e-10 * max(1.0, np.linalg.norm(a))
    assert np.max(np.abs(e.vectors.conj().T @ e.vectors - np.eye(d))) <= 1e-10
    assert np.allclose(e.values, np.linalg.eigvalsh(a)[::-1], atol=1e-10 * (1 + np.abs(a).max()))
    # phase convention: largest-magnitude entry of each column is real positive
    for k in range(d):
        col = e.vectors[:, k]
        top = col[np.argmax(np.abs(col))]
        assert abs(top.imag) <= 1e-12 and top.real > 0


@pytest.mark.parametrize("d", [20, 50])
def test_eig_round_trip_large(d):
    a = random_hermitian(np.random.default_rng(d), d)
    e = eig_hermitian(a)
    assert np.linalg.norm(e.reconstruct() - a) <= 1e-10 * np.linalg.norm(a)


def test_eig_repeated_values_are_deterministic():
    a = np.diag([1.0, 2.0, 2.0, 1.0])
    e1, e2 = eig_hermitian(a), eig_hermitian(a.copy())
    assert np.array_equal(e1.values, [2, 2, 1, 1])
    assert np.array_equal(e1.vectors, e2.vectors)
    assert np.allclose(e1.reconstruct(), a, atol=1e-15)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        eig_hermitian([[1, 2], [0, 1]])
    with pytest.raises(NonHermitianInput):
        as_hermitian([[1, 1j], [1j, 1]])


def test_as_hermitian_accepts_tiny_asymmetry_and_symmetrizes():
    a = np.array([[1, 1 + 1e-13], [1, 2]])
    h = as_hermitian(a)
    assert np.array_equal(h, h.conj().T)


def test_as_hermitian_shape_checks():
    with pytest.raises(DimensionMismatch):
        as_hermitian(np.ones((2, 3)))
    with pytest.raises(DimensionMismatch):
        as_family(np.ones((2, 3)), dim=2)


def test_eigvalsh_desc_sorted():
    assert np.allclose(eigvalsh_desc(np.diag([1.0, 5.0, 3.0])), [5, 3, 1])


def test_jfod_basic():
    a = [np.diag([1.0, 0.0])]
    assert jfod_squared(a, a) == 0.0
    assert jfod_squared(a, [np.zeros((2, 2))]) == pytest.approx(1.0)


def test_jfod_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        jfod_squared([np.eye(2)], [np.eye(2), np.eye(2)])
    with pytest.raises(DimensionMismatch):
        jfod_squared([np.eye(2)], [np.eye(3)])


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 5))
def test_jfod_symmetric_nonnegative(seed, m, d):
    rng = np.random.default_rng(seed)
    a = [random_hermitian(rng, d) for _ in range(m)]
    b = [random_hermitian(rng, d) for _ in range(m)]
    v = jfod_squared(a, b)
    assert v >= 0
    assert v == pytest.approx(jfod_squared(b, a), rel=1e-14)
    assert v == pytest.approx(sum(np.sum(np.abs(x - y) ** 2) for x, y in zip(a, b)), rel=1e-12)


def test_jfod_example_optimum():
    p = example_problem()
    _, spectra = solve(p)
    design = synthesize_optimal_design(p, spectra)
    assert jfod_squared(p.initial_operators(), design.frame_operators()) == pytest.approx(265.685, abs=1e-2)


def test_commutator_norm_of_commuting_pair():
    a = np.diag([1.0, 2.0])
    assert commutator_norm(a, np.diag([5.0, -1.0])) == 0.0
    assert commutator_norm(a, [[0, 1], [1, 0]]) > 0
