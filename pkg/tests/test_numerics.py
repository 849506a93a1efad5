import numpy as np
import pytest

from shipwave.errors import DomainError, SingularMatrixError
from shipwave.numerics import dft, idft, lu_factor, lu_solve


def test_identity(kernel):
    x = lu_solve(np.eye(2), np.array([1 + 1j, 2]), kernel=kernel)
    assert np.allclose(x, [1 + 1j, 2], atol=0)


def test_diagonal(kernel):
    x = lu_solve(np.array([[2, 0], [0, 1j]]), np.array([2, 1j]), kernel=kernel)
    assert np.allclose(x, [1, 1], atol=1e-16)


def test_hand_elimination(kernel):
    x = lu_solve(np.array([[1.0, 1.0], [1.0, -1.0]]), np.array([3.0, -1.0]), kernel=kernel)
    assert np.allclose(x, [1, 2], atol=1e-15)


def test_pivoting_needed(kernel):
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(lu_solve(a, np.array([5.0, 7.0]), kernel=kernel), [7, 5])


@pytest.mark.parametrize("seed", range(5))
def test_random_residual(kernel, seed):
    rng = np.random.default_rng(seed)
    n = 50
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 10 * np.eye(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = lu_solve(a, b, kernel=kernel)
    assert np.linalg.norm(a @ x - b, np.inf) <= 1e-12 * np.linalg.norm(b, np.inf)
    bound = 1e3 * np.finfo(float).eps * np.linalg.norm(a, np.inf) * np.linalg.norm(x, np.inf)
    assert np.linalg.norm(a @ x - b, np.inf) <= bound


def test_block_rhs(kernel):
    rng = np.random.default_rng(9)
    a = rng.standard_normal((6, 6)) + 6 * np.eye(6)
    b = rng.standard_normal((6, 3))
    assert np.allclose(a @ lu_solve(a, b, kernel=kernel), b, atol=1e-13)


def test_kernels_bitwise_close():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
    b = rng.standard_normal(30) + 0j
    assert np.allclose(lu_solve(a, b, kernel="loops"), lu_solve(a, b, kernel="numpy"), rtol=1e-13, atol=0)


def test_singular(kernel):
    with pytest.raises(SingularMatrixError):
        lu_factor(np.array([[1.0, 2.0], [2.0, 4.0]]), kernel=kernel)


def test_shape_errors():
    with pytest.raises(DomainError):
        lu_solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(DomainError):
        lu_solve(np.eye(2), np.ones(3))
    with pytest.raises(DomainError):
        lu_solve(np.eye(2), np.array([1.0, np.nan]))


def test_dft_small_cases(kernel):
    assert np.allclose(dft([1, 1], kernel=kernel), [2, 0])
    assert np.allclose(dft([1, 0, 0, 0], kernel=kernel), [1, 1, 1, 1])
    assert np.allclose(dft([0, 1, 0, 0], kernel=kernel), [1, -1j, -1, 1j], atol=1e-16)


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32, 64, 3, 6, 12])
def test_dft_matches_direct_sum(kernel, n):
    rng = np.random.default_rng(n)
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    k = np.arange(n)
    ref = np.exp(-2j * np.pi * np.outer(k, k) / n) @ u
    assert np.max(np.abs(dft(u, kernel=kernel) - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


@pytest.mark.parametrize("k", [4, 10, 16])
def test_round_trip(kernel, k):
    rng = np.random.default_rng(k)
    u = rng.standard_normal(2**k) + 1j * rng.standard_normal(2**k)
    assert np.max(np.abs(idft(dft(u, kernel=kernel), kernel=kernel) - u)) <= 1e-13


def test_dft_matches_numpy_fft():
    u = np.random.default_rng(0).standard_normal(1024)
    assert np.allclose(dft(u), np.fft.fft(u), rtol=0, atol=1e-11)


def test_dft_rejects_empty_and_nan():
    with pytest.raises(DomainError):
        dft([])
    with pytest.raises(DomainError):
        dft([1.0, np.inf])
