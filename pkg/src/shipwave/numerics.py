"""Dense complex LU solve and the radix-2 discrete Fourier transform.

Both come in two flavours: explicit loops (compiled by numba when enabled) and
vectorised numpy.  The public functions dispatch on
:data:`shipwave._accel.NUMBA_ENABLED`.
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, njit
from .errors import DomainError, SingularMatrixError

__all__ = ["lu_factor", "lu_solve", "dft", "idft"]

_EPS = np.finfo(np.float64).eps


# --------------------------------------------------------------------------
# LU factorisation with partial pivoting
# --------------------------------------------------------------------------


@njit
def _lu_factor_loops(a, tol):
    """In-place LU of ``a``. Returns (piv, bad) with bad = failing column or -1."""
    n = a.shape[0]
    piv = np.empty(n, dtype=np.int64)
    for k in range(n):
        p = k
        amax = abs(a[k, k])
        for i in range(k + 1, n):
            v = abs(a[i, k])
            if v > amax:
                amax = v
                p = i
        piv[k] = p
        if amax <= tol:
            return piv, k
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
        inv = 1.0 / a[k, k]
        for i in range(k + 1, n):
            lik = a[i, k] * inv
            a[i, k] = lik
            if lik != 0.0:
                for j in range(k + 1, n):
                    a[i, j] -= lik * a[k, j]
    return piv, -1


def _lu_factor_numpy(a, tol):
    n = a.shape[0]
    piv = np.empty(n, dtype=np.int64)
    for k in range(n):
        col = np.abs(a[k:, k])
        p = k + int(np.argmax(col))
        piv[k] = p
        if col[p - k] <= tol:
            return piv, k
        if p != k:
            a[[k, p], :] = a[[p, k], :]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return piv, -1


@njit
def _lu_substitute_loops(lu, piv, b):
    n = lu.shape[0]
    x = b.copy()
    for k in range(n):
        p = piv[k]
        if p != k:
            tmp = x[k]
            x[k] = x[p]
            x[p] = tmp
    for i in range(n):
        acc = x[i]
        for j in range(i):
            acc -= lu[i, j] * x[j]
        x[i] = acc
    for i in range(n - 1, -1, -1):
        acc = x[i]
        for j in range(i + 1, n):
            acc -= lu[i, j] * x[j]
        x[i] = acc / lu[i, i]
    return x


def _lu_substitute_numpy(lu, piv, b):
    n = lu.shape[0]
    x = b.copy()
    for k in range(n):
        p = piv[k]
        if p != k:
            x[k], x[p] = x[p], x[k]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1 :] @ x[i + 1 :]) / lu[i, i]
    return x


if NUMBA_ENABLED:
    _factor, _substitute = _lu_factor_loops, _lu_substitute_loops
else:
    _factor, _substitute = _lu_factor_numpy, _lu_substitute_numpy


def lu_factor(a, *, kernel=None):
    """LU factorisation with partial pivoting.

    Parameters
    ----------
    a : (n, n) array_like
        Square matrix; it is copied to complex128.
    kernel : {"loops", "numpy"}, optional
        Force one implementation (benchmarks and tests).

    Returns
    -------
    lu : ndarray
        Unit-lower and upper factors packed in one array.
    piv : ndarray of int64
        Row interchanges, LAPACK style (row k swapped with piv[k]).

    Raises
    ------
    SingularMatrixError
        If a pivot magnitude falls below ``n * eps * max|a_ij|``.
    """
    m = np.array(a, dtype=np.complex128, order="C", copy=True)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    n = m.shape[0]
    tol = n * _EPS * (np.max(np.abs(m)) if n else 0.0)
    factor = {"loops": _lu_factor_loops, "numpy": _lu_factor_numpy, None: _factor}[kernel]
    piv, bad = factor(m, tol)
    if bad >= 0:
        raise SingularMatrixError(f"matrix is singular to working precision (column {bad})")
    return m, piv


def lu_solve(a, b, *, kernel=None):
    """Solve ``a @ x = b`` by LU with partial pivoting.

    ``b`` may be a vector or an (n, k) block of right-hand sides.
    """
    rhs = np.asarray(b, dtype=np.complex128)
    a = np.asarray(a)
    if a.ndim != 2 or rhs.shape[0] != a.shape[0]:
        raise DomainError(f"dimension mismatch: a {a.shape}, b {rhs.shape}")
    if not np.all(np.isfinite(rhs)):
        raise DomainError("right-hand side must be finite")
    lu, piv = lu_factor(a, kernel=kernel)
    subst = {"loops": _lu_substitute_loops, "numpy": _lu_substitute_numpy, None: _substitute}[kernel]
    if rhs.ndim == 1:
        return subst(lu, piv, np.ascontiguousarray(rhs))
    cols = [subst(lu, piv, np.ascontiguousarray(rhs[:, j])) for j in range(rhs.shape[1])]
    return np.stack(cols, axis=1)


# --------------------------------------------------------------------------
# Discrete Fourier transform, U_k = sum_n u_n exp(-2 pi i k n / N)
# --------------------------------------------------------------------------


def _bit_reverse_permutation(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@njit
def _fft_loops(x, twiddle):
    """In-place iterative radix-2 butterflies on bit-reversed ``x``."""
    n = x.shape[0]
    size = 2
    while size <= n:
        half = size // 2
        stride = n // size
        for start in range(0, n, size):
            for j in range(half):
                w = twiddle[j * stride]
                a = x[start + j]
                b = x[start + j + half] * w
                x[start + j] = a + b
                x[start + j + half] = a - b
        size *= 2
    return x


def _fft_numpy(x, twiddle):
    n = x.shape[0]
    size = 2
    while size <= n:
        half = size // 2
        blocks = x.reshape(n // size, size)
        a = blocks[:, :half].copy()
        b = blocks[:, half:] * twiddle[:: n // size][:half]
        blocks[:, :half] = a + b
        blocks[:, half:] = a - b
        size *= 2
    return x


def _twiddles(n):
    # direct evaluation per index keeps the error at one rounding
    return np.exp(-2j * np.pi * np.arange(n // 2) / n)


def _direct_dft(u):
    n = u.shape[0]
    k = np.arange(n)
    phase = np.exp(-2j * np.pi * ((np.outer(k, k)) % n) / n)
    return phase @ u


def dft(u, *, kernel=None):
    """Unnormalised forward DFT with the ``exp(-2 pi i k n / N)`` convention.

    Power-of-two lengths use an iterative radix-2 transform; other lengths fall
    back to direct O(N**2) summation.
    """
    x = np.array(u, dtype=np.complex128, copy=True).ravel()
    n = x.shape[0]
    if n == 0:
        raise DomainError("dft needs at least one sample")
    if not np.all(np.isfinite(x)):
        raise DomainError("dft input must be finite")
    if n & (n - 1):
        return _direct_dft(x)
    if n == 1:
        return x
    x = np.ascontiguousarray(x[_bit_reverse_permutation(n)])
    impl = {"loops": _fft_loops, "numpy": _fft_numpy, None: _fft_loops if NUMBA_ENABLED else _fft_numpy}[kernel]
    return impl(x, _twiddles(n))


def idft(u, *, kernel=None):
    """Inverse of :func:`dft` (conjugate transform divided by N)."""
    x = np.asarray(u, dtype=np.complex128).ravel()
    return np.conj(dft(np.conj(x), kernel=kernel)) / x.shape[0]
