"""Small dense complex linear algebra on numpy arrays.

Matrices are plain ``complex128`` ndarrays; every function returns a fresh
array and never mutates its input. Functions marked as stack-aware accept
either a single ``(d, d)`` matrix or a stack ``(..., d, d)``.
"""
from __future__ import annotations

import numpy as np

from . import backend
from .errors import DimMismatch, NoConvergence, NotHermitian, NotPSD

SIGMA_0 = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)
for _m in PAULI:
    _m.setflags(write=False)

HERMITIAN_TOL = 1e-10
PSD_CLAMP = 1e-8


def as_matrix(m) -> np.ndarray:
    return np.asarray(m, dtype=np.complex128)


def dagger(m) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(as_matrix(m), -1, -2))


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry (i*rb + k, j*cb + l) is a[i, j] * b[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def _check_square(m: np.ndarray) -> None:
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimMismatch(f"expected square matrix, got shape {m.shape}")


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        return False
    return bool(np.all(np.abs(m - dagger(m)) <= tol))


def is_unitary(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.all(np.abs(m @ dagger(m) - np.eye(m.shape[0])) <= tol))


def is_psd(m, tol: float = HERMITIAN_TOL) -> bool:
    if not is_hermitian(m, tol):
        return False
    return bool(np.all(hermitian_eigenvalues(m) >= -tol))


def hermitian_eigh(h, tol: float = HERMITIAN_TOL):
    """Eigenvalues (descending) and eigenvector columns of Hermitian matrices.

    Stack-aware. Raises ``NotHermitian`` when ``h`` deviates from its adjoint
    by more than ``tol`` entrywise and ``NoConvergence`` if the Jacobi sweeps
    run out.
    """
    h = as_matrix(h)
    _check_square(h)
    if not np.all(np.abs(h - dagger(h)) <= tol):
        raise NotHermitian(f"matrix is not Hermitian within {tol:g}")
    d = h.shape[-1]
    lead = h.shape[:-2]
    flat = np.ascontiguousarray(h.reshape(-1, d, d))
    w, v, failed = backend.eigh(flat)
    if failed >= 0:
        raise NoConvergence(f"Jacobi sweeps did not converge for matrix {failed}")
    return w.reshape(lead + (d,)), v.reshape(lead + (d, d))


def hermitian_eigenvalues(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending (stack-aware)."""
    return hermitian_eigh(h, tol)[0]


def psd_sqrt(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues in [-1e-8, 0) are clamped to zero."""
    w, v = hermitian_eigh(m, tol)
    if np.any(w < -PSD_CLAMP):
        raise NotPSD(f"eigenvalue {w.min():.3e} below -{PSD_CLAMP:g}")
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root[..., None, :]) @ dagger(v)
    return 0.5 * (s + dagger(s))


def singular_values(x) -> np.ndarray:
    """Singular values, descending, from the Hermitian embedding [[0, X], [X^dag, 0]].

    The embedding has eigenvalues +-s_i, so small singular values keep
    absolute accuracy instead of passing through a square root. Stack-aware.
    """
    x = as_matrix(x)
    _check_square(x)
    d = x.shape[-1]
    emb = np.zeros(x.shape[:-2] + (2 * d, 2 * d), dtype=np.complex128)
    emb[..., :d, d:] = x
    emb[..., d:, :d] = dagger(x)
    w = hermitian_eigenvalues(emb)
    return np.clip(w[..., :d], 0.0, None)


def trace_norm(x) -> float:
    """Tr sqrt(X X^dag); sum of |eigenvalues| when X is Hermitian."""
    x = as_matrix(x)
    _check_square(x)
    if is_hermitian(x, 1e-14):
        return float(np.abs(hermitian_eigenvalues(x, 1e-14)).sum())
    return float(singular_values(x).sum())
