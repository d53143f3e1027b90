"""Shared dense linear-algebra helpers.

Vectorization is row-major throughout the package: ``vec(A)`` stacks the
rows of ``A``, i.e. ``vec(A)[i*d + j] = A[i, j]``. Under this convention

    vec(A @ X @ B.T) == kron(A, B) @ vec(X)

and the vectorized action of a Kraus term is ``kron(K, K.conj())``.
"""

import numpy as np


def vec(a: np.ndarray) -> np.ndarray:
    """Row-major vectorization of a square matrix."""
    return np.asarray(a).reshape(-1)


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape(d, d)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def swap_operator(d: int) -> np.ndarray:
    """The unitary exchanging the two factors of C^d (x) C^d."""
    E = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            E[a * d + b, b * d + a] = 1.0
    return E


def reshuffle(m: np.ndarray) -> np.ndarray:
    """Swap the middle two tensor legs of a d^2 x d^2 matrix.

    This involution maps the process matrix of a linear map to its
    transfer (superoperator) matrix and back:
    ``out[(i1,j1), (i2,j2)] = m[(i1,i2), (j1,j2)]``.
    """
    m = np.asarray(m)
    d = int(round(np.sqrt(m.shape[0])))
    return m.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def partial_trace(m: np.ndarray, d: int, keep: int) -> np.ndarray:
    """Partial trace of a d^2 x d^2 matrix on C^d (x) C^d.

    Parameters
    ----------
    m : ndarray
        Bipartite matrix.
    d : int
        Single-subsystem dimension.
    keep : int
        Which subsystem (1 or 2) survives the trace.
    """
    t = np.asarray(m).reshape(d, d, d, d)
    if keep == 1:
        return np.einsum("ikjk->ij", t)
    if keep == 2:
        return np.einsum("kikj->ij", t)
    raise ValueError("keep must be 1 or 2")


def psd_sqrt(p: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix."""
    w, u = np.linalg.eigh(np.asarray(p))
    return u @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ u.conj().T


def hermitize(a: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian part, (A + A^dag)/2."""
    a = np.asarray(a)
    return (a + a.conj().T) / 2
