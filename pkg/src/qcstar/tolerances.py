"""Numerical tolerances used across the package.

All values are calibrated for dense double-precision eigensolvers at
dimensions d <= 8. Equality of matrices is tested in Frobenius norm scaled
by the matrix dimension; rank decisions use singular values relative to
the largest one.
"""

import numpy as np

#: Frobenius-norm equality tolerance, scaled by matrix dimension.
TAU_NUM = 1e-9

#: Hermiticity tolerance for operator entries.
TAU_HERM = 1e-10

#: Hilbert-Schmidt orthonormality tolerance for operator bases.
TAU_ORTH = 1e-10

#: Positive-semidefiniteness slack on eigenvalues.
TAU_PSD = 1e-9

#: Relative singular-value / eigenvalue threshold for rank decisions.
TAU_RANK = 1e-9


def frob_close(a: np.ndarray, b: np.ndarray, tol: float = TAU_NUM) -> bool:
    """True when ||a - b||_F <= tol * n for n x n inputs."""
    a = np.asarray(a)
    return bool(np.linalg.norm(a - b) <= tol * max(a.shape[0], 1))
